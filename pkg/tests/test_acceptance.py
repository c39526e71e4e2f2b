"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  Every comparison is exact (integers or rationals); the only
tolerances are the stated wall-clock budgets.
"""

import random
import time
from fractions import Fraction

import pytest

from banachforge import (
    Alphabet,
    EscapingSequence,
    GroupSpec,
    SearchExhaustedError,
    WPOracle,
    Word,
    WordSet,
    ball_size,
    build_escaping_sequence,
    diagonal_set,
    enumerate_ball,
    enumerate_sphere,
    ep_on_square,
    escaping_from_increasing,
    fiber_geodesic,
    free_reduce,
    is_ub_generic_up_to,
    kernel_predicate,
    kernel_profile,
    kernel_sphere_count,
    pair_ball_upper_constant,
    parse_word,
    plain_density_profile,
    power_ball_union,
    product_length,
    sphere_size,
    subsequence_strictly_increasing,
    total_wp_solver,
    transfer_profile,
    ubgeneric_solvable_set,
    wp_from_ep,
    word_difference,
    ep_from_wp,
)

A2 = Alphabet(2)
E = Word()


def report(number, description, elapsed):
    print(f"PASS  criterion {number:>2}: {description} [{elapsed:.2f}s]")


def built_in_oracles():
    return [
        WPOracle(GroupSpec.from_dict({"kind": "free", "rank": 2})),
        WPOracle(GroupSpec.from_dict({"kind": "free_abelian", "rank": 2})),
        WPOracle(GroupSpec.from_dict({"kind": "finite_cyclic", "order": 3, "images": [1, 1]})),
        WPOracle(
            GroupSpec.from_dict(
                {"kind": "permutation", "points": 4, "generators": [[1, 0, 2, 3], [0, 2, 1, 3]]}
            )
        ),
    ]


def test_criterion_01_counting_exactness():
    start = time.time()
    for rank in (1, 2, 3):
        alphabet = Alphabet(rank)
        running = 0
        for n in range(9):
            count = sum(1 for _ in enumerate_sphere(alphabet, n))
            assert count == sphere_size(alphabet, n), (rank, n)
            running += count
            assert running == ball_size(alphabet, n), (rank, n)
    elapsed = time.time() - start
    assert elapsed < 10.0
    report(1, "sphere/ball counts match exhaustive enumeration (d<=3, n<=8)", elapsed)


def test_criterion_02_geodesic_fiber_equivalence():
    start = time.time()
    ball8 = list(enumerate_ball(A2, 8))
    for s in enumerate_ball(A2, 4):
        # exhaustive oracle: the defining quantity |w| + |w s| for every w in B_8
        counts = [0] * 9
        for w in ball8:
            q = len(w) + product_length(w, s)
            if q <= 8:
                counts[q] += 1
        running = 0
        for n in range(9):
            running += counts[n]
            geo = fiber_geodesic(A2, s, n).members
            assert len(geo) == running, (str(s), n)
            assert all(len(w) + product_length(w, s) <= n for w in geo), (str(s), n)
    elapsed = time.time() - start
    assert elapsed < 60.0
    report(2, "geodesic fiber == brute force for all s in B_4, n <= 8", elapsed)


def test_criterion_03_sphere_fiber_size():
    start = time.time()
    for n in range(7):
        for s in enumerate_sphere(A2, n):
            assert len(fiber_geodesic(A2, s, n).members) == n + 1, (str(s), n)
    elapsed = time.time() - start
    report(3, "|P(s,n)| = n+1 for every s in S_n, n <= 6", elapsed)


def test_criterion_04_preimage_counts_match_pairs():
    from banachforge import enumerate_pair_ball, pair_difference, preimage_ball_count

    start = time.time()
    rng = random.Random(20260810)
    b3 = list(enumerate_ball(A2, 3))
    # precompute differences of every pair in the radius-6 pair ball once
    diffs = [(p.l1_length, pair_difference(p)) for p in enumerate_pair_ball(A2, 6, "l1")]
    for _ in range(50):
        members = frozenset(rng.sample(b3, rng.randrange(1, len(b3) + 1)))
        s = WordSet(members, 3)
        direct = [0] * 7
        for total, d in diffs:
            if d in members:
                direct[total] += 1
        running = 0
        for n in range(7):
            running += direct[n]
            assert preimage_ball_count(A2, s, n) == running
    elapsed = time.time() - start
    report(4, "sum-formula preimage counts == direct pair enumeration (50 random sets)", elapsed)


def test_criterion_05_kernel_profile_z2():
    start = time.time()
    oracle = WPOracle(GroupSpec.from_dict({"kind": "free_abelian", "rank": 2}))
    profile = kernel_profile(oracle, 10, coset_window=3)
    for n in range(4, 10):
        assert profile.max_ball_ratios[n] > profile.max_ball_ratios[n + 1], n

    rng = random.Random(17)
    kernel_words = [
        parse_word("abAB"),
        parse_word("aabABA", reduce=True),
        parse_word("baBA"),
    ]
    pairs_checked = 0
    while pairs_checked < 20:
        raw = [
            parse_word("a"), parse_word("A"), parse_word("b"), parse_word("B"),
        ]
        w = free_reduce(
            [l for _ in range(rng.randrange(5)) for l in rng.choice(raw).letters]
        )
        w2 = w * rng.choice(kernel_words)
        assert oracle.decide(word_difference(w, w2))
        for n in range(7):
            assert kernel_sphere_count(oracle, w, n) == kernel_sphere_count(oracle, w2, n)
        pairs_checked += 1
    elapsed = time.time() - start
    report(5, "Z^2 max-coset ball ratio strictly decreasing on 4..10; rep-independent counts", elapsed)


def test_criterion_06_sparse_generic_union():
    start = time.time()
    base = parse_word("a")
    tf = power_ball_union(A2, base, lambda n: 4**n)
    genericity = is_ub_generic_up_to(A2, tf, 4)
    assert genericity.ok
    for n in range(1, 5):
        witness = genericity.witnesses[n]
        assert witness == base ** (4**n)
        assert all(tf.contains(witness * u) for u in enumerate_ball(A2, n))
    profile = plain_density_profile(A2, tf, 8)
    assert profile.ratios[8] < Fraction(1, 20)
    elapsed = time.time() - start
    report(6, "power-ball union: translate-generic to depth 4 yet plain ratio < 1/20 at n=8", elapsed)


def test_criterion_07_round_trip_agreement():
    start = time.time()
    for oracle in built_in_oracles():
        wp = wp_from_ep(oracle.alphabet, ep_from_wp(total_wp_solver(oracle)))
        for w in enumerate_ball(oracle.alphabet, 4):
            verdict = wp.run(w, 64)
            assert verdict is not None, (oracle.spec.kind, str(w))
            assert verdict == oracle.decide(w), (oracle.spec.kind, str(w))
    elapsed = time.time() - start
    report(7, "wp_from_ep(ep_from_wp(oracle)) agrees with the oracle on all of B_4", elapsed)


def test_criterion_08_square_mechanism():
    start = time.time()
    oracle = WPOracle(GroupSpec.from_dict({"kind": "free_abelian", "rank": 2}))
    seq = build_escaping_sequence(oracle, "power", 4)
    s, _ = ubgeneric_solvable_set(A2, seq, 4, oracle)
    ep = ep_on_square(oracle, s.contains)
    wp = wp_from_ep(A2, ep)
    for w in enumerate_ball(A2, 3):
        verdict = wp.run(w, 64)
        assert verdict is not None, str(w)
        assert verdict == oracle.decide(w), str(w)
    elapsed = time.time() - start
    assert elapsed < 60.0
    report(8, "pair solver on S x S (escaping union, depth 4) decides all of B_3", elapsed)


def test_criterion_09_length_certificate_transforms():
    start = time.time()
    oracle = WPOracle(GroupSpec.from_dict({"kind": "free_abelian", "rank": 2}))
    rng = random.Random(90210)
    for _ in range(10):
        words, lengths = [], []
        for n in range(1, 13):
            target = n + 1 + rng.randrange(2)
            pieces = [parse_word("a")] * target + [parse_word("b"), parse_word("B")] * rng.randrange(3)
            rng.shuffle(pieces)
            w = E
            for piece in pieces:
                w = w * piece
            glen = oracle.gamma_length(w)
            assert glen == target > n
            words.append(w)
            lengths.append(glen)
        seq = EscapingSequence(tuple(words), tuple(lengths))
        sub = subsequence_strictly_increasing(seq)
        assert sub.strictly_increasing()
        assert all(b > a for a, b in zip(sub.lengths, sub.lengths[1:]))
        if len(sub) >= 3:
            back = escaping_from_increasing(sub)
            assert back.exceeds_index()
    elapsed = time.time() - start
    report(9, "strictly-increasing extraction and its converse preserve certificates", elapsed)


def test_criterion_10_transfer_lower_bound():
    start = time.time()
    oracle = WPOracle(GroupSpec.from_dict({"kind": "free_abelian", "rank": 2}))
    inv_c2 = 1 / pair_ball_upper_constant(A2)

    kernel = kernel_predicate(oracle)
    kernel_window = WordSet.from_words(
        (w for w in enumerate_ball(A2, 6) if kernel.contains(w)), 6, "kernel-window"
    )
    rng = random.Random(1010)
    b3 = list(enumerate_ball(A2, 3))
    subjects = [kernel_window] + [
        WordSet.from_words(rng.sample(b3, rng.randrange(1, len(b3) + 1)), 3) for _ in range(20)
    ]
    for s in subjects:
        profile = transfer_profile(A2, s, 6)
        for row in profile.rows:
            expected = inv_c2 * Fraction(row.sphere_count, A2.alpha**row.n)
            assert row.lower_bound == expected
            assert row.preimage_ratio >= row.lower_bound
    elapsed = time.time() - start
    report(10, "(1/C2)|S∩S_n|/alpha^n bounds the pair-preimage ratio (kernel + 20 random sets)", elapsed)


def test_criterion_11_negative_controls():
    start = time.time()
    cyclic = WPOracle(GroupSpec.from_dict({"kind": "finite_cyclic", "order": 3, "images": [1, 1]}))
    assert cyclic.diameter == 1
    with pytest.raises(SearchExhaustedError):
        build_escaping_sequence(cyclic, "search", cyclic.diameter)
    with pytest.raises(SearchExhaustedError):
        build_escaping_sequence(cyclic, "power", cyclic.diameter + 1)

    genericity = is_ub_generic_up_to(A2, diagonal_set(A2), 1, search_radius=3)
    assert not genericity.ok
    assert genericity.failed_at == 1
    elapsed = time.time() - start
    report(11, "finite target rejects escaping search; one-per-sphere set fails at n=1", elapsed)
