import random
from fractions import Fraction

import pytest

from banachforge import (
    Letter,
    RadiusExceededError,
    SetPredicate,
    ValidationError,
    Word,
    WordSet,
    ball_size,
    diagonal_set,
    disjoint_translates,
    enumerate_ball,
    enumerate_sphere,
    full_set,
    is_ub_generic_up_to,
    kernel_predicate,
    lower_banach_profile,
    parse_word,
    plain_density_profile,
    power_ball_union,
    translate_count,
    upper_banach_profile,
)

E = Word()


def ball_set(alphabet, n, label=""):
    return WordSet.from_words(enumerate_ball(alphabet, n), n, label)


class TestWordSet:
    def test_radius_validation(self):
        with pytest.raises(ValidationError):
            WordSet(frozenset({parse_word("aaa")}), 2)

    def test_from_words_derives_radius(self):
        s = WordSet.from_words([parse_word("ab"), E])
        assert s.support_radius == 2
        assert E in s and parse_word("ab") in s

    def test_sorted_iteration(self):
        s = WordSet.from_words([parse_word("b"), E, parse_word("a")])
        assert [str(w) for w in s] == ["1", "a", "b"]


class TestTranslateCount:
    def test_whole_ball(self, a2):
        assert translate_count(a2, ball_set(a2, 2), E, 2) == 17

    def test_far_translate_is_disjoint(self, a2):
        # every aaaa*u with |u| <= 1 has length >= 3 > 2
        assert translate_count(a2, ball_set(a2, 2), parse_word("aaaa"), 1) == 0

    def test_prefix_predicate(self, a2):
        starts_a = SetPredicate(
            lambda w: len(w) > 0 and w.letters[0] == Letter(0, 1), None, "starts-a"
        )
        assert translate_count(a2, starts_a, parse_word("a"), 1) == 4

    def test_validity_radius_enforced(self, a2):
        bounded = SetPredicate(lambda w: True, validity_radius=3)
        assert translate_count(a2, bounded, parse_word("a"), 2) == 17
        with pytest.raises(RadiusExceededError):
            translate_count(a2, bounded, parse_word("aa"), 2)

    def test_oracle_equivalence_on_random_sets(self, a2):
        rng = random.Random(5)
        b3 = list(enumerate_ball(a2, 3))
        for _ in range(20):
            s = WordSet.from_words(rng.sample(b3, 11), 3)
            w = rng.choice(b3)
            n = rng.randrange(3)
            brute = sum(1 for u in enumerate_ball(a2, n) if (w * u) in s.members)
            assert translate_count(a2, s, w, n) == brute


class TestPlainProfile:
    def test_full_set_all_ones(self, a2):
        prof = plain_density_profile(a2, full_set(), 4)
        assert all(r == 1 for r in prof.ratios)

    def test_empty_all_zero(self, a2):
        prof = plain_density_profile(a2, WordSet(frozenset(), 0), 4)
        assert all(r == 0 for r in prof.ratios)

    def test_z2_kernel_profile(self, a2, z2_oracle):
        prof = plain_density_profile(a2, kernel_predicate(z2_oracle), 6)
        # |ker ∩ S_4| = 8 (the sphere count), plus the identity word at n = 0
        assert prof.ratios[4] == Fraction(9, 161)
        assert prof.ratios[3] == Fraction(1, 53)
        counts = [prof.ratios[n] * ball_size(a2, n) for n in range(7)]
        assert counts == [1, 1, 1, 1, 9, 9, 49]

    def test_validity_enforced(self, a2):
        bounded = SetPredicate(lambda w: True, validity_radius=2)
        with pytest.raises(RadiusExceededError):
            plain_density_profile(a2, bounded, 3)

    def test_ratios_in_unit_interval(self, a2):
        rng = random.Random(11)
        members = rng.sample(list(enumerate_ball(a2, 3)), 20)
        prof = plain_density_profile(a2, WordSet.from_words(members, 3), 5)
        assert all(0 <= r <= 1 for r in prof.ratios)


class TestBanachProfiles:
    def test_translated_ball_reaches_one(self, a2):
        center = parse_word("aaaa")
        s = WordSet.from_words((center * u for u in enumerate_ball(a2, 3)), 7, "shifted-ball")
        prof = upper_banach_profile(a2, s, 3)
        assert prof.ratios[3] == 1
        assert prof.witnesses[3] == center
        assert all(prof.certified)

    def test_empty_set_both_zero(self, a2):
        s = WordSet(frozenset(), 0)
        up = upper_banach_profile(a2, s, 3)
        low = lower_banach_profile(a2, s, 3)
        assert all(r == 0 for r in up.ratios)
        assert all(r == 0 for r in low.ratios)
        assert all(up.certified) and all(low.certified)

    def test_lower_profile_far_witness(self, a2):
        s = ball_set(a2, 2)
        low = lower_banach_profile(a2, s, 3)
        assert all(r == 0 for r in low.ratios)
        assert all(translate_count(a2, s, w, n) == 0 for n, w in enumerate(low.witnesses))

    def test_windowed_lower_is_upper_bound(self, a2):
        # within a window around the identity, the ball-set has positive mins
        s = ball_set(a2, 2)
        low = lower_banach_profile(a2, s, 1, search_radius=1)
        assert low.ratios[0] > 0
        assert not low.certified[0]

    def test_predicate_needs_window_or_hints(self, a2):
        bare = SetPredicate(lambda w: True, None, "bare")
        with pytest.raises(ValidationError):
            upper_banach_profile(a2, bare, 2)

    def test_profile_ordering(self, a2):
        rng = random.Random(3)
        b2 = list(enumerate_ball(a2, 2))
        for _ in range(10):
            s = WordSet.from_words(rng.sample(b2, 7), 2)
            plain = plain_density_profile(a2, s, 2)
            up = upper_banach_profile(a2, s, 2)
            low = lower_banach_profile(a2, s, 2)
            for n in range(3):
                assert up.ratios[n] >= plain.ratios[n] >= low.ratios[n]

    def test_monotone_in_the_set(self, a2):
        rng = random.Random(9)
        b2 = list(enumerate_ball(a2, 2))
        small = rng.sample(b2, 6)
        big = small + rng.sample([w for w in b2 if w not in small], 5)
        s_small = WordSet.from_words(small, 2)
        s_big = WordSet.from_words(big, 2)
        for profile in (plain_density_profile, upper_banach_profile):
            ps, pb = profile(a2, s_small, 2), profile(a2, s_big, 2)
            assert all(a <= b for a, b in zip(ps.ratios, pb.ratios))


class TestUBGenericity:
    def test_full_set_with_identity_witness(self, a2):
        report = is_ub_generic_up_to(a2, full_set(), 3)
        assert report.ok
        assert all(w == E for w in report.witnesses)

    def test_iff_upper_ratio_one(self, a2):
        center = parse_word("bb")
        s = WordSet.from_words((center * u for u in enumerate_ball(a2, 2)), 4)
        report = is_ub_generic_up_to(a2, s, 2)
        up = upper_banach_profile(a2, s, 2)
        assert report.ok == all(r == 1 for r in up.ratios) == True
        sparse = WordSet.from_words([E, parse_word("a")], 1)
        report2 = is_ub_generic_up_to(a2, sparse, 1)
        up2 = upper_banach_profile(a2, sparse, 1)
        assert report2.ok == all(r == 1 for r in up2.ratios) == False

    def test_witnesses_verify(self, a2):
        center = parse_word("ba")
        s = WordSet.from_words((center * u for u in enumerate_ball(a2, 2)), 4)
        report = is_ub_generic_up_to(a2, s, 2)
        for n, w in enumerate(report.witnesses):
            assert all((w * u) in s.members for u in enumerate_ball(a2, n))

    def test_difference_cover(self, a2):
        # with witnesses in hand, every word of B_N is a difference of members
        center = parse_word("ab")
        s = WordSet.from_words((center * u for u in enumerate_ball(a2, 2)), 4)
        report = is_ub_generic_up_to(a2, s, 2)
        w_n = report.witnesses[2]
        for w in enumerate_ball(a2, 2):
            s1, s2 = w_n, w_n * w
            assert s1 in s.members and s2 in s.members
            assert s1.inverse() * s2 == w

    def test_diagonal_fails_at_one(self, a2):
        report = is_ub_generic_up_to(a2, diagonal_set(a2), 1, search_radius=3)
        assert not report.ok
        assert report.failed_at == 1

    def test_witness_lengths_reported(self, a2):
        report = is_ub_generic_up_to(a2, full_set(), 2)
        assert report.witness_lengths == (0, 0, 0)


class TestPowerBallUnion:
    def test_membership_examples(self, a2):
        tf = power_ball_union(a2, parse_word("a"), lambda n: 4**n)
        assert tf.contains(parse_word("aaaab"))  # inside a^4 * B_1
        assert not tf.contains(E)  # f(1) >= 2 keeps e out
        assert tf.contains(parse_word("aaa"))
        assert not tf.contains(parse_word("ab"))

    def test_base_validation(self, a2):
        with pytest.raises(ValidationError):
            power_ball_union(a2, E, lambda n: 4**n)
        with pytest.raises(ValidationError):
            power_ball_union(a2, parse_word("abA"), lambda n: 4**n)

    def test_exponent_monotonicity_enforced(self, a2):
        tf = power_ball_union(a2, parse_word("a"), lambda n: 5 - n)
        with pytest.raises(ValidationError):
            tf.contains(parse_word("a" * 9))

    def test_plain_profile_values(self, a2):
        tf = power_ball_union(a2, parse_word("a"), lambda n: 4**n)
        prof = plain_density_profile(a2, tf, 8)
        expected = [
            Fraction(0),
            Fraction(0),
            Fraction(0),
            Fraction(1, 53),
            Fraction(2, 161),
            Fraction(5, 485),
            Fraction(5, 1457),
            Fraction(5, 4373),
            Fraction(5, 13121),
        ]
        assert list(prof.ratios) == expected
        # strictly decreasing from n = 5 on, and sparse at the window edge
        for n in range(5, 8):
            assert prof.ratios[n] > prof.ratios[n + 1]
        assert prof.ratios[8] < Fraction(1, 20)

    def test_ub_generic_with_power_witnesses(self, a2):
        base = parse_word("a")
        tf = power_ball_union(a2, base, lambda n: 4**n)
        report = is_ub_generic_up_to(a2, tf, 4)
        assert report.ok
        for n in range(1, 5):
            assert report.witnesses[n] == base ** (4**n)
        up = upper_banach_profile(a2, tf, 4)
        assert all(r == 1 for r in up.ratios)
        assert all(up.certified)

    def test_depth_truncation(self, a2):
        tf = power_ball_union(a2, parse_word("a"), lambda n: 4**n, depth=1)
        assert tf.contains(parse_word("aaa"))
        assert not tf.contains(parse_word("a" * 15))
        assert tf.translate_candidates(2) == ()


class TestDisjointTranslates:
    def test_examples(self, a2):
        assert len(disjoint_translates(a2, 2, 1)) >= 1  # |S_0| = 1
        assert len(disjoint_translates(a2, 4, 1)) == 12  # |S_2| = 12
        assert len(disjoint_translates(a2, 6, 2)) == 12

    def test_verified_by_enumeration(self, a2):
        # independent check: materialize the translated balls
        for n, k in ((4, 1), (6, 2), (2, 1), (4, 2)):
            translates = disjoint_translates(a2, n, k)
            assert len(translates) >= len(list(enumerate_sphere(a2, n - 2 * k)))
            ball_n = set(enumerate_ball(a2, n))
            realized = []
            for w in translates:
                chunk = {w * u for u in enumerate_ball(a2, k)}
                assert chunk <= ball_n
                realized.append(chunk)
            for i in range(len(realized)):
                for j in range(i + 1, len(realized)):
                    assert not (realized[i] & realized[j])

    def test_preconditions(self, a1, a2):
        with pytest.raises(ValidationError):
            disjoint_translates(a1, 4, 1)
        with pytest.raises(ValidationError):
            disjoint_translates(a2, 3, 2)
