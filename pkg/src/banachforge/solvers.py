"""Budgeted partial algorithms and the reductions between the word problem
(is a single word trivial?) and the equality problem (do two words agree in
the target group?).

A :class:`PartialSolver` maps ``(input, budget)`` to ``True``/``False`` or
``None`` for "undecided"; implementations must be monotone in the budget and
keep their answer.  Partiality is always a value, never nontermination, so
every experiment here terminates by construction.

The two reductions:

* ``ep_from_wp`` answers equality of ``(u, v)`` by deciding triviality of the
  difference ``u^-1 v``; the halting set becomes the preimage of the word
  solver's halting set under the difference map, and the only overhead is
  computing the difference.
* ``wp_from_ep`` decides a word ``w`` by dovetailing the pair solver over the
  pairs ``(v, v*w)`` with ``v`` running through the canonical shortlex
  enumeration: in round r the first r+1 lanes each run with budget r, so
  every lane eventually receives unbounded budget.  The word ``w`` is decided
  as soon as some pair ``(v, v*w)`` lies in the pair solver's halting set,
  i.e. exactly when ``w`` is a difference of such a pair.  Ties break to the
  lowest lane; the schedule is deterministic and transcripts are reproducible.

The module also builds the certificate machinery connecting translate-generic
sets to computable length-escaping sequences: from words w_n certified longer
than n in the target group, the union of the translated balls w_n * B_n
avoids the kernel entirely, contains a translate of every ball up to the
construction depth, and supports a sound one-sided "nontrivial" solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import chain, islice
from typing import Callable, Iterable, Iterator

from .density import DensityProfile, SetPredicate, WordSet
from .enumeration import (
    ball_size,
    enumerate_ball,
    enumerate_pair_ball,
    iter_words,
    pair_ball_size_l1,
    pair_ball_size_max,
)
from .errors import (
    CertificateViolationError,
    SearchExhaustedError,
    ValidationError,
)
from .groups import WPOracle
from .transfer import fiber_bruteforce, pair_difference
from .words import Alphabet, Word, WordPair, cyclic_reduction, distance, rotations

__all__ = [
    "DecisionEvent",
    "DovetailSchedule",
    "EscapingSequence",
    "PartialSolver",
    "build_escaping_sequence",
    "closure_of_pairs",
    "conjugacy_closure",
    "ep_from_wp",
    "ep_on_square",
    "ep_solver_on",
    "escaping_from_enumeration",
    "escaping_from_increasing",
    "halting_density",
    "never_solver",
    "nontrivial_on",
    "subsequence_strictly_increasing",
    "total_ep_solver",
    "total_wp_solver",
    "ubgeneric_solvable_set",
    "wp_from_ep",
    "wp_solver_on",
]


@dataclass(frozen=True)
class PartialSolver:
    """A budgeted partial decision procedure.

    ``step(x, budget)`` answers True/False when it halts within ``budget``
    atomic steps (the solver's own unit) and None otherwise.  Monotonicity —
    once decided, decided with the same answer at every larger budget — is a
    contract on ``step``, property-checked in the test suite rather than
    enforced here.
    """

    step: Callable[[object, int], "bool | None"]
    domain_tag: str = ""

    def run(self, x, budget: int) -> "bool | None":
        if budget < 0:
            raise ValidationError("budget must be >= 0")
        return self.step(x, budget)


def total_wp_solver(oracle: WPOracle) -> PartialSolver:
    """Oracle-backed word solver: decides any word in one step."""
    return PartialSolver(
        step=lambda w, budget: oracle.decide(w) if budget >= 1 else None,
        domain_tag=f"wp-total({oracle.spec})",
    )


def wp_solver_on(oracle: WPOracle, halting: Callable[[Word], bool], tag: str = "") -> PartialSolver:
    """Oracle-backed word solver restricted to a declared halting set."""
    return PartialSolver(
        step=lambda w, budget: oracle.decide(w) if budget >= 1 and halting(w) else None,
        domain_tag=tag or f"wp-on-set({oracle.spec})",
    )


def total_ep_solver(oracle: WPOracle) -> PartialSolver:
    """Oracle-backed pair solver: decides equality of any pair in one step."""
    return PartialSolver(
        step=lambda p, budget: oracle.decide(pair_difference(p)) if budget >= 1 else None,
        domain_tag=f"ep-total({oracle.spec})",
    )


def ep_solver_on(
    oracle: WPOracle, halting: Callable[[WordPair], bool], tag: str = ""
) -> PartialSolver:
    """Oracle-backed pair solver restricted to a declared pair halting set."""
    return PartialSolver(
        step=lambda p, budget: (
            oracle.decide(pair_difference(p)) if budget >= 1 and halting(p) else None
        ),
        domain_tag=tag or f"ep-on-set({oracle.spec})",
    )


def ep_on_square(oracle: WPOracle, member: Callable[[Word], bool], tag: str = "") -> PartialSolver:
    """Pair solver whose halting set is S x S for a word-membership test."""
    return ep_solver_on(
        oracle,
        lambda p: member(p.first) and member(p.second),
        tag or f"ep-on-square({oracle.spec})",
    )


def never_solver(tag: str = "never") -> PartialSolver:
    return PartialSolver(step=lambda x, budget: None, domain_tag=tag)


def nontrivial_on(
    member: Callable[[Word], bool],
    oracle: WPOracle | None = None,
    tag: str = "",
) -> PartialSolver:
    """One-sided word solver answering "nontrivial" exactly on members.

    Soundness rests on the member set avoiding the kernel.  When an oracle is
    supplied, every positive answer is cross-checked and a kernel member
    aborts loudly instead of being mislabeled.
    """

    def step(w: Word, budget: int) -> "bool | None":
        if budget >= 1 and member(w):
            if oracle is not None and oracle.decide(w):
                raise CertificateViolationError(
                    f"word {w} is in the declared kernel-avoiding set but is trivial"
                )
            return False
        return None

    return PartialSolver(step=step, domain_tag=tag or "nontrivial-on-set")


# -- the two reductions -------------------------------------------------------


def ep_from_wp(wp: PartialSolver) -> PartialSolver:
    """Pair solver from a word solver: run it on the pair difference.

    Halting set: the difference-map preimage of the word solver's halting
    set.  The budget is passed through unchanged; the reduction itself costs
    only the difference computation.
    """
    return PartialSolver(
        step=lambda p, budget: wp.run(pair_difference(p), budget),
        domain_tag=f"ep-from[{wp.domain_tag}]",
    )


@dataclass(frozen=True)
class DecisionEvent:
    """One decision during a dovetailed run: which round and lane decided
    which input, and the verdict (True = trivial)."""

    round: int
    lane: int
    input: Word
    verdict: bool

    def format(self) -> str:
        return f"{self.round},{self.lane},{self.input},{'trivial' if self.verdict else 'nontrivial'}"


@dataclass(frozen=True)
class DovetailSchedule:
    """The deterministic fair interleaving used by :func:`wp_from_ep`.

    Lane words are the canonical shortlex enumeration, optionally preceded by
    ``lane_hint`` (deduplicated).  In round r the lanes 0..r each run with
    budget r, so every lane eventually receives unbounded budget.
    """

    alphabet: Alphabet
    lane_hint: tuple[Word, ...] = ()

    def lanes(self) -> Iterator[Word]:
        seen = set()
        for v in chain(self.lane_hint, iter_words(self.alphabet)):
            if v not in seen:
                seen.add(v)
                yield v

    def rounds(self, budget: int) -> Iterator[tuple[int, int]]:
        """(round, lane index) visits, in schedule order."""
        for rnd in range(1, budget + 1):
            for idx in range(rnd + 1):
                yield rnd, idx


def wp_from_ep(
    alphabet: Alphabet,
    ep: PartialSolver,
    lane_hint: Iterable[Word] = (),
    transcript: "list[DecisionEvent] | None" = None,
) -> PartialSolver:
    """Word solver from a pair solver by dovetailing over (v, v*w).

    A hint lets callers front-load lanes known to lie in the pair solver's
    halting set without changing the eventual halting set, which contains
    every difference of a halting pair.  The derived budget counts dovetail
    rounds; ties break to the lowest lane.
    """
    schedule = DovetailSchedule(alphabet, tuple(lane_hint))

    def step(w: Word, budget: int) -> "bool | None":
        lanes: list[Word] = []
        source = schedule.lanes()
        for rnd, idx in schedule.rounds(budget):
            while len(lanes) <= idx:
                lanes.append(next(source))
            v = lanes[idx]
            verdict = ep.run(WordPair(v, v * w), rnd)
            if verdict is not None:
                if transcript is not None:
                    transcript.append(DecisionEvent(rnd, idx, w, verdict))
                return verdict
        return None

    return PartialSolver(step=step, domain_tag=f"wp-from[{ep.domain_tag}]")


# -- closures ------------------------------------------------------------------


def closure_of_pairs(
    alphabet: Alphabet, pairs: Iterable[WordPair], pair_radius: int
) -> frozenset[WordPair]:
    """All pairs within the l1 pair ball sharing a difference with ``pairs``.

    Every produced pair is re-derived from a source pair by a left translation
    (p = (a*t1, a*t2) with a = p1 * t1^-1), which is checked per pair.
    """
    if pair_radius < 0:
        raise ValidationError("radius must be >= 0")
    source_by_diff: dict[Word, WordPair] = {}
    for p in pairs:
        source_by_diff.setdefault(pair_difference(p), p)
    out = set()
    for diff, t in source_by_diff.items():
        if len(diff) > pair_radius:
            continue
        for first in fiber_bruteforce(alphabet, diff, pair_radius).members:
            p = WordPair(first, first * diff)
            a = p.first * t.first.inverse()
            if (a * t.first, a * t.second) != (p.first, p.second):
                raise CertificateViolationError("closure pair is not a translate of its source")
            out.add(p)
    return frozenset(out)


def conjugacy_closure(alphabet: Alphabet, s: WordSet, radius: int) -> WordSet:
    """All words of B_radius conjugate to a member of S.

    Two words are conjugate iff their cyclic reductions are rotations of each
    other, so the window is filtered by a rotation-signature lookup.
    """
    if radius < 0:
        raise ValidationError("radius must be >= 0")
    signatures: set[Word] = set()
    for w in s.members:
        core, _ = cyclic_reduction(w)
        signatures.update(rotations(core))
    members = frozenset(
        w for w in enumerate_ball(alphabet, radius) if cyclic_reduction(w)[0] in signatures
    )
    return WordSet(members, radius, label=f"conjugacy-closure({s.label or 'set'})")


# -- escaping sequences ---------------------------------------------------------


@dataclass(frozen=True)
class EscapingSequence:
    """Words w_1, w_2, ... with certified group lengths.

    Two certificate shapes matter: "exceeds index" (the length of w_n in the
    target exceeds n) and "strictly increasing" group lengths.  Either shape
    witnesses that the target group has arbitrarily long elements reachable
    by a computation.
    """

    words: tuple[Word, ...]
    lengths: tuple[int, ...]  # certified group lengths, parallel to words

    def __post_init__(self):
        if len(self.words) != len(self.lengths):
            raise ValidationError("words and certified lengths must be parallel")

    def __len__(self) -> int:
        return len(self.words)

    def word_at(self, index: int) -> Word:
        """1-based access: the n-th term."""
        return self.words[index - 1]

    def length_at(self, index: int) -> int:
        return self.lengths[index - 1]

    def exceeds_index(self) -> bool:
        return all(length > i + 1 for i, length in enumerate(self.lengths))

    def strictly_increasing(self) -> bool:
        return all(b > a for a, b in zip(self.lengths, self.lengths[1:]))


def build_escaping_sequence(oracle: WPOracle, method: str, n_max: int) -> EscapingSequence:
    """Words w_n with certified group length > n, for n = 1..n_max.

    ``power`` emits g^(n+1) for the first generator; ``search`` scans
    B_(n+1) in shortlex order for any certified word.  A word of group
    length n+1 is witnessed by a geodesic representative inside B_(n+1), so
    for an infinite target the search window suffices; when no certified word
    exists there (finite targets beyond their diameter) the failure is
    reported, never guessed.
    """
    if n_max < 1:
        raise ValidationError("need n_max >= 1")
    words, lengths = [], []
    if method == "power":
        from .words import generator_word

        g = generator_word(0)
        for n in range(1, n_max + 1):
            w = g ** (n + 1)
            glen = oracle.gamma_length(w)
            if glen <= n:
                raise SearchExhaustedError(
                    f"power candidate {w} has group length {glen} <= {n}; "
                    f"the generator does not escape (finite or torsion direction)"
                )
            words.append(w)
            lengths.append(glen)
    elif method == "search":
        for n in range(1, n_max + 1):
            for w in enumerate_ball(oracle.alphabet, n + 1):
                glen = oracle.gamma_length(w)
                if glen > n:
                    words.append(w)
                    lengths.append(glen)
                    break
            else:
                raise SearchExhaustedError(
                    f"no word of group length > {n} exists within radius {n + 1}; "
                    f"the target is finite with diameter <= {n}"
                )
    else:
        raise ValidationError(f"unknown construction method {method!r}; use 'power' or 'search'")
    return EscapingSequence(tuple(words), tuple(lengths))


def subsequence_strictly_increasing(seq: EscapingSequence) -> EscapingSequence:
    """Extract a subsequence with strictly increasing certified lengths.

    From the exceeds-index certificate, iterate k_1 = 1, k_(n+1) = |w_(k_n)|
    (free length): then k_n < length(w_(k_n)) <= k_(n+1), so the selected
    certified lengths strictly increase.
    """
    if not seq.exceeds_index():
        raise ValidationError("input must carry the exceeds-index certificate")
    words, lengths = [], []
    k = 1
    while k <= len(seq):
        w = seq.word_at(k)
        glen = seq.length_at(k)
        words.append(w)
        lengths.append(glen)
        k_next = len(w)
        if not (k < glen <= k_next):
            raise CertificateViolationError("length bookkeeping failed during extraction")
        k = k_next
    out = EscapingSequence(tuple(words), tuple(lengths))
    if not out.strictly_increasing():
        raise CertificateViolationError("extracted subsequence is not strictly increasing")
    return out


def escaping_from_increasing(seq: EscapingSequence) -> EscapingSequence:
    """Back from strictly increasing lengths to the exceeds-index shape.

    Strictly increasing non-negative integers grow at least linearly:
    the (n+2)-nd term has length >= n+1 > n, so dropping the first two terms
    restores the certificate.
    """
    if not seq.strictly_increasing():
        raise ValidationError("input must have strictly increasing certified lengths")
    words = seq.words[2:]
    lengths = seq.lengths[2:]
    out = EscapingSequence(words, lengths)
    if not out.exceeds_index():
        raise CertificateViolationError("shifted sequence lost the exceeds-index certificate")
    return out


def ubgeneric_solvable_set(
    alphabet: Alphabet,
    seq: EscapingSequence,
    depth: int,
    oracle: WPOracle | None = None,
) -> tuple[SetPredicate, PartialSolver]:
    """The union S of w_n * B_n for n = 1..depth, plus its one-sided solver.

    Membership of w in w_n * B_n forces the group length of w_n to be at most
    |u| <= n if w were trivial, contradicting the certificate, so S avoids
    the kernel and the solver soundly answers "nontrivial" on members (with
    an optional oracle cross-check that aborts on any violation).  The
    predicate carries the w_n as translate hints, so genericity certification
    up to ``depth`` succeeds with exactly these witnesses.
    """
    if depth < 1:
        raise ValidationError("need depth >= 1")
    if len(seq) < depth:
        raise ValidationError(f"sequence provides {len(seq)} terms, need {depth}")
    if not seq.exceeds_index():
        raise ValidationError("sequence must carry the exceeds-index certificate")
    terms = tuple((n, seq.word_at(n)) for n in range(1, depth + 1))

    def contains(w: Word) -> bool:
        return any(distance(center, w) <= n for n, center in terms)

    def candidates(n: int) -> tuple[Word, ...]:
        if n > depth:
            return ()
        return (terms[max(n, 1) - 1][1],)

    predicate = SetPredicate(
        contains=contains,
        validity_radius=None,
        label=f"escaping-union(depth={depth})",
        translate_candidates=candidates,
    )
    solver = nontrivial_on(contains, oracle, tag=f"nontrivial-on-{predicate.label}")
    return predicate, solver


def escaping_from_enumeration(
    alphabet: Alphabet,
    enumeration: Iterable[Word],
    n_max: int,
    budget: int,
    oracle: WPOracle,
) -> EscapingSequence:
    """Recover an escaping sequence from an enumerated kernel-avoiding set.

    Materializes the first ``budget`` enumerated words and searches them, in
    enumeration order, for the first w with w * B_n inside the materialized
    prefix — a sound under-approximation of containment in the full set.
    Failure within the budget is reported (genericity at unexplored radii is
    unknowable); a found witness that fails its group-length certificate
    means the input set met the kernel, which aborts loudly.
    """
    if n_max < 1 or budget < 1:
        raise ValidationError("need n_max >= 1 and budget >= 1")
    prefix = list(islice(enumeration, budget))
    materialized = set(prefix)
    words, lengths = [], []
    for n in range(1, n_max + 1):
        ball = list(enumerate_ball(alphabet, n))
        found = None
        for w in prefix:
            if all((w * u) in materialized for u in ball):
                found = w
                break
        if found is None:
            raise SearchExhaustedError(
                f"no translate of B_{n} found inside the first {budget} enumerated words"
            )
        glen = oracle.gamma_length(found)
        if glen <= n:
            raise CertificateViolationError(
                f"witness {found} for radius {n} has group length {glen}; "
                f"the enumerated set meets the kernel"
            )
        words.append(found)
        lengths.append(glen)
    return EscapingSequence(tuple(words), tuple(lengths))


# -- halting-set measurement -----------------------------------------------------


def halting_density(
    alphabet: Alphabet,
    solver: PartialSolver,
    n_max: int,
    budget: int,
    pairs: bool = False,
    length: str = "l1",
) -> DensityProfile:
    """Fraction of the radius-n window the solver decides within the budget.

    Over words this is |{w in B_n : decided}| / |B_n|; with ``pairs`` the
    window is the pair ball of the chosen flavor.  Exact rationals, one
    solver call per window element.
    """
    if n_max < 0:
        raise ValidationError("radius must be >= 0")
    if not pairs:
        decided = [0] * (n_max + 1)
        for w in enumerate_ball(alphabet, n_max):
            if solver.run(w, budget) is not None:
                decided[len(w)] += 1
        denominators = [ball_size(alphabet, n) for n in range(n_max + 1)]
    else:
        decided = [0] * (n_max + 1)
        measure = (lambda p: p.l1_length) if length == "l1" else (lambda p: p.max_length)
        for p in enumerate_pair_ball(alphabet, n_max, length):
            if solver.run(p, budget) is not None:
                decided[measure(p)] += 1
        size = pair_ball_size_l1 if length == "l1" else pair_ball_size_max
        denominators = [size(alphabet, n) for n in range(n_max + 1)]
    ratios = []
    running = 0
    for n in range(n_max + 1):
        running += decided[n]
        ratios.append(Fraction(running, denominators[n]))
    blanks = (None,) * (n_max + 1)
    return DensityProfile("plain", tuple(ratios), blanks, (True,) * (n_max + 1))
