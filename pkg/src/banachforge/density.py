"""Exact density measurements for sets of reduced words.

Three finite-scale profiles are computed, all with exact rational ratios:

* plain: |S intersect B_n| / |B_n|,
* upper Banach: the translate-maximized ratio  max_w |S intersect w*B_n| / |B_n|,
* lower Banach: the translate-minimized ratio  min_w |S intersect w*B_n| / |B_n|.

For an explicitly materialized :class:`WordSet` the translate maximum over
the whole ambient free group is attained inside the finite window
``members * B_n`` (a translate meeting S at all must lie there), so upper
profiles of word sets are exact.  The translate minimum over the whole group
is 0 for any finite set (a far translate misses it), which lower profiles of
word sets report with an explicit far witness.  For predicate-backed sets the
searches run over caller-supplied windows and candidate hints; such entries
are exact bounds in the safe direction, and each entry carries a flag saying
whether it is certified as the true extremum.

Everything here is a pure function of immutable inputs; per-radius
computations are independent and results do not depend on scheduling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Union

from .enumeration import ball_size, enumerate_ball, enumerate_sphere
from .errors import CertificateViolationError, RadiusExceededError, ValidationError
from .words import (
    Alphabet,
    Word,
    distance,
    generator_word,
    is_cyclically_reduced,
)

__all__ = [
    "DensityProfile",
    "SetPredicate",
    "UBGenericityReport",
    "WordSet",
    "diagonal_set",
    "disjoint_translates",
    "empty_set",
    "full_set",
    "is_ub_generic_up_to",
    "lower_banach_profile",
    "plain_density_profile",
    "power_ball_union",
    "translate_count",
    "upper_banach_profile",
]

PROFILE_KINDS = ("plain", "upper_banach", "lower_banach")


@dataclass(frozen=True)
class WordSet:
    """An explicitly stored finite set of reduced words.

    ``support_radius`` documents the window the set stands for: every member
    has length at most ``support_radius``.  Membership of arbitrary words is
    totally known (words longer than the radius are simply not members).
    """

    members: frozenset[Word]
    support_radius: int
    label: str = ""

    def __post_init__(self):
        if self.support_radius < 0:
            raise ValidationError("support radius must be >= 0")
        worst = max((len(w) for w in self.members), default=0)
        if worst > self.support_radius:
            raise ValidationError(
                f"member of length {worst} exceeds declared support radius {self.support_radius}"
            )

    @classmethod
    def from_words(cls, words: Iterable[Word], support_radius: int | None = None, label: str = "") -> "WordSet":
        members = frozenset(words)
        if support_radius is None:
            support_radius = max((len(w) for w in members), default=0)
        return cls(members, support_radius, label)

    @cached_property
    def sorted_members(self) -> tuple[Word, ...]:
        return tuple(sorted(self.members))

    def __contains__(self, w: Word) -> bool:
        return w in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.sorted_members)


@dataclass(frozen=True)
class SetPredicate:
    """A total membership test standing in for a possibly infinite set.

    Answers are meaningful for words of length <= ``validity_radius``
    (``None`` means unbounded).  ``translate_candidates``, when present, maps
    a radius n to finitely many translates worth trying as witnesses in
    Banach-profile searches.
    """

    contains: Callable[[Word], bool]
    validity_radius: int | None = None
    label: str = ""
    translate_candidates: Callable[[int], tuple[Word, ...]] | None = None

    def check_radius(self, length: int) -> None:
        if self.validity_radius is not None and length > self.validity_radius:
            raise RadiusExceededError(
                f"membership of words of length {length} exceeds the validity "
                f"radius {self.validity_radius} of {self.label or 'this predicate'}"
            )


SetLike = Union[WordSet, SetPredicate]


@dataclass(frozen=True)
class DensityProfile:
    """Ratios indexed by radius n = 0..N, with per-entry witnesses and an
    exactness flag (False = safe bound only, not certified extremal)."""

    kind: str
    ratios: tuple[Fraction, ...]
    witnesses: tuple[Word | None, ...]
    certified: tuple[bool, ...]

    def __post_init__(self):
        if self.kind not in PROFILE_KINDS:
            raise ValidationError(f"unknown profile kind {self.kind!r}")
        if not all(0 <= r <= 1 for r in self.ratios):
            raise ValidationError("profile ratios must lie in [0, 1]")

    @property
    def max_radius(self) -> int:
        return len(self.ratios) - 1


def translate_count(alphabet: Alphabet, s: SetLike, w: Word, n: int) -> int:
    """|S intersect w*B_n| by direct counting."""
    if n < 0:
        raise ValidationError("radius must be >= 0")
    alphabet.validate_word(w)
    if isinstance(s, WordSet):
        # distance(w, m) <= n  <=>  m in w*B_n
        return sum(1 for m in s.members if distance(w, m) <= n)
    s.check_radius(len(w) + n)
    return sum(1 for u in enumerate_ball(alphabet, n) if s.contains(w * u))


def plain_density_profile(alphabet: Alphabet, s: SetLike, n_max: int) -> DensityProfile:
    """Exact |S intersect B_n| / |B_n| for n = 0..n_max."""
    if isinstance(s, WordSet):
        per_length = [0] * (n_max + 1)
        for w in s.members:
            if len(w) <= n_max:
                per_length[len(w)] += 1
    else:
        s.check_radius(n_max)
        per_length = [0] * (n_max + 1)
        for w in enumerate_ball(alphabet, n_max):
            if s.contains(w):
                per_length[len(w)] += 1
    ratios = []
    running = 0
    for n in range(n_max + 1):
        running += per_length[n]
        ratios.append(Fraction(running, ball_size(alphabet, n)))
    blanks = (None,) * (n_max + 1)
    return DensityProfile("plain", tuple(ratios), blanks, (True,) * (n_max + 1))


def _candidate_translates(
    alphabet: Alphabet,
    s: SetLike,
    n: int,
    search_radius: int | None,
) -> list[Word]:
    if isinstance(s, WordSet):
        ball = list(enumerate_ball(alphabet, n))
        cands = {m * u for m in s.members for u in ball}
        cands.add(Word())
        return sorted(cands)
    cands: set[Word] = set()
    if s.translate_candidates is not None:
        cands.update(s.translate_candidates(n))
    if search_radius is not None:
        s.check_radius(search_radius + n)
        cands.update(enumerate_ball(alphabet, search_radius))
    if not cands:
        raise ValidationError(
            "translate search over a predicate needs candidate hints or a search radius"
        )
    return sorted(cands)


def upper_banach_profile(
    alphabet: Alphabet,
    s: SetLike,
    n_max: int,
    search_radius: int | None = None,
) -> DensityProfile:
    """Translate-maximized density profile.

    Exact for word sets (the window members*B_n provably contains every
    translate with nonzero intersection).  For predicates the maximum runs
    over the hints plus ``B_search_radius``; an entry is certified only when
    it reaches 1, which no larger window could beat.
    """
    ratios, wits, certs = [], [], []
    for n in range(n_max + 1):
        denom = ball_size(alphabet, n)
        best, best_w = 0, None
        for cand in _candidate_translates(alphabet, s, n, search_radius):
            c = translate_count(alphabet, s, cand, n)
            if c > best:
                best, best_w = c, cand
                if best == denom:
                    break
        ratios.append(Fraction(best, denom))
        wits.append(best_w)
        certs.append(True if isinstance(s, WordSet) else best == denom)
    return DensityProfile("upper_banach", tuple(ratios), tuple(wits), tuple(certs))


def lower_banach_profile(
    alphabet: Alphabet,
    s: SetLike,
    n_max: int,
    search_radius: int | None = None,
) -> DensityProfile:
    """Translate-minimized density profile.

    Without a search radius, a finite word set has true minimum 0 at every n,
    witnessed by a translate beyond its support.  With a search radius (and
    always for predicates) the minimum runs over the supplied window, so each
    entry is an upper bound on the true minimum; the certification flag is
    set only when 0 is witnessed.
    """
    ratios, wits, certs = [], [], []
    for n in range(n_max + 1):
        denom = ball_size(alphabet, n)
        if isinstance(s, WordSet) and search_radius is None:
            far = generator_word(0) ** (s.support_radius + n + 1)
            assert translate_count(alphabet, s, far, n) == 0
            ratios.append(Fraction(0))
            wits.append(far)
            certs.append(True)
            continue
        worst, worst_w = None, None
        for cand in _candidate_translates(alphabet, s, n, search_radius):
            c = translate_count(alphabet, s, cand, n)
            if worst is None or c < worst:
                worst, worst_w = c, cand
                if worst == 0:
                    break
        ratios.append(Fraction(worst, denom))
        wits.append(worst_w)
        certs.append(worst == 0)
    return DensityProfile("lower_banach", tuple(ratios), tuple(wits), tuple(certs))


# -- ball-translate genericity ------------------------------------------------


@dataclass(frozen=True)
class UBGenericityReport:
    """Outcome of searching, for each n <= N, a translate w with w*B_n inside S.

    A full witness list certifies that the translate-maximized density is 1 up
    to radius N.  ``witness_lengths`` records |w_n|, an upper bound on the
    least translate length that works at each radius.
    """

    ok: bool
    witnesses: tuple[Word | None, ...]
    failed_at: int | None = None

    @property
    def witness_lengths(self) -> tuple[int | None, ...]:
        return tuple(None if w is None else len(w) for w in self.witnesses)


def _ball_inside(alphabet: Alphabet, s: SetLike, w: Word, n: int, ball: list[Word]) -> bool:
    if isinstance(s, WordSet):
        return all((w * u) in s.members for u in ball)
    s.check_radius(len(w) + n)
    return all(s.contains(w * u) for u in ball)


def is_ub_generic_up_to(
    alphabet: Alphabet,
    s: SetLike,
    n_max: int,
    search_radius: int | None = None,
) -> UBGenericityReport:
    """Search witnesses w_n with w_n * B_n contained in S, for n = 0..n_max.

    Any valid witness lies in S itself, so for word sets the members are the
    complete candidate list and a negative answer is exact.  For predicates
    the search covers the hints plus the optional window, and a negative
    answer means only that no witness exists there.
    """
    witnesses: list[Word | None] = []
    for n in range(n_max + 1):
        ball = list(enumerate_ball(alphabet, n))
        if isinstance(s, WordSet):
            cands: Iterable[Word] = s.sorted_members
        else:
            cands = _candidate_translates(alphabet, s, n, search_radius)
        found = None
        for cand in cands:
            if _ball_inside(alphabet, s, cand, n, ball):
                found = cand
                break
        if found is None:
            witnesses.extend([None] * (n_max + 1 - n))
            return UBGenericityReport(False, tuple(witnesses), failed_at=n)
        witnesses.append(found)
    return UBGenericityReport(True, tuple(witnesses))


# -- stock sets ---------------------------------------------------------------


def full_set() -> SetPredicate:
    """The whole ambient free group."""
    return SetPredicate(
        contains=lambda w: True,
        validity_radius=None,
        label="all",
        translate_candidates=lambda n: (Word(),),
    )


def empty_set() -> SetPredicate:
    return SetPredicate(
        contains=lambda w: False,
        validity_radius=None,
        label="empty",
        translate_candidates=lambda n: (Word(),),
    )


def diagonal_set(alphabet: Alphabet) -> SetPredicate:
    """{a^k : k >= 0}: exactly one word per sphere.

    A one-per-sphere set can meet a translated ball w*B_n in at most 2n+1
    words (one per length |w|-n .. |w|+n), so it contains no translate of B_1
    once the alphabet has rank > 1.
    """
    return SetPredicate(
        contains=lambda w: all(l.index == 0 and l.sign == 1 for l in w.letters),
        validity_radius=None,
        label="diagonal",
    )


def power_ball_union(
    alphabet: Alphabet,
    base: Word,
    exponents: Callable[[int], int],
    depth: int | None = None,
) -> SetPredicate:
    """The union over n >= 1 of base^exponents(n) * B_n.

    ``base`` must be nontrivial and cyclically reduced (so that
    |base^k| = k*|base| exactly) and ``exponents`` strictly increasing.  Each
    piece then sits at distance |base|*exponents(n) - n from the identity,
    which grows without bound, so membership of any single word is decided by
    inspecting finitely many n; the predicate is total and exact.  With a fast
    exponent growth such as 4^n the union contains a translate of every ball
    yet has vanishing plain density.  ``depth`` optionally truncates the union
    to n <= depth.
    """
    alphabet.validate_word(base)
    if base.is_identity:
        raise ValidationError("base word must be nontrivial")
    if not is_cyclically_reduced(base):
        raise ValidationError(
            "base word must be cyclically reduced so that power lengths are |base| * exponent"
        )
    power_cache: dict[int, Word] = {}

    def level_exponent(n: int) -> int:
        e = exponents(n)
        if n >= 2 and e <= exponents(n - 1):
            raise ValidationError("exponent map must be strictly increasing")
        if e < 1:
            raise ValidationError("exponents must be >= 1")
        return e

    def translate(n: int) -> Word:
        if n not in power_cache:
            power_cache[n] = base ** level_exponent(n)
        return power_cache[n]

    def contains(w: Word) -> bool:
        n = 1
        while depth is None or n <= depth:
            center = translate(n)
            if len(center) - n > len(w):
                # pieces only move further out from here on
                return False
            if distance(center, w) <= n:
                return True
            n += 1
        return False

    def candidates(n: int) -> tuple[Word, ...]:
        m = max(n, 1)
        if depth is not None and m > depth:
            return ()
        return (translate(m),)

    label = f"power-ball-union(base={base}, depth={'inf' if depth is None else depth})"
    return SetPredicate(contains, None, label, candidates)


# -- disjoint translate packing ------------------------------------------------


def disjoint_translates(alphabet: Alphabet, n: int, k: int) -> list[Word]:
    """Pack |S_(n-2k)| pairwise disjoint translates w*B_k into B_n (rank > 1).

    Each word v of length n-2k is padded to w = v * z^k where z is a single
    generator chosen not to cancel against v; two padded centers are then at
    distance at least 2k+2, so their radius-k balls are disjoint, and
    |w| = n-k keeps w*B_k inside B_n.  Both properties are re-verified here.
    """
    if alphabet.rank < 2:
        raise ValidationError("disjoint translate packing requires rank > 1")
    if k < 0 or n < 2 * k:
        raise ValidationError("need n >= 2k >= 0")
    a = generator_word(0)
    b = generator_word(1)
    out = []
    for v in enumerate_sphere(alphabet, n - 2 * k):
        if k == 0:
            out.append(v)
            continue
        last = v.letters[-1] if len(v) else None
        pad = b if (last is not None and last.index == 0 and last.sign == -1) else a
        w = v * pad**k
        if len(w) != n - k:
            raise CertificateViolationError("padding unexpectedly cancelled")
        out.append(w)
    for w in out:
        if len(w) + k > n:
            raise CertificateViolationError("translate escapes the ball")
    for i, w1 in enumerate(out):
        for w2 in out[i + 1 :]:
            if distance(w1, w2) <= 2 * k:
                raise CertificateViolationError("translates are not disjoint")
    return out
