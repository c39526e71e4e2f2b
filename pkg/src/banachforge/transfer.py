"""Transfer between word sets and word-pair sets through the difference map
``(u, v) -> u^-1 v``.

The fiber of the difference map over a word ``s``, intersected with the
radius-n pair ball, projects bijectively onto

    P(s, n) = { w : |w| + |w s| <= n }.

For rank > 1 this set has a closed geometric description: writing
``t = s^-1 = t_k ... t_1`` letter by letter, P(s, n) is the union of the
balls of radius floor((n-k)/2) left-translated onto the suffixes
``t_i ... t_1``, i.e. a tubular neighborhood of the geodesic from the
identity to ``t`` in the left Cayley graph.  (A word w cancelling exactly i
letters against t factors as w = v * t_i...t_1 with |w| + |w t| = 2|v| + k.)
Both the brute-force filter and the geodesic construction are provided; they
must agree extensionally and the test suite sweeps that equality.

Summing fiber sizes over a word set S counts the pairs mapping into S:

    |difference^-1(S) intersect pair-ball(n)| = sum_{s in S} |P(s, n)|,

which yields exact side-by-side density columns for S and its pair preimage,
together with the audited lower bound

    preimage ratio at n  >=  (1/C2) * |S intersect S_n| / alpha^n

coming from |P(s, n)| = n + 1 for |s| = n and the pair-ball upper constant.

All functions are pure; the per-target fiber computations inside a profile
are independent, and sums run in sorted order for reproducible output.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .density import WordSet
from .enumeration import (
    ball_size,
    enumerate_ball,
    pair_ball_size_l1,
    pair_ball_upper_constant,
)
from .errors import CertificateViolationError, ValidationError
from .words import Alphabet, Word, WordPair, product_length

__all__ = [
    "GeodesicNeighborhood",
    "TransferProfile",
    "TransferRow",
    "fiber_bruteforce",
    "fiber_geodesic",
    "fiber_size",
    "geodesic_neighborhood",
    "midpoint_ball",
    "pair_difference",
    "preimage_ball_count",
    "transfer_profile",
    "word_difference",
]


def word_difference(first: Word, second: Word) -> Word:
    """The difference map: (u, v) -> u^-1 v.  Trivial iff the pair is diagonal."""
    return first.inverse() * second


def pair_difference(pair: WordPair) -> Word:
    return word_difference(pair.first, pair.second)


def _suffixes(w: Word) -> tuple[Word, ...]:
    """The k+1 suffixes of w, shortest first (the left-Cayley geodesic to w)."""
    letters = w.letters
    return tuple(Word(letters[len(letters) - i :]) for i in range(len(letters) + 1))


@dataclass(frozen=True)
class GeodesicNeighborhood:
    """The set of words within ``half_width`` of the geodesic to ``target``.

    ``components`` are the geodesic vertices (the suffixes of ``target``);
    the realized set is the union of the radius-floor(half_width) balls
    left-translated onto them, empty when ``half_width`` is negative.
    """

    target: Word
    half_width: Fraction
    components: tuple[Word, ...]

    def realize(self, alphabet: Alphabet) -> frozenset[Word]:
        if self.half_width < 0:
            return frozenset()
        radius = floor(self.half_width)
        ball = list(enumerate_ball(alphabet, radius))
        return frozenset(b * c for c in self.components for b in ball)


def geodesic_neighborhood(target: Word, n: int) -> GeodesicNeighborhood:
    """The neighborhood realizing { w : |w| + |w * target^-1| <= n }."""
    if n < 0:
        raise ValidationError("radius must be >= 0")
    return GeodesicNeighborhood(
        target=target,
        half_width=Fraction(n - len(target), 2),
        components=_suffixes(target),
    )


def fiber_bruteforce(alphabet: Alphabet, s: Word, n: int) -> WordSet:
    """P(s, n) by exhaustively filtering the ball (any rank)."""
    if n < 0:
        raise ValidationError("radius must be >= 0")
    alphabet.validate_word(s)
    members = frozenset(
        w for w in enumerate_ball(alphabet, n) if len(w) + product_length(w, s) <= n
    )
    return WordSet(members, n, label=f"fiber({s},{n})")


def fiber_geodesic(alphabet: Alphabet, s: Word, n: int) -> WordSet:
    """P(s, n) via the geodesic-neighborhood description (rank > 1 only)."""
    if alphabet.rank < 2:
        raise ValidationError("the geodesic description requires rank > 1; use fiber_bruteforce")
    if n < 0:
        raise ValidationError("radius must be >= 0")
    alphabet.validate_word(s)
    members = geodesic_neighborhood(s.inverse(), n).realize(alphabet)
    return WordSet(members, n, label=f"fiber({s},{n})")


def fiber_size(alphabet: Alphabet, s: Word, n: int) -> int:
    """|P(s, n)|, through the geodesic route when available."""
    if alphabet.rank < 2:
        return len(fiber_bruteforce(alphabet, s, n).members)
    if len(s) > n:
        return 0
    return len(fiber_geodesic(alphabet, s, n).members)


def preimage_ball_count(alphabet: Alphabet, s: WordSet, n: int) -> int:
    """Number of pairs (u, v) with |u| + |v| <= n and u^-1 v in S."""
    if n < 0:
        raise ValidationError("radius must be >= 0")
    return sum(fiber_size(alphabet, member, n) for member in s.sorted_members)


@dataclass(frozen=True)
class TransferRow:
    n: int
    set_count: int
    ball: int
    preimage_count: int
    pair_ball: int
    sphere_count: int
    lower_bound: Fraction | None

    @property
    def set_ratio(self) -> Fraction:
        return Fraction(self.set_count, self.ball)

    @property
    def preimage_ratio(self) -> Fraction:
        return Fraction(self.preimage_count, self.pair_ball)


@dataclass(frozen=True)
class TransferProfile:
    rows: tuple[TransferRow, ...]


def transfer_profile(alphabet: Alphabet, s: WordSet, n_max: int) -> TransferProfile:
    """Side-by-side density columns for S and its pair preimage, n = 0..n_max.

    ``lower_bound`` is the audited rational (1/C2) * |S intersect S_n| / alpha^n,
    which the preimage ratio must dominate; it is omitted at rank 1, where no
    pair-ball constant of that shape exists.
    """
    if n_max < 0:
        raise ValidationError("radius must be >= 0")
    per_length: dict[int, int] = {}
    for w in s.members:
        per_length[len(w)] = per_length.get(len(w), 0) + 1
    c2_inv = None
    if alphabet.rank > 1:
        c2_inv = 1 / pair_ball_upper_constant(alphabet)
    rows = []
    running = 0
    for n in range(n_max + 1):
        sphere_count = per_length.get(n, 0)
        running += sphere_count
        bound = None
        if c2_inv is not None:
            bound = c2_inv * Fraction(sphere_count, alphabet.alpha**n)
        rows.append(
            TransferRow(
                n=n,
                set_count=running,
                ball=ball_size(alphabet, n),
                preimage_count=preimage_ball_count(alphabet, s, n),
                pair_ball=pair_ball_size_l1(alphabet, n),
                sphere_count=sphere_count,
                lower_bound=bound,
            )
        )
    return TransferProfile(tuple(rows))


def midpoint_ball(alphabet: Alphabet, s: Word, n: int) -> WordSet:
    """B_n intersect B_n*s, computed two independent ways (rank > 1).

    Brute force filters the ball; the geometric route takes the ball of
    radius n - |s|/2 around the midpoint of the geodesic to s (for odd |s|,
    the two middle vertices with the radius rounded down).  The routes must
    coincide; a mismatch aborts loudly.
    """
    if alphabet.rank < 2:
        raise ValidationError("midpoint description requires rank > 1")
    if n < 0:
        raise ValidationError("radius must be >= 0")
    alphabet.validate_word(s)
    s_inv = s.inverse()
    brute = frozenset(
        w for w in enumerate_ball(alphabet, n) if product_length(w, s_inv) <= n
    )
    k = len(s)
    if k > 2 * n:
        described: frozenset[Word] = frozenset()
    else:
        suffixes = _suffixes(s)
        if k % 2 == 0:
            centers = [suffixes[k // 2]]
            radius = n - k // 2
        else:
            m = (k - 1) // 2
            centers = [suffixes[m], suffixes[m + 1]]
            radius = n - (m + 1)
        ball = list(enumerate_ball(alphabet, radius))
        described = frozenset(b * c for c in centers for b in ball)
    if brute != described:
        raise CertificateViolationError(
            f"midpoint description disagrees with brute force for s={s}, n={n}"
        )
    return WordSet(brute, n, label=f"midpoint({s},{n})")
