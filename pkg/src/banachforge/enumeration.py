"""Exact counting and deterministic shortlex enumeration of spheres and balls.

All counts are Python integers (arbitrary precision).  For rank d > 1, with
``alpha = 2d - 1``:

    |S_0| = 1,            |S_n| = 2d * alpha^(n-1)          (n >= 1)
    |B_n| = ((alpha + 1) * alpha^n - 2) / (alpha - 1)

which gives the exact two-sided estimates used throughout the package:

    alpha^n <= |B_n| <= C1 * alpha^n            with C1 = 2d / (2d - 2),
    (n+1) * alpha^n <= |B_n(F^2)| <= C2 * (n+1) * alpha^n
                                   with C2 = 4d^2 / ((2d-1)(2d-2)),

where ``B_n(F^2)`` counts pairs by total length |u| + |v|.  The lower pair
bound holds with constant exactly 1 because each of the n+1 products
|S_i| * |S_(n-i)| is at least alpha^n.  Rank 1 is the integer lattice:
|S_n| = 2 for n >= 1 and |B_n| = 2n + 1; there the pair ball grows
quadratically and no constants of the above shape exist.

Enumeration order is shortlex with letters ordered a < a^-1 < b < b^-1 < ...
and is stable across runs.  Every call returns an independent generator, so
concurrent consumers are safe; parallel work is naturally partitioned by the
first letter.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator

from .errors import ValidationError
from .words import Alphabet, Word, WordPair

__all__ = [
    "ball_size",
    "ball_upper_constant",
    "ball_word_at",
    "enumerate_ball",
    "enumerate_pair_ball",
    "enumerate_sphere",
    "iter_words",
    "pair_ball_lower_constant",
    "pair_ball_size_l1",
    "pair_ball_size_max",
    "pair_ball_upper_constant",
    "pair_sphere_size_l1",
    "sphere_growth_constant",
    "sphere_size",
    "sphere_word_at",
]


def _check_radius(n: int) -> None:
    if not isinstance(n, int) or n < 0:
        raise ValidationError(f"radius must be a non-negative integer, got {n!r}")


def sphere_size(alphabet: Alphabet, n: int) -> int:
    """Number of reduced words of length exactly ``n``."""
    _check_radius(n)
    if n == 0:
        return 1
    if alphabet.rank == 1:
        return 2
    return 2 * alphabet.rank * alphabet.alpha ** (n - 1)


def ball_size(alphabet: Alphabet, n: int) -> int:
    """Number of reduced words of length at most ``n``."""
    _check_radius(n)
    if alphabet.rank == 1:
        return 2 * n + 1
    alpha = alphabet.alpha
    # 1 + sum_{i=1..n} 2d alpha^(i-1); the geometric sum is exactly divisible
    return 1 + 2 * alphabet.rank * ((alpha**n - 1) // (alpha - 1))


def pair_sphere_size_l1(alphabet: Alphabet, n: int) -> int:
    """Number of pairs with |u| + |v| exactly ``n``."""
    _check_radius(n)
    return sum(sphere_size(alphabet, i) * sphere_size(alphabet, n - i) for i in range(n + 1))


def pair_ball_size_l1(alphabet: Alphabet, n: int) -> int:
    """Number of pairs with |u| + |v| <= ``n``."""
    _check_radius(n)
    return sum(pair_sphere_size_l1(alphabet, m) for m in range(n + 1))


def pair_ball_size_max(alphabet: Alphabet, n: int) -> int:
    """Number of pairs with max(|u|, |v|) <= ``n``: the square of the ball."""
    return ball_size(alphabet, n) ** 2


def _require_rank_above_one(alphabet: Alphabet) -> None:
    if alphabet.rank < 2:
        raise ValidationError("growth constants of this shape require rank > 1")


def sphere_growth_constant(alphabet: Alphabet) -> Fraction:
    """c with |S_n| = c * alpha^n exactly for every n >= 1 (rank > 1)."""
    _require_rank_above_one(alphabet)
    return Fraction(2 * alphabet.rank, alphabet.alpha)


def ball_upper_constant(alphabet: Alphabet) -> Fraction:
    """C1 = 2d/(2d-2): |B_n| = C1*alpha^n - 2/(alpha-1), so |B_n| <= C1*alpha^n."""
    _require_rank_above_one(alphabet)
    return Fraction(2 * alphabet.rank, 2 * alphabet.rank - 2)


def pair_ball_lower_constant(alphabet: Alphabet) -> Fraction:
    """c2 = 1: already |S_n(F^2)| >= (n+1) * alpha^n term by term."""
    _require_rank_above_one(alphabet)
    return Fraction(1)


def pair_ball_upper_constant(alphabet: Alphabet) -> Fraction:
    """C2 = 4d^2/((2d-1)(2d-2)).

    |S_i| <= c*alpha^i for all i >= 0 with c = 2d/(2d-1), hence
    |B_n(F^2)| <= c^2 * sum_{m<=n} (m+1) alpha^m <= c^2 (n+1) alpha^n * alpha/(alpha-1).
    """
    _require_rank_above_one(alphabet)
    d = alphabet.rank
    return Fraction(4 * d * d, (2 * d - 1) * (2 * d - 2))


# -- enumeration -------------------------------------------------------------


def enumerate_sphere(alphabet: Alphabet, n: int) -> Iterator[Word]:
    """Yield each reduced word of length exactly ``n`` once, in shortlex order."""
    _check_radius(n)
    if n == 0:
        yield Word._from_ranks(())
        return
    if alphabet.rank == 1:
        yield Word._from_ranks((0,) * n)
        yield Word._from_ranks((1,) * n)
        return
    num = alphabet.num_letters
    cur = [0] * n  # smallest reduced word: the first generator repeated
    while True:
        yield Word._from_ranks(tuple(cur))
        i = n - 1
        while i >= 0:
            prev = cur[i - 1] if i > 0 else -2
            r = cur[i] + 1
            if r == (prev ^ 1):
                r += 1
            if r < num:
                cur[i] = r
                for j in range(i + 1, n):
                    # smallest rank not cancelling the previous letter
                    cur[j] = 1 if cur[j - 1] == 1 else 0
                break
            i -= 1
        else:
            return


def enumerate_ball(alphabet: Alphabet, n: int) -> Iterator[Word]:
    """Yield each reduced word of length at most ``n`` once, in shortlex order."""
    _check_radius(n)
    for m in range(n + 1):
        yield from enumerate_sphere(alphabet, m)


def iter_words(alphabet: Alphabet) -> Iterator[Word]:
    """The canonical infinite shortlex enumeration of all reduced words."""
    m = 0
    while True:
        yield from enumerate_sphere(alphabet, m)
        m += 1


def enumerate_pair_ball(alphabet: Alphabet, n: int, length: str = "l1") -> Iterator[WordPair]:
    """Yield pairs within the radius-``n`` pair ball.

    ``length="l1"`` orders by (|u|+|v|, |u|, u, v); ``length="max"`` yields
    the full product ball B_n x B_n ordered by (u, v).  Both orders are
    deterministic.
    """
    _check_radius(n)
    if length == "l1":
        spheres = [list(enumerate_sphere(alphabet, m)) for m in range(n + 1)]
        for total in range(n + 1):
            for i in range(total + 1):
                for u in spheres[i]:
                    for v in spheres[total - i]:
                        yield WordPair(u, v)
    elif length == "max":
        ball = list(enumerate_ball(alphabet, n))
        for u in ball:
            for v in ball:
                yield WordPair(u, v)
    else:
        raise ValidationError(f"unknown pair length flavor {length!r}; use 'l1' or 'max'")


# -- unranking ----------------------------------------------------------------


def sphere_word_at(alphabet: Alphabet, n: int, index: int) -> Word:
    """The ``index``-th word of the length-``n`` sphere in shortlex order."""
    _check_radius(n)
    size = sphere_size(alphabet, n)
    if not 0 <= index < size:
        raise ValidationError(f"sphere index {index} out of range [0, {size})")
    if n == 0:
        return Word._from_ranks(())
    if alphabet.rank == 1:
        return Word._from_ranks((index,) * n)
    alpha = alphabet.alpha
    block = alpha ** (n - 1)
    first, rem = divmod(index, block)
    ranks = [first]
    for _ in range(n - 1):
        block //= alpha
        digit, rem = divmod(rem, block)
        forbidden = ranks[-1] ^ 1
        ranks.append(digit if digit < forbidden else digit + 1)
    return Word._from_ranks(tuple(ranks))


def ball_word_at(alphabet: Alphabet, index: int) -> Word:
    """The ``index``-th word in the global shortlex enumeration."""
    if not isinstance(index, int) or index < 0:
        raise ValidationError(f"word index must be a non-negative integer, got {index!r}")
    n = 0
    below = 0
    while True:
        size = sphere_size(alphabet, n)
        if index < below + size:
            return sphere_word_at(alphabet, n, index - below)
        below += size
        n += 1
