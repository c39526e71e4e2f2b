"""Reduced-word algebra over a finite symmetric alphabet.

Every :class:`Word` in circulation is freely reduced; the reduction happens
once, at construction.  Letters are exposed as ``(generator index, sign)``
pairs.  Internally a word stores a tuple of interleaved *ranks*
``2*index + (0 if sign > 0 else 1)``, so that the canonical letter order
``a < a^-1 < b < b^-1 < ...`` is plain integer order and the inverse of a
letter is a one-bit flip.

Text format: lowercase ASCII letters ``a, b, c, ...`` denote generators
0, 1, 2, ..., the matching uppercase letter denotes the inverse, and the
empty string or the single character ``1`` denotes the identity.  For
example ``"abA"`` is a * b * a^-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .errors import ValidationError

__all__ = [
    "Alphabet",
    "Letter",
    "Word",
    "WordPair",
    "common_prefix_length",
    "cyclic_reduction",
    "distance",
    "free_reduce",
    "generator_word",
    "is_cyclically_reduced",
    "letter_rank",
    "parse_word",
    "product_length",
    "rotations",
]

_IDENTITY_TEXT = "1"
_MAX_TEXT_RANK = 26  # text format covers generators a..z only


class Letter(NamedTuple):
    """One generator (sign ``+1``) or inverse generator (sign ``-1``)."""

    index: int
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.index, -self.sign)


def letter_rank(letter: Letter) -> int:
    """Position of a letter in the canonical order a < a^-1 < b < b^-1 < ..."""
    return 2 * letter.index + (0 if letter.sign > 0 else 1)


def _letter_of_rank(rank: int) -> Letter:
    return Letter(rank >> 1, -1 if rank & 1 else 1)


def _rank_of_letter(letter) -> int:
    index, sign = letter
    if index < 0 or sign not in (1, -1):
        raise ValidationError(f"invalid letter {letter!r}: need index >= 0 and sign +-1")
    return 2 * index + (0 if sign > 0 else 1)


def _check_reduced(ranks) -> None:
    for a, b in zip(ranks, ranks[1:]):
        if a == (b ^ 1):
            raise ValidationError(
                "word is not freely reduced; build it with free_reduce() or pass reduce=True"
            )


def _ranks_from_text(text: str):
    if text in ("", _IDENTITY_TEXT):
        return ()
    ranks = []
    for ch in text:
        if "a" <= ch <= "z":
            ranks.append(2 * (ord(ch) - ord("a")))
        elif "A" <= ch <= "Z":
            ranks.append(2 * (ord(ch) - ord("A")) + 1)
        else:
            raise ValidationError(f"invalid character {ch!r} in word text {text!r}")
    return tuple(ranks)


class Word:
    """An immutable freely reduced word.

    Words multiply with ``*`` (free reduction at the junction), invert with
    :meth:`inverse`, and exponentiate with ``**``.  Comparison is shortlex:
    first by length, then letter by letter in canonical order.
    """

    __slots__ = ("_ranks",)

    def __init__(self, letters: "str | Word | Iterable[Letter]" = ()):
        if isinstance(letters, Word):
            self._ranks = letters._ranks
            return
        if isinstance(letters, str):
            ranks = _ranks_from_text(letters)
        else:
            ranks = tuple(_rank_of_letter(l) for l in letters)
        _check_reduced(ranks)
        self._ranks = ranks

    @classmethod
    def _from_ranks(cls, ranks) -> "Word":
        # trusted constructor: ranks must already describe a reduced word
        w = object.__new__(cls)
        w._ranks = ranks
        return w

    # -- structure ---------------------------------------------------------

    @property
    def letters(self) -> tuple[Letter, ...]:
        return tuple(_letter_of_rank(r) for r in self._ranks)

    @property
    def is_identity(self) -> bool:
        return not self._ranks

    @property
    def max_generator_index(self) -> int:
        """Largest generator index used, or -1 for the identity."""
        return max((r >> 1 for r in self._ranks), default=-1)

    def __len__(self) -> int:
        return len(self._ranks)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __eq__(self, other) -> bool:
        if isinstance(other, Word):
            return self._ranks == other._ranks
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._ranks)

    def __lt__(self, other) -> bool:
        if isinstance(other, Word):
            a, b = self._ranks, other._ranks
            return (len(a), a) < (len(b), b)
        return NotImplemented

    # -- group operations --------------------------------------------------

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        a, b = self._ranks, other._ranks
        i, j = len(a), 0
        nb = len(b)
        while i > 0 and j < nb and a[i - 1] == (b[j] ^ 1):
            i -= 1
            j += 1
        return Word._from_ranks(a[:i] + b[j:])

    def inverse(self) -> "Word":
        return Word._from_ranks(tuple(r ^ 1 for r in reversed(self._ranks)))

    def __pow__(self, exponent: int) -> "Word":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        if exponent == 0 or not self._ranks:
            return Word._from_ranks(())
        # w = p * core * p^-1 with core cyclically reduced, so powers of the
        # core are plain repetitions and no per-step reduction is needed.
        core, conj = cyclic_reduction(self)
        middle = core._ranks * exponent
        return Word._from_ranks(conj._ranks + middle + conj.inverse()._ranks)

    def __str__(self) -> str:
        if not self._ranks:
            return _IDENTITY_TEXT
        out = []
        for r in self._ranks:
            index = r >> 1
            if index >= _MAX_TEXT_RANK:
                raise ValidationError(f"generator index {index} has no single-letter text form")
            base = ord("A") if r & 1 else ord("a")
            out.append(chr(base + index))
        return "".join(out)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


def generator_word(index: int, sign: int = 1) -> Word:
    """The one-letter word for a generator or its inverse."""
    return Word._from_ranks((_rank_of_letter((index, sign)),))


def free_reduce(letters: Iterable[Letter]) -> Word:
    """Freely reduce a raw letter sequence.

    Cancels every adjacent ``x x^-1`` pair (cascading) and returns the unique
    reduced word equal to the input in the free group.  Idempotent.
    """
    stack: list[int] = []
    for l in letters:
        r = _rank_of_letter(l)
        if stack and stack[-1] == (r ^ 1):
            stack.pop()
        else:
            stack.append(r)
    return Word._from_ranks(tuple(stack))


def parse_word(text: str, alphabet: "Alphabet | None" = None, *, reduce: bool = False) -> Word:
    """Parse the text format; reject non-reduced input unless ``reduce`` is set."""
    ranks = _ranks_from_text(text)
    if reduce:
        stack: list[int] = []
        for r in ranks:
            if stack and stack[-1] == (r ^ 1):
                stack.pop()
            else:
                stack.append(r)
        word = Word._from_ranks(tuple(stack))
    else:
        _check_reduced(ranks)
        word = Word._from_ranks(ranks)
    if alphabet is not None:
        alphabet.validate_word(word)
    return word


# -- length and distance helpers ------------------------------------------


def common_prefix_length(u: Word, v: Word) -> int:
    a, b = u._ranks, v._ranks
    n = min(len(a), len(b))
    i = 0
    while i < n and a[i] == b[i]:
        i += 1
    return i


def distance(u: Word, v: Word) -> int:
    """Word metric |u^-1 v|; left-invariant, so this is the Cayley distance."""
    return len(u) + len(v) - 2 * common_prefix_length(u, v)


def product_length(u: Word, v: Word) -> int:
    """|u v| without materializing the product."""
    a, b = u._ranks, v._ranks
    n = min(len(a), len(b))
    c = 0
    la = len(a)
    while c < n and a[la - 1 - c] == (b[c] ^ 1):
        c += 1
    return len(a) + len(b) - 2 * c


# -- cyclic structure -------------------------------------------------------


def cyclic_reduction(w: Word) -> tuple[Word, Word]:
    """Split ``w = conj * core * conj^-1`` with ``core`` cyclically reduced.

    Returns ``(core, conj)``.
    """
    ranks = w._ranks
    i, j = 0, len(ranks)
    while i < j - 1 and ranks[i] == (ranks[j - 1] ^ 1):
        i += 1
        j -= 1
    return Word._from_ranks(ranks[i:j]), Word._from_ranks(ranks[:i])


def is_cyclically_reduced(w: Word) -> bool:
    ranks = w._ranks
    return len(ranks) <= 1 or ranks[0] != (ranks[-1] ^ 1)


def rotations(w: Word) -> Iterator[Word]:
    """All cyclic rotations of a cyclically reduced word (each reduced)."""
    if not is_cyclically_reduced(w):
        raise ValidationError("rotations are only defined for cyclically reduced words")
    ranks = w._ranks
    if not ranks:
        yield w
        return
    for k in range(len(ranks)):
        yield Word._from_ranks(ranks[k:] + ranks[:k])


# -- ambient alphabet --------------------------------------------------------


@dataclass(frozen=True)
class Alphabet:
    """A symmetric generating alphabet of ``rank`` free generators."""

    rank: int

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 1:
            raise ValidationError(f"alphabet rank must be a positive integer, got {self.rank!r}")

    @property
    def alpha(self) -> int:
        """One less than the number of letters: 2*rank - 1."""
        return 2 * self.rank - 1

    @property
    def num_letters(self) -> int:
        return 2 * self.rank

    def letters(self) -> Iterator[Letter]:
        for r in range(self.num_letters):
            yield _letter_of_rank(r)

    def validate_word(self, w: Word) -> Word:
        if w.max_generator_index >= self.rank:
            raise ValidationError(
                f"word {w} uses generator index {w.max_generator_index}, "
                f"but the alphabet has rank {self.rank}"
            )
        return w


@dataclass(frozen=True)
class WordPair:
    """An ordered pair of reduced words, measured either additively
    (``l1_length``) or by the larger component (``max_length``)."""

    first: Word
    second: Word

    @property
    def l1_length(self) -> int:
        return len(self.first) + len(self.second)

    @property
    def max_length(self) -> int:
        return max(len(self.first), len(self.second))

    def __str__(self) -> str:
        return f"({self.first},{self.second})"
