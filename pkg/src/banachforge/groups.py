"""Concrete target groups with total word-problem oracles.

Four kinds are built in, chosen because each admits an obviously total and
fast decision procedure for triviality together with an exact group-length:

* ``free``          — trivial kernel; group length is word length;
* ``free_abelian``  — exponent-vector test; group length is the l1 norm;
* ``finite_cyclic`` — weighted exponent sum modulo the order;
* ``permutation``   — product of the generator permutations.

For the finite kinds the group length is read off a breadth-first table over
the (small) group, built eagerly at oracle construction; afterwards every
operation is a pure function and safe for concurrent use.

On top of the oracle the module profiles the kernel: per-coset counts
|kernel intersect w*S_n| (which depend only on the image of w, a fact the
test suite checks on random representative pairs), the maximum of the ball
ratio |kernel intersect w*B_n| / |B_n| over a coset window, and the Cesaro
bound (sum of per-sphere maxima) / (sum of sphere sizes) that dominates it.
For infinite targets the max-over-cosets ball ratio decays; for finite
targets it stays bounded away from zero — both visible at finite scale.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .density import SetPredicate
from .enumeration import ball_size, enumerate_ball, enumerate_sphere, sphere_size
from .errors import ValidationError
from .words import Alphabet, Word
from .transfer import word_difference

__all__ = [
    "CogrowthTable",
    "GroupSpec",
    "KernelProfile",
    "WPOracle",
    "cogrowth_estimate",
    "kernel_predicate",
    "kernel_profile",
    "kernel_sphere_count",
]

KINDS = ("free", "free_abelian", "finite_cyclic", "permutation")
_MAX_PERMUTATION_POINTS = 8  # 8! = 40320 group elements at most


@dataclass(frozen=True)
class GroupSpec:
    """Description of a target group as images of the free generators."""

    kind: str
    rank: int
    order: int | None = None
    images: tuple[int, ...] | None = None
    points: int | None = None
    generators: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown group kind {self.kind!r}; expected one of {KINDS}")
        if self.rank < 1:
            raise ValidationError("group spec needs rank >= 1")
        if self.kind == "finite_cyclic":
            if not self.order or self.order < 1:
                raise ValidationError("finite_cyclic needs a positive order")
            if self.images is None or len(self.images) != self.rank:
                raise ValidationError("finite_cyclic needs one image per generator")
        if self.kind == "permutation":
            if not self.points or self.points < 1:
                raise ValidationError("permutation needs a positive number of points")
            if self.points > _MAX_PERMUTATION_POINTS:
                raise ValidationError(
                    f"permutation specs are capped at {_MAX_PERMUTATION_POINTS} points"
                )
            if self.generators is None or len(self.generators) != self.rank:
                raise ValidationError("permutation needs one permutation per generator")
            for p in self.generators:
                if sorted(p) != list(range(self.points)):
                    raise ValidationError(f"{p!r} is not a permutation of 0..{self.points - 1}")

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(self.rank)

    @classmethod
    def from_dict(cls, data: dict) -> "GroupSpec":
        if not isinstance(data, dict) or "kind" not in data:
            raise ValidationError("group spec must be an object with a 'kind' field")
        kind = data["kind"]
        if kind in ("free", "free_abelian"):
            return cls(kind=kind, rank=int(data["rank"]))
        if kind == "finite_cyclic":
            images = tuple(int(x) for x in data["images"])
            return cls(kind=kind, rank=len(images), order=int(data["order"]), images=images)
        if kind == "permutation":
            generators = tuple(tuple(int(x) for x in p) for p in data["generators"])
            return cls(
                kind=kind,
                rank=len(generators),
                points=int(data["points"]),
                generators=generators,
            )
        raise ValidationError(f"unknown group kind {kind!r}")

    def to_dict(self) -> dict:
        if self.kind in ("free", "free_abelian"):
            return {"kind": self.kind, "rank": self.rank}
        if self.kind == "finite_cyclic":
            return {"kind": self.kind, "order": self.order, "images": list(self.images)}
        return {
            "kind": self.kind,
            "points": self.points,
            "generators": [list(p) for p in self.generators],
        }

    @classmethod
    def load(cls, path: "str | Path") -> "GroupSpec":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read group spec {path}: {exc}") from exc
        return cls.from_dict(data)

    def __str__(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def _perm_mul(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(p[x] for x in q)


def _perm_inverse(p: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


class WPOracle:
    """Total decision procedure for the kernel of a group spec, plus the
    exact group-length of the image of any word."""

    def __init__(self, spec: GroupSpec):
        self.spec = spec
        self.alphabet = spec.alphabet
        self._table: dict | None = None
        if spec.kind == "finite_cyclic":
            m = spec.order
            steps = {im % m for im in spec.images} | {(-im) % m for im in spec.images}
            self._identity = 0
            self._letter_image = {}
            for i, im in enumerate(spec.images):
                self._letter_image[2 * i] = im % m
                self._letter_image[2 * i + 1] = (-im) % m
            self._table = _bfs_lengths(0, steps, lambda g, s: (g + s) % m)
        elif spec.kind == "permutation":
            identity = tuple(range(spec.points))
            self._identity = identity
            self._letter_image = {}
            steps = set()
            for i, p in enumerate(spec.generators):
                inv = _perm_inverse(p)
                self._letter_image[2 * i] = p
                self._letter_image[2 * i + 1] = inv
                steps.add(p)
                steps.add(inv)
            self._table = _bfs_lengths(identity, steps, _perm_mul)

    # -- canonical image ----------------------------------------------------

    def image(self, w: Word):
        """A hashable canonical form of the image of ``w`` in the target."""
        self.alphabet.validate_word(w)
        kind = self.spec.kind
        if kind == "free":
            return w
        if kind == "free_abelian":
            vec = [0] * self.spec.rank
            for r in w._ranks:
                vec[r >> 1] += -1 if r & 1 else 1
            return tuple(vec)
        if kind == "finite_cyclic":
            total = 0
            for r in w._ranks:
                total += self._letter_image[r]
            return total % self.spec.order
        g = self._identity
        for r in w._ranks:
            g = _perm_mul(g, self._letter_image[r])
        return g

    def decide(self, w: Word) -> bool:
        """True iff ``w`` represents the identity of the target group."""
        self.alphabet.validate_word(w)
        kind = self.spec.kind
        if kind == "free":
            return w.is_identity
        if kind == "free_abelian":
            return all(x == 0 for x in self.image(w))
        return self.image(w) == self._identity

    def gamma_length(self, w: Word) -> int:
        """Least length of any word with the same image as ``w``."""
        self.alphabet.validate_word(w)
        kind = self.spec.kind
        if kind == "free":
            return len(w)
        if kind == "free_abelian":
            return sum(abs(x) for x in self.image(w))
        return self._table[self.image(w)]

    # -- finite-kind geometry -------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self._table is not None

    @property
    def group_order(self) -> int | None:
        return len(self._table) if self._table is not None else None

    @property
    def diameter(self) -> int | None:
        return max(self._table.values()) if self._table is not None else None


def _bfs_lengths(identity, steps, mul) -> dict:
    dist = {identity: 0}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in steps:
                h = mul(g, s)
                if h not in dist:
                    dist[h] = dist[g] + 1
                    nxt.append(h)
        frontier = nxt
    return dist


def kernel_predicate(oracle: WPOracle) -> SetPredicate:
    """The kernel as a totally valid set predicate."""
    return SetPredicate(
        contains=oracle.decide,
        validity_radius=None,
        label=f"kernel({oracle.spec})",
    )


def kernel_sphere_count(oracle: WPOracle, coset_rep: Word, n: int) -> int:
    """|kernel intersect coset_rep * S_n| by direct enumeration.

    Depends only on the image of ``coset_rep``.
    """
    if n < 0:
        raise ValidationError("radius must be >= 0")
    return sum(1 for u in enumerate_sphere(oracle.alphabet, n) if oracle.decide(coset_rep * u))


@dataclass(frozen=True)
class KernelProfile:
    """Per-coset kernel counts over a window of coset representatives."""

    reps: tuple[Word, ...]
    sphere_counts: tuple[tuple[int, ...], ...]  # indexed [rep][n]
    max_sphere_counts: tuple[int, ...]
    max_ball_ratios: tuple[Fraction, ...]  # max over reps of |ker ∩ wB_n| / |B_n|
    cesaro_bounds: tuple[Fraction, ...]  # (sum of sphere maxima) / (sum of sphere sizes)
    kernel_sphere_counts: tuple[int, ...]  # the trivial-coset row
    root_floors: tuple[int, ...]  # floor(kernel_sphere_counts[n] ** (1/n)), n >= 1

    @property
    def max_radius(self) -> int:
        return len(self.max_sphere_counts) - 1


def _int_nth_root(value: int, n: int) -> int:
    """floor(value ** (1/n)) exactly."""
    if value < 0 or n < 1:
        raise ValidationError("nth root needs value >= 0 and n >= 1")
    if value == 0:
        return 0
    r = max(1, int(round(value ** (1.0 / n))))
    while r**n > value:
        r -= 1
    while (r + 1) ** n <= value:
        r += 1
    return r


def coset_representatives(oracle: WPOracle, window: int) -> tuple[Word, ...]:
    """Shortlex-first representatives of the distinct images in B_window.

    Images are compared through the oracle itself: two words share an image
    iff their difference is trivial.
    """
    reps: list[Word] = []
    for w in enumerate_ball(oracle.alphabet, window):
        if not any(oracle.decide(word_difference(r, w)) for r in reps):
            reps.append(w)
    return tuple(reps)


def kernel_profile(oracle: WPOracle, n_max: int, coset_window: int = 3) -> KernelProfile:
    """Tabulate |kernel intersect w*S_n| per coset representative, n = 0..n_max."""
    if n_max < 0 or coset_window < 0:
        raise ValidationError("radii must be >= 0")
    alphabet = oracle.alphabet
    reps = coset_representatives(oracle, coset_window)

    # one enumeration pass, bucketed by (length, image)
    hist: list[dict] = [dict() for _ in range(n_max + 1)]
    for n in range(n_max + 1):
        bucket = hist[n]
        for u in enumerate_sphere(alphabet, n):
            img = oracle.image(u)
            bucket[img] = bucket.get(img, 0) + 1

    counts = []
    for rep in reps:
        # rep * u trivial  <=>  image(u) == image(rep^-1)
        target = oracle.image(rep.inverse())
        counts.append(tuple(hist[n].get(target, 0) for n in range(n_max + 1)))
    counts = tuple(counts)

    max_sphere = tuple(max(c[n] for c in counts) for n in range(n_max + 1))
    max_ball_ratios = []
    for n in range(n_max + 1):
        best = max(sum(c[: n + 1]) for c in counts)
        max_ball_ratios.append(Fraction(best, ball_size(alphabet, n)))
    cesaro = []
    num = den = 0
    for n in range(n_max + 1):
        num += max_sphere[n]
        den += sphere_size(alphabet, n)
        cesaro.append(Fraction(num, den))

    trivial = tuple(hist[n].get(oracle.image(Word()), 0) for n in range(n_max + 1))
    roots = tuple(
        trivial[n] if n == 0 else _int_nth_root(trivial[n], n) for n in range(n_max + 1)
    )
    return KernelProfile(
        reps=reps,
        sphere_counts=counts,
        max_sphere_counts=max_sphere,
        max_ball_ratios=tuple(max_ball_ratios),
        cesaro_bounds=tuple(cesaro),
        kernel_sphere_counts=trivial,
        root_floors=roots,
    )


@dataclass(frozen=True)
class CogrowthTable:
    """Exact bookkeeping for the growth rate of per-sphere kernel counts."""

    counts: tuple[int, ...]  # |kernel intersect rep * S_n|
    root_floors: tuple[int, ...]  # floor(counts[n] ** (1/n)), n >= 1
    trivial_kernel: bool  # all counts at n >= 1 are zero
    trial_gamma: Fraction | None
    count_over_gamma: tuple[Fraction, ...] | None  # counts[n] / gamma^n
    gamma_over_sphere: tuple[Fraction, ...] | None  # gamma^n / |S_n|


def cogrowth_estimate(
    oracle: WPOracle,
    n_max: int,
    trial_gamma: "Fraction | int | None" = None,
    coset_rep: Word | None = None,
) -> CogrowthTable:
    """Per-sphere kernel counts and their integer root floors (rank > 1).

    With a trial growth rate the two ratio columns counts/gamma^n and
    gamma^n/|S_n| are reported as exact rationals; their product is the
    kernel's share of the sphere.  No limit is asserted: a degenerate
    (trivial-kernel) table is flagged instead of extrapolated.
    """
    if oracle.alphabet.rank < 2:
        raise ValidationError("cogrowth bookkeeping requires rank > 1")
    if n_max < 0:
        raise ValidationError("radius must be >= 0")
    rep = coset_rep if coset_rep is not None else Word()
    counts = tuple(kernel_sphere_count(oracle, rep, n) for n in range(n_max + 1))
    roots = tuple(counts[n] if n == 0 else _int_nth_root(counts[n], n) for n in range(n_max + 1))
    trivial = all(c == 0 for c in counts[1:])
    over = under = None
    gamma = None
    if trial_gamma is not None:
        gamma = Fraction(trial_gamma)
        if gamma <= 0:
            raise ValidationError("trial growth rate must be positive")
        over = tuple(Fraction(counts[n]) / gamma**n for n in range(n_max + 1))
        under = tuple(gamma**n / sphere_size(oracle.alphabet, n) for n in range(n_max + 1))
    return CogrowthTable(
        counts=counts,
        root_floors=roots,
        trivial_kernel=trivial,
        trial_gamma=gamma,
        count_over_gamma=over,
        gamma_over_sphere=under,
    )
