"""Batch command-line front-end.

Subcommands: ``spheres``, ``density``, ``transfer``, ``kernel``,
``construct``, ``solve``.  Every invocation is deterministic given its flags
(including ``--seed``); outputs are CSV or plain listings suitable for
external plotting.  Any run whose estimated enumeration size exceeds the
guard (10^7 cells, overridable via the ``BANACH_FORGE_GUARD`` environment
variable) is refused without ``--force``.

Exit codes: 0 ok, 2 validation error, 3 certificate violation or exhausted
certificate search, 4 guard refusal.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import formats
from .density import (
    SetPredicate,
    WordSet,
    diagonal_set,
    empty_set,
    full_set,
    lower_banach_profile,
    plain_density_profile,
    power_ball_union,
    upper_banach_profile,
)
from .enumeration import (
    ball_size,
    ball_word_at,
    enumerate_ball,
    enumerate_pair_ball,
    pair_ball_size_l1,
    pair_ball_size_max,
    sphere_size,
)
from .errors import (
    CertificateViolationError,
    GuardRefusedError,
    RadiusExceededError,
    SearchExhaustedError,
    ToolkitError,
    ValidationError,
)
from .groups import GroupSpec, WPOracle, kernel_predicate, kernel_profile
from .solvers import (
    build_escaping_sequence,
    ep_from_wp,
    ep_on_square,
    total_wp_solver,
    ubgeneric_solvable_set,
    wp_from_ep,
)
from .transfer import transfer_profile
from .words import Alphabet, parse_word

DEFAULT_GUARD = 10_000_000

GROWTH_FUNCTIONS = {
    "pow2": lambda n: 2**n,
    "pow4": lambda n: 4**n,
    "squares": lambda n: (n + 1) ** 2,
}

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CERTIFICATE = 3
EXIT_GUARD = 4


def _guard_limit() -> int:
    raw = os.environ.get("BANACH_FORGE_GUARD")
    if raw is None:
        return DEFAULT_GUARD
    try:
        return int(raw)
    except ValueError as exc:
        raise ValidationError(f"BANACH_FORGE_GUARD must be an integer, got {raw!r}") from exc


def _check_guard(estimate: int, force: bool) -> None:
    limit = _guard_limit()
    if estimate > limit and not force:
        raise GuardRefusedError(
            f"estimated enumeration of {estimate} cells exceeds the guard ({limit}); "
            f"pass --force or raise BANACH_FORGE_GUARD to proceed"
        )


def _emit(text: str, out: "str | None") -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _alphabet_for(args) -> Alphabet:
    if getattr(args, "group", None):
        return GroupSpec.load(args.group).alphabet
    return Alphabet(args.rank)


# -- subcommands ---------------------------------------------------------------


def cmd_spheres(args) -> int:
    alphabet = Alphabet(args.rank)
    n_max = args.radius
    _check_guard(n_max + 1, args.force)
    lines = ["n,sphere,ball,pair_ball_l1,pair_ball_max"]
    for n in range(n_max + 1):
        lines.append(
            f"{n},{sphere_size(alphabet, n)},{ball_size(alphabet, n)},"
            f"{pair_ball_size_l1(alphabet, n)},{pair_ball_size_max(alphabet, n)}"
        )
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _resolve_set(args, alphabet: Alphabet):
    source = args.set
    if source.startswith("file:"):
        return formats.read_wordset(source[len("file:") :], reduce=args.reduce)
    if source == "kernel":
        if not args.group:
            raise ValidationError("--set kernel needs --group")
        return kernel_predicate(WPOracle(GroupSpec.load(args.group)))
    if source == "powerballs":
        base = parse_word(args.base, alphabet, reduce=args.reduce)
        growth = GROWTH_FUNCTIONS.get(args.growth)
        if growth is None:
            raise ValidationError(
                f"unknown growth {args.growth!r}; expected one of {sorted(GROWTH_FUNCTIONS)}"
            )
        return power_ball_union(alphabet, base, growth)
    if source == "diagonal":
        return diagonal_set(alphabet)
    if source == "all":
        return full_set()
    if source == "empty":
        return empty_set()
    raise ValidationError(
        f"unknown set source {source!r}; expected file:PATH, kernel, powerballs, diagonal, all or empty"
    )


def cmd_density(args) -> int:
    alphabet = _alphabet_for(args)
    s = _resolve_set(args, alphabet)
    n_max = args.radius
    window = ball_size(alphabet, args.search_radius) if args.search_radius is not None else 1
    members = len(s) if isinstance(s, WordSet) else 1
    _check_guard(ball_size(alphabet, n_max) * (members + window), args.force)
    if args.kind == "plain":
        profile = plain_density_profile(alphabet, s, n_max)
    elif args.kind == "upper":
        profile = upper_banach_profile(alphabet, s, n_max, search_radius=args.search_radius)
    else:
        profile = lower_banach_profile(alphabet, s, n_max, search_radius=args.search_radius)
    _emit(formats.profile_csv(profile), args.out)
    return EXIT_OK


def _materialized_set(args, alphabet: Alphabet, radius: int) -> WordSet:
    s = _resolve_set(args, alphabet)
    if isinstance(s, WordSet):
        return s
    if isinstance(s, SetPredicate):
        s.check_radius(radius)
        members = frozenset(w for w in enumerate_ball(alphabet, radius) if s.contains(w))
        return WordSet(members, radius, label=s.label)
    raise ValidationError("cannot materialize the requested set")


def cmd_transfer(args) -> int:
    alphabet = _alphabet_for(args)
    n_max = args.radius
    _check_guard(ball_size(alphabet, n_max) * (n_max + 2), args.force)
    s = _materialized_set(args, alphabet, n_max)
    profile = transfer_profile(alphabet, s, n_max)
    _emit(formats.transfer_csv(profile), args.out)
    return EXIT_OK


def cmd_kernel(args) -> int:
    spec = GroupSpec.load(args.group)
    oracle = WPOracle(spec)
    _check_guard(
        ball_size(oracle.alphabet, args.radius) + ball_size(oracle.alphabet, args.coset_window),
        args.force,
    )
    profile = kernel_profile(oracle, args.radius, args.coset_window)
    _emit(formats.kernel_csv(profile, spec), args.out)
    return EXIT_OK


def cmd_construct(args) -> int:
    spec = GroupSpec.load(args.group)
    oracle = WPOracle(spec)
    _check_guard(2 * ball_size(oracle.alphabet, args.radius + 1), args.force)
    seq = build_escaping_sequence(oracle, args.method, args.radius)
    lines = ["n,word,group_length"]
    for n in range(1, len(seq) + 1):
        lines.append(f"{n},{seq.word_at(n)},{seq.length_at(n)}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _solve_inputs(manifest, alphabet: Alphabet, rng: random.Random):
    if manifest.sample is not None:
        count, radius = manifest.sample
        size = ball_size(alphabet, radius)
        return [ball_word_at(alphabet, rng.randrange(size)) for _ in range(count)]
    return list(enumerate_ball(alphabet, manifest.radius))


def cmd_solve(args) -> int:
    manifest = formats.load_manifest(args.manifest)
    oracle = WPOracle(manifest.group)
    alphabet = oracle.alphabet
    rng = random.Random(args.seed)
    transcript = []

    pairs = manifest.recipe == "ep"
    if manifest.recipe == "oracle":
        solver = total_wp_solver(oracle)
    elif manifest.recipe == "roundtrip":
        solver = wp_from_ep(alphabet, ep_from_wp(total_wp_solver(oracle)), transcript=transcript)
    elif manifest.recipe == "ubgeneric-square":
        seq = build_escaping_sequence(oracle, "power", manifest.depth)
        member_set, _ = ubgeneric_solvable_set(alphabet, seq, manifest.depth, oracle)
        ep = ep_on_square(oracle, member_set.contains)
        solver = wp_from_ep(alphabet, ep, transcript=transcript)
    else:  # "ep"
        solver = ep_from_wp(total_wp_solver(oracle))

    if pairs:
        window = (
            pair_ball_size_l1(alphabet, manifest.radius)
            if manifest.length == "l1"
            else pair_ball_size_max(alphabet, manifest.radius)
        )
        _check_guard(window, args.force)
        inputs = list(enumerate_pair_ball(alphabet, manifest.radius, manifest.length))
        measure = (lambda p: p.l1_length) if manifest.length == "l1" else (lambda p: p.max_length)
        reference = lambda p: oracle.decide(p.first.inverse() * p.second)
    else:
        _check_guard(ball_size(alphabet, manifest.radius) * (manifest.budget + 1), args.force)
        inputs = _solve_inputs(manifest, alphabet, rng)
        measure = len
        reference = oracle.decide

    decided = 0
    agreed = 0
    per_radius: dict[int, int] = {}
    for x in inputs:
        verdict = solver.run(x, manifest.budget)
        if verdict is not None:
            decided += 1
            per_radius[measure(x)] = per_radius.get(measure(x), 0) + 1
            if verdict == reference(x):
                agreed += 1

    lines = [f"# manifest: group={manifest.group} recipe={manifest.recipe} "
             f"radius={manifest.radius} budget={manifest.budget} length={manifest.length}"]
    lines.append("round,lane,input,verdict")
    lines.extend(event.format() for event in transcript)
    if manifest.sample is None:
        # halting-density rows in the standard profile format
        if pairs:
            size = pair_ball_size_l1 if manifest.length == "l1" else pair_ball_size_max
            denominators = [size(alphabet, n) for n in range(manifest.radius + 1)]
        else:
            denominators = [ball_size(alphabet, n) for n in range(manifest.radius + 1)]
        lines.append("n,numerator,denominator,ratio_decimal,witness")
        running = 0
        for n in range(manifest.radius + 1):
            running += per_radius.get(n, 0)
            ratio = Fraction(running, denominators[n])
            lines.append(
                f"{n},{ratio.numerator},{ratio.denominator},{format(float(ratio), '.12g')},"
            )
    lines.append(f"decided: {decided}/{len(inputs)}")
    if decided:
        pct = Fraction(100 * agreed, decided)
        pct_text = str(pct.numerator) if pct.denominator == 1 else f"{pct.numerator}/{pct.denominator}"
    else:
        pct_text = "n/a"
    scope = f"B{manifest.radius}" if manifest.sample is None else f"{len(inputs)} sampled words"
    lines.append(f"agreement with oracle: {pct_text}% over {scope}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="banachforge",
        description="Exact sphere/ball counting, translate densities, pair transfer and partial-solver experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write output to this path instead of stdout")
        p.add_argument("--force", action="store_true", help="override the enumeration guard")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")

    p = sub.add_parser("spheres", help="exact sphere/ball/pair-ball counts")
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--radius", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_spheres)

    p = sub.add_parser("density", help="density profile of a word set")
    p.add_argument("--set", required=True,
                   help="file:PATH | kernel | powerballs | diagonal | all | empty")
    p.add_argument("--kind", choices=("plain", "upper", "lower"), default="plain")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--group", help="group spec path (required for --set kernel)")
    p.add_argument("--search-radius", type=int, default=None,
                   help="translate search window for upper/lower kinds on predicates")
    p.add_argument("--base", default="a", help="base word for powerballs")
    p.add_argument("--growth", default="pow4", help="exponent growth for powerballs")
    p.add_argument("--reduce", action="store_true",
                   help="freely reduce parsed words instead of rejecting them")
    common(p)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("transfer", help="word-set vs pair-preimage density columns")
    p.add_argument("--set", required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--group")
    p.add_argument("--base", default="a")
    p.add_argument("--growth", default="pow4")
    p.add_argument("--reduce", action="store_true",
                   help="freely reduce parsed words instead of rejecting them")
    common(p)
    p.set_defaults(func=cmd_transfer)

    p = sub.add_parser("kernel", help="per-coset kernel profile of a group")
    p.add_argument("--group", required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--coset-window", type=int, default=3)
    common(p)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("construct", help="escaping sequence with certified group lengths")
    p.add_argument("--group", required=True)
    p.add_argument("--method", choices=("power", "search"), default="power")
    p.add_argument("--radius", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("solve", help="run a solver experiment manifest")
    p.add_argument("manifest", help="path to a JSON experiment manifest")
    common(p)
    p.set_defaults(func=cmd_solve)

    return parser


def main(argv: "list[str] | None" = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except GuardRefusedError as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (CertificateViolationError, SearchExhaustedError) as exc:
        print(f"certificate: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATE
    except (ValidationError, RadiusExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
