"""File formats: word-set files, CSV emitters, and experiment manifests.

Word-set files hold one word per line in the text format, preceded by a
``# radius R`` header (and optionally ``# label ...``).  All CSV emitters
write exact numerator/denominator columns; any decimal column is display-only
and never used in checks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .density import DensityProfile, WordSet
from .errors import ValidationError
from .groups import GroupSpec, KernelProfile
from .transfer import TransferProfile
from .words import parse_word

__all__ = [
    "RunManifest",
    "dump_wordset",
    "kernel_csv",
    "load_manifest",
    "load_wordset",
    "profile_csv",
    "transfer_csv",
]


def dump_wordset(s: WordSet) -> str:
    lines = [f"# radius {s.support_radius}"]
    if s.label:
        lines.append(f"# label {s.label}")
    lines.extend(str(w) for w in s.sorted_members)
    return "\n".join(lines) + "\n"


def load_wordset(text: str, reduce: bool = False) -> WordSet:
    """Parse a word-set file; non-reduced lines are rejected unless ``reduce``."""
    radius = None
    label = ""
    words = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("radius"):
                try:
                    radius = int(body.split()[1])
                except (IndexError, ValueError) as exc:
                    raise ValidationError(f"bad radius header on line {lineno}: {raw!r}") from exc
            elif body.startswith("label"):
                label = body[len("label") :].strip()
            continue
        words.append(parse_word(line, reduce=reduce))
    if radius is None:
        raise ValidationError("word-set file must declare '# radius R' before any words")
    return WordSet(frozenset(words), radius, label)


def read_wordset(path: "str | Path", reduce: bool = False) -> WordSet:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read word set {path}: {exc}") from exc
    return load_wordset(text, reduce=reduce)


def _decimal(fraction) -> str:
    return format(float(fraction), ".12g")


def profile_csv(profile: DensityProfile) -> str:
    """CSV columns: n, numerator, denominator, ratio_decimal, witness."""
    lines = []
    uncertified = [n for n, c in enumerate(profile.certified) if not c]
    lines.append(f"# kind: {profile.kind}")
    if uncertified:
        bound_dir = "upper bounds on the true minimum" if profile.kind == "lower_banach" else "lower bounds on the true maximum"
        lines.append(f"# window bounds only ({bound_dir}) at n = {','.join(map(str, uncertified))}")
    lines.append("n,numerator,denominator,ratio_decimal,witness")
    for n, (ratio, witness) in enumerate(zip(profile.ratios, profile.witnesses)):
        wtext = "" if witness is None else str(witness)
        lines.append(f"{n},{ratio.numerator},{ratio.denominator},{_decimal(ratio)},{wtext}")
    return "\n".join(lines) + "\n"


def transfer_csv(profile: TransferProfile) -> str:
    """CSV columns: n, S_num, S_den, pre_num, pre_den, bound_num, bound_den."""
    lines = ["n,S_num,S_den,pre_num,pre_den,bound_num,bound_den"]
    for row in profile.rows:
        if row.lower_bound is None:
            bound = ","
        else:
            bound = f"{row.lower_bound.numerator},{row.lower_bound.denominator}"
        lines.append(
            f"{row.n},{row.set_count},{row.ball},{row.preimage_count},{row.pair_ball},{bound}"
        )
    return "\n".join(lines) + "\n"


def kernel_csv(profile: KernelProfile, spec: GroupSpec | None = None) -> str:
    """Per-radius kernel counts by coset representative, plus the summary
    columns: sphere maximum, ball-ratio maximum, its Cesaro bound, the
    trivial-coset count and its integer root floor."""
    lines = []
    if spec is not None:
        lines.append(f"# group {spec}")
    reps = " ".join(str(r) for r in profile.reps)
    lines.append(f"# coset reps: {reps}")
    head = [
        "n",
        "max_count",
        "ball_ratio_num",
        "ball_ratio_den",
        "cesaro_num",
        "cesaro_den",
        "kernel_count",
        "root_floor",
    ]
    head.extend(f"count[{r}]" for r in profile.reps)
    lines.append(",".join(head))
    for n in range(profile.max_radius + 1):
        row = [
            str(n),
            str(profile.max_sphere_counts[n]),
            str(profile.max_ball_ratios[n].numerator),
            str(profile.max_ball_ratios[n].denominator),
            str(profile.cesaro_bounds[n].numerator),
            str(profile.cesaro_bounds[n].denominator),
            str(profile.kernel_sphere_counts[n]),
            str(profile.root_floors[n]),
        ]
        row.extend(str(c[n]) for c in profile.sphere_counts)
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


RECIPES = ("oracle", "roundtrip", "ubgeneric-square", "ep")


@dataclass(frozen=True)
class RunManifest:
    """A reproducible solver experiment.

    ``recipe`` names the solver construction: ``oracle`` (the total word
    solver), ``roundtrip`` (word solver rebuilt by dovetailing the pair
    solver derived from the oracle), ``ubgeneric-square`` (pair solver
    restricted to S x S for the depth-``depth`` escaping union, then
    dovetailed back), or ``ep`` (the total pair solver, measured over pair
    balls of the chosen ``length`` flavor).  ``sample`` optionally replaces
    the exhaustive sweep by seeded random inputs: a (count, radius) pair.
    """

    group: GroupSpec
    recipe: str
    radius: int
    budget: int = 64
    length: str = "l1"
    depth: int = 4
    sample: tuple[int, int] | None = None

    def __post_init__(self):
        if self.recipe not in RECIPES:
            raise ValidationError(f"unknown recipe {self.recipe!r}; expected one of {RECIPES}")
        if self.radius < 0 or self.budget < 0 or self.depth < 1:
            raise ValidationError("manifest radii and budgets must be non-negative (depth >= 1)")
        if self.length not in ("l1", "max"):
            raise ValidationError("length flavor must be 'l1' or 'max'")


def load_manifest(data: "dict | str | Path") -> RunManifest:
    if not isinstance(data, dict):
        path = Path(data)
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read manifest {path}: {exc}") from exc
    group = data.get("group")
    if isinstance(group, str):
        spec = GroupSpec.load(group)
    elif isinstance(group, dict):
        spec = GroupSpec.from_dict(group)
    else:
        raise ValidationError("manifest needs a 'group' (inline spec or path)")
    sample = None
    if "sample" in data:
        s = data["sample"]
        try:
            sample = (int(s["count"]), int(s["radius"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError("manifest 'sample' needs integer 'count' and 'radius'") from exc
    return RunManifest(
        group=spec,
        recipe=data.get("recipe", "oracle"),
        radius=int(data.get("radius", 4)),
        budget=int(data.get("budget", 64)),
        length=data.get("length", "l1"),
        depth=int(data.get("depth", 4)),
        sample=sample,
    )
