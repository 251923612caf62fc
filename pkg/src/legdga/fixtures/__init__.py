"""Built-in diagrams and move certificates shipped with the package.

Knot fixtures come in both orientations: ``name`` is the stored curve and
``name:reversed`` (or ``reverse=True``) traverses it backwards.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from ..diagram import PlaneCurve, parse_curve, reverse_orientation

KNOTS = ("unknot-fig4", "trefoil-fig5", "fig8-fig5")
REVERSED_SUFFIX = ":reversed"

DESCRIPTIONS = {
    "unknot-fig4": "unknot, tb=-2 r=1, crossings a, b",
    "trefoil-fig5": "trefoil, tb=-6 r=1, crossings a1..a6",
    "fig8-fig5": "figure eight, tb=-3 r=0, crossings a1..a7",
    "moveI-before": "move I, triangle on one side of the crossing",
    "moveI-after": "move I, triangle on the other side",
    "moveII-before": "move II, middle strand left of the crossing",
    "moveII-after": "move II, middle strand right of the crossing",
    "moveIII-before": "move III, finger with two extra crossings",
    "moveIII-after": "move III, finger retracted",
    "moveI-pair": "certificate for move I",
    "moveII-pair": "certificate for move II",
    "moveIII-pair": "certificate for move III",
}


def _root():
    return resources.files(__name__)


def names() -> list[str]:
    """File names of every embedded fixture, sorted."""
    return sorted(
        p.name for p in _root().iterdir() if p.name.endswith((".json", ".cert"))
    )


def path(name: str) -> Path:
    """Filesystem path of an embedded fixture; the extension may be omitted."""
    root = _root()
    for candidate in (name, name + ".json", name + ".cert"):
        entry = root / candidate
        if entry.is_file():
            return Path(str(entry))
    raise KeyError(f"no built-in fixture named {name!r}")


def resolve_name(spec: str) -> tuple[str, bool] | None:
    """Split ``[fixtures/]name[.json][:reversed]`` into (name, reversed), or None."""
    reverse = spec.endswith(REVERSED_SUFFIX)
    if reverse:
        spec = spec[: -len(REVERSED_SUFFIX)]
    if spec.startswith("fixtures/"):
        spec = spec[len("fixtures/"):]
    if spec.endswith(".json"):
        spec = spec[:-5]
    try:
        path(spec + ".json")
    except KeyError:
        return None
    return spec, reverse


def load(name: str, reverse: bool = False) -> PlaneCurve:
    found = resolve_name(name)
    if found is None:
        raise KeyError(f"no built-in diagram named {name!r}")
    base, rev = found
    curve = parse_curve(path(base + ".json").read_text(encoding="utf-8"))
    return reverse_orientation(curve) if (rev or reverse) else curve
