"""JSON problem files.

A problem file describes one fan, the tail cone shared by all polyhedra,
and named bundles given as ``plus``/``minus`` vertex lists::

    {
      "fan": {"rays": [[0, 1], [1, 0], [0, -1], [-1, 1]],
              "max_cones": [[0, 1], [1, 2], [2, 3], [3, 0]]},
      "tail_rays": [],
      "bundles": {"A": {"plus": [[0, 0], [1, 0]], "minus": [[0, 0]]}},
      "degree_box": {"lo": [-3, -3], "hi": [3, 3]},
      "ample": "A+B",
      "options": {"field": "q", "cover": "max", "oracle": "none", "seed": 0}
    }

``ample`` names a bundle whose plus part is used as the ample polyhedron.
The order of ``rays`` fixes the order of divisor coefficients everywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .bundles import VirtualPolyhedron
from .cohomology import ALL_CONES, MAXIMAL_CONES, DegreeBox
from .errors import FanError, ToricError
from .polyhedra import Fan, LatticePolyhedron

ORACLES = ("classical", "h0", "all", "none")


class ProblemError(ToricError):
    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


def parse_field(text) -> Optional[int]:
    """``"q"`` -> None (rationals), ``"fp:<prime>"`` -> the prime."""
    if text is None or str(text).lower() in ("q", "qq", "rational"):
        return None
    text = str(text).lower()
    if text.startswith("fp:"):
        p = int(text[3:])
        if p < 2 or any(p % k == 0 for k in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not a prime")
        return p
    raise ValueError(f"unknown field {text!r}; use 'q' or 'fp:<prime>'")


def parse_box(text: str) -> DegreeBox:
    """``"lo1,lo2:hi1,hi2"`` -> DegreeBox."""
    try:
        lo, hi = text.split(":")
        return DegreeBox(tuple(int(x) for x in lo.split(",")), tuple(int(x) for x in hi.split(",")))
    except ValueError as exc:
        raise ValueError(f"bad box {text!r} (expected lo1,lo2:hi1,hi2): {exc}") from None


def parse_vector(text: str) -> tuple:
    return tuple(int(x) for x in text.split(","))


@dataclass
class Problem:
    fan: Fan
    tail: tuple
    bundles: dict
    degree_box: Optional[DegreeBox] = None
    ample: Optional[str] = None
    options: dict = field(default_factory=dict)

    def parts(self, name: str) -> tuple:
        try:
            return self.bundles[name]
        except KeyError:
            raise ProblemError(f"bundles.{name}", "no such bundle") from None

    def bundle(self, name: str) -> VirtualPolyhedron:
        plus, minus = self.parts(name)
        return VirtualPolyhedron(plus, minus, self.fan)

    def ample_polyhedron(self) -> Optional[LatticePolyhedron]:
        if self.ample is None:
            return None
        return self.parts(self.ample)[0]

    @property
    def prime(self) -> Optional[int]:
        return parse_field(self.options.get("field"))


def _vectors(value, location, d=None):
    if not isinstance(value, list):
        raise ProblemError(location, "expected a list of integer vectors")
    out = []
    for i, v in enumerate(value):
        if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
            raise ProblemError(f"{location}[{i}]", "expected a list of integers")
        if d is not None and len(v) != d:
            raise ProblemError(f"{location}[{i}]", f"expected length {d}, got {len(v)}")
        out.append(tuple(v))
    return tuple(out)


def problem_from_dict(doc: dict) -> Problem:
    if not isinstance(doc, dict):
        raise ProblemError("$", "top level must be an object")
    if "fan" not in doc:
        raise ProblemError("fan", "missing")
    rays = _vectors(doc["fan"].get("rays"), "fan.rays")
    if not rays:
        raise ProblemError("fan.rays", "empty")
    d = len(rays[0])
    rays = _vectors(doc["fan"]["rays"], "fan.rays", d)
    cones = doc["fan"].get("max_cones")
    if not isinstance(cones, list) or not cones:
        raise ProblemError("fan.max_cones", "expected a non-empty list of ray-index lists")
    try:
        fan = Fan(rays, tuple(tuple(c) for c in cones))
    except (FanError, TypeError) as exc:
        raise ProblemError("fan.max_cones", str(exc)) from None
    tail = _vectors(doc.get("tail_rays", []), "tail_rays", d)
    if any(not any(t) for t in tail):
        raise ProblemError("tail_rays", "zero vector")

    bundles = {}
    raw = doc.get("bundles", {})
    if not isinstance(raw, dict):
        raise ProblemError("bundles", "expected an object")
    for name, spec in raw.items():
        loc = f"bundles.{name}"
        if not isinstance(spec, dict):
            raise ProblemError(loc, "expected an object with 'plus' and 'minus'")
        parts = []
        for side in ("plus", "minus"):
            pts = spec.get(side, [[0] * d])
            pts = _vectors(pts, f"{loc}.{side}", d)
            if not pts:
                raise ProblemError(f"{loc}.{side}", "needs at least one point")
            side_tail = tail
            if f"{side}_tail" in spec:
                side_tail = _vectors(spec[f"{side}_tail"], f"{loc}.{side}_tail", d)
            parts.append(LatticePolyhedron(pts, side_tail))
        bundles[name] = tuple(parts)

    box = None
    if doc.get("degree_box") is not None:
        b = doc["degree_box"]
        try:
            box = DegreeBox(tuple(b["lo"]), tuple(b["hi"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ProblemError("degree_box", str(exc)) from None
        if len(box.lo) != d:
            raise ProblemError("degree_box", f"expected bounds of length {d}")

    ample = doc.get("ample")
    if ample is not None and ample not in bundles:
        raise ProblemError("ample", f"no bundle named {ample!r}")

    options = dict(doc.get("options", {}))
    try:
        parse_field(options.get("field"))
    except ValueError as exc:
        raise ProblemError("options.field", str(exc)) from None
    if options.get("cover", MAXIMAL_CONES) not in (MAXIMAL_CONES, ALL_CONES):
        raise ProblemError("options.cover", "expected 'max' or 'all'")
    if options.get("oracle", "none") not in ORACLES:
        raise ProblemError("options.oracle", f"expected one of {ORACLES}")
    return Problem(fan, tail, bundles, box, ample, options)


def load_problem(path) -> Problem:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ProblemError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
    return problem_from_dict(doc)
