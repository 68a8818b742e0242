"""Static SVG pictures of ``minus`` and ``plus - m`` in a rank-2 lattice.

The output depends only on the inputs: coordinates are exact rationals
printed with a fixed number of decimals and the style sheet is constant.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .bundles import VirtualPolyhedron
from .cohomology import DegreeBox, cohomology_at, h0_containment
from .polyhedra import LatticePolyhedron

SCALE = 40
PAD = 30
LEGEND = 60

STYLE = """
.grid { stroke: #d8d8d8; stroke-width: 1; }
.axis { stroke: #909090; stroke-width: 1.5; }
.lattice { fill: #a0a0a0; }
.difference { fill: #f4b183; stroke: #c55a11; stroke-width: 2; }
.covered { fill: #bdd7ee; stroke: #2e75b6; stroke-width: 2; }
.shifted { fill: none; stroke: #2e75b6; stroke-width: 2; stroke-dasharray: 6 3; }
.inside { fill: #c55a11; }
.legend { font-family: monospace; font-size: 12px; fill: #000000; }
""".strip()


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> list:
    """Counter-clockwise hull; degenerate inputs give one or two points."""
    pts = sorted(set((Fraction(x), Fraction(y)) for x, y in points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return hull if len(hull) >= 2 else pts[:1]


def _hull_contains(hull, p) -> bool:
    if len(hull) == 1:
        return hull[0] == p
    if len(hull) == 2:
        a, b = hull
        if _cross(a, b, p) != 0:
            return False
        return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    return all(_cross(hull[i], hull[(i + 1) % len(hull)], p) >= 0 for i in range(len(hull)))


def _edges(hull):
    if len(hull) < 2:
        return []
    if len(hull) == 2:
        return [tuple(hull)]
    return [(hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull))]


def _segment_points(a, b, c, d):
    r = (b[0] - a[0], b[1] - a[1])
    s = (d[0] - c[0], d[1] - c[1])
    den = r[0] * s[1] - r[1] * s[0]
    if den == 0:
        return []
    t = ((c[0] - a[0]) * s[1] - (c[1] - a[1]) * s[0]) / den
    u = ((c[0] - a[0]) * r[1] - (c[1] - a[1]) * r[0]) / den
    if 0 <= t <= 1 and 0 <= u <= 1:
        return [(a[0] + t * r[0], a[1] + t * r[1])]
    return []


def intersect_hulls(h1, h2) -> list:
    """Exact intersection of two convex hulls (possibly degenerate)."""
    cands = [p for p in h1 if _hull_contains(h2, p)] + [p for p in h2 if _hull_contains(h1, p)]
    for a, b in _edges(h1):
        for c, d in _edges(h2):
            cands += _segment_points(a, b, c, d)
    return convex_hull(cands) if cands else []


def _truncated(poly: LatticePolyhedron, shift, reach: int):
    pts = [tuple(a + b for a, b in zip(p, shift)) for p in poly.points]
    extra = [tuple(p[i] + reach * t[i] for i in range(2)) for p in pts for t in poly.tail]
    return convex_hull(pts + extra)


def _fmt(x) -> str:
    return f"{float(x):.3f}".rstrip("0").rstrip(".")


def render_svg(
    bundle: VirtualPolyhedron,
    m: Sequence[int],
    box: Optional[DegreeBox] = None,
    dims: Optional[Sequence[int]] = None,
) -> str:
    """Draw ``minus`` with ``minus \\ (plus - m)`` highlighted.

    The viewport is the bounding box of the generators of both shapes
    (and of ``box`` if given), enlarged by one lattice unit.
    """
    if bundle.dim != 2:
        raise ValueError("rendering needs a rank-2 lattice")
    m = tuple(int(x) for x in m)
    neg_m = tuple(-x for x in m)
    shifted_pts = [tuple(a - b for a, b in zip(p, m)) for p in bundle.plus.points]
    gens = list(bundle.minus.points) + shifted_pts
    if box is not None:
        gens += [box.lo, box.hi]
    lo = [min(p[i] for p in gens) - 1 for i in range(2)]
    hi = [max(p[i] for p in gens) + 1 for i in range(2)]
    if bundle.tail:
        # unbounded shapes are cut off at the viewport; extend it so tails show
        hi = [h + 2 for h in hi]
    span = max(hi[0] - lo[0], hi[1] - lo[1])
    reach = 4 * span + 4
    view = convex_hull([(lo[0], lo[1]), (hi[0], lo[1]), (hi[0], hi[1]), (lo[0], hi[1])])

    minus_h = intersect_hulls(_truncated(bundle.minus, (0, 0), reach), view)
    plus_h = intersect_hulls(_truncated(bundle.plus, neg_m, reach), view)
    covered = intersect_hulls(minus_h, plus_h)

    width = (hi[0] - lo[0]) * SCALE + 2 * PAD
    height = (hi[1] - lo[1]) * SCALE + 2 * PAD + LEGEND

    def px(p):
        return (_fmt((p[0] - lo[0]) * SCALE + PAD), _fmt((hi[1] - p[1]) * SCALE + PAD))

    def shape(hull, cls):
        if not hull:
            return None
        if len(hull) == 1:
            x, y = px(hull[0])
            return f'<circle class="{cls}" cx="{x}" cy="{y}" r="5"/>'
        pts = " ".join(",".join(px(p)) for p in hull)
        tag = "polyline" if len(hull) == 2 else "polygon"
        return f'<{tag} class="{cls}" points="{pts}"/>'

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f"<style>\n{STYLE}\n</style>",
    ]
    for x in range(lo[0], hi[0] + 1):
        a, b = px((x, lo[1])), px((x, hi[1]))
        cls = "axis" if x == 0 else "grid"
        out.append(f'<line class="{cls}" x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}"/>')
    for y in range(lo[1], hi[1] + 1):
        a, b = px((lo[0], y)), px((hi[0], y))
        cls = "axis" if y == 0 else "grid"
        out.append(f'<line class="{cls}" x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}"/>')

    for item in (shape(minus_h, "difference"), shape(covered, "covered"), shape(plus_h, "shifted")):
        if item:
            out.append(item)

    for x in range(lo[0], hi[0] + 1):
        for y in range(lo[1], hi[1] + 1):
            p = (Fraction(x), Fraction(y))
            cx, cy = px(p)
            in_diff = _hull_contains(minus_h, p) and not _hull_contains(plus_h, p) if minus_h else False
            cls = "inside" if in_diff else "lattice"
            out.append(f'<circle class="{cls}" cx="{cx}" cy="{cy}" r="2.5"/>')

    if dims is None:
        dims = cohomology_at(bundle, m)
    base = (hi[1] - lo[1]) * SCALE + 2 * PAD
    lines = [f"degree m = {m}", f"h = {list(dims)}"]
    if h0_containment(bundle, m):
        lines.append("difference empty: H0 contribution")
    for k, text in enumerate(lines):
        out.append(f'<text class="legend" x="{PAD}" y="{base + 16 * (k + 1)}">{text}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
