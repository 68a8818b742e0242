"""Degree-wise cohomology of toric line bundles.

For a bundle ``O(plus - minus)`` and a degree ``m`` the Cech complex over an
affine cover ``{U_sigma}`` has, in each coordinate, either ``k`` or ``0``
depending on whether ``v_sigma^- - v_sigma^+ + m`` lies in the dual cone of
the intersection cone.  Its cohomology equals the reduced cohomology of
``minus \\ (plus - m)`` shifted by one.

Two independent checks are provided: the classical simplicial-complex
formula over the rays (:func:`classical_cohomology`) and a direct
containment test for global sections (:func:`h0_containment`).
:func:`good_cover_report` samples the geometric side of the argument.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from .bundles import ToricDivisor, VirtualPolyhedron
from .errors import NonSimplicialFanError, SamplingExhaustedError, ToricError, UnboundedBoxError
from .linalg import CochainComplex, RationalMatrix, cohomology_dims
from .polyhedra import Cone, Fan, LatticePolyhedron, _coords, dot, support_min

MAXIMAL_CONES = "max"
ALL_CONES = "all"

DEFAULT_SAMPLES = 64


@dataclass(frozen=True)
class DegreeBox:
    """Inclusive integer box ``lo <= m <= hi`` in ``M``."""

    lo: tuple
    hi: tuple

    def __post_init__(self):
        lo = tuple(int(x) for x in self.lo)
        hi = tuple(int(x) for x in self.hi)
        if len(lo) != len(hi):
            raise ValueError("box bounds have different lengths")
        if any(a > b for a, b in zip(lo, hi)):
            raise ValueError(f"empty box: {lo} > {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def cube(cls, d: int, lo: int, hi: int) -> "DegreeBox":
        return cls((lo,) * d, (hi,) * d)

    def __iter__(self):
        return itertools.product(*(range(a, b + 1) for a, b in zip(self.lo, self.hi)))

    def __contains__(self, m) -> bool:
        return all(a <= x <= b for a, x, b in zip(self.lo, m, self.hi))

    def __len__(self):
        n = 1
        for a, b in zip(self.lo, self.hi):
            n *= b - a + 1
        return n

    def inflate(self, k: int) -> "DegreeBox":
        return DegreeBox(tuple(a - k for a in self.lo), tuple(b + k for b in self.hi))

    def translate(self, s) -> "DegreeBox":
        return DegreeBox(tuple(a + x for a, x in zip(self.lo, s)), tuple(b + x for b, x in zip(self.hi, s)))


def cover_cones(fan: Fan, cover: str = MAXIMAL_CONES) -> tuple:
    """Cones (ray-index sets) of the affine cover, in their fixed order."""
    if cover == MAXIMAL_CONES:
        return fan.max_cones
    if cover == ALL_CONES:
        return fan.faces
    raise ValueError(f"unknown cover {cover!r}")


def _cone_ids(fan: Fan, tau) -> frozenset:
    if isinstance(tau, Cone):
        return fan.locate(tau)
    return frozenset(tau)


def local_sections_nonzero(bundle: VirtualPolyhedron, tau, m) -> bool:
    """Does ``H^0(U_tau, L)`` have a non-zero component in degree ``m``?"""
    fan = bundle.fan
    ids = _cone_ids(fan, tau)
    k = fan.containing_max_cone(ids)
    m = _coords(m)
    w = tuple(b - a + x for a, b, x in zip(bundle.plus_vertices[k], bundle.minus_vertices[k], m))
    return all(dot(w, fan.rays[i]) >= 0 for i in ids)


@lru_cache(maxsize=None)
def _nerve(cones: tuple) -> tuple:
    """All non-empty index subsets of the cover by size, with their intersection cones."""
    levels = []
    for size in range(1, len(cones) + 1):
        level = []
        for sub in itertools.combinations(range(len(cones)), size):
            inter = frozenset.intersection(*(cones[i] for i in sub))
            level.append((sub, inter))
        levels.append(tuple(level))
    return tuple(levels)


def _build_complex(cones: tuple, present: frozenset) -> CochainComplex:
    levels = _nerve(cones)
    coords = [[sub for sub, inter in level if inter in present] for level in levels]
    while coords and not coords[-1]:
        coords.pop()
    if not coords:
        return CochainComplex((0,))
    index = [{sub: i for i, sub in enumerate(level)} for level in coords]
    boundaries = []
    for p in range(len(coords) - 1):
        entries = {}
        for r, sub in enumerate(coords[p + 1]):
            for k in range(len(sub)):
                face = sub[:k] + sub[k + 1:]
                c = index[p].get(face)
                if c is not None:
                    entries[r, c] = -1 if k % 2 else 1
        boundaries.append(RationalMatrix.from_entries(len(coords[p + 1]), len(coords[p]), entries))
    return CochainComplex(tuple(len(c) for c in coords), tuple(boundaries))


@lru_cache(maxsize=4096)
def _cech_dims(cones: tuple, present: frozenset, prime: Optional[int]) -> tuple:
    return tuple(cohomology_dims(_build_complex(cones, present), prime))


def _present_cones(bundle: VirtualPolyhedron, cones: tuple, m) -> frozenset:
    inters = {inter for level in _nerve(cones) for _, inter in level}
    return frozenset(t for t in inters if local_sections_nonzero(bundle, t, m))


def _ordered(cones: tuple, order: Optional[Sequence[int]]) -> tuple:
    if order is None:
        return tuple(cones)
    if sorted(order) != list(range(len(cones))):
        raise ValueError("order must be a permutation of the cover indices")
    return tuple(cones[i] for i in order)


def cech_complex(
    bundle: VirtualPolyhedron, m, cover: str = MAXIMAL_CONES, order: Optional[Sequence[int]] = None
) -> CochainComplex:
    """The degree-``m`` part of the Cech complex of ``bundle``.

    ``order`` permutes the cover before the alternating signs are fixed.
    """
    cones = _ordered(cover_cones(bundle.fan, cover), order)
    return _build_complex(cones, _present_cones(bundle, cones, m))


def _fit(dims: Sequence[int], d: int) -> list:
    dims = list(dims)
    if any(dims[d + 1:]):
        raise ToricError(f"cohomology above the dimension {d}: {dims}")
    return (dims + [0] * (d + 1))[: d + 1]


def cohomology_at(
    bundle: VirtualPolyhedron,
    m,
    cover: str = MAXIMAL_CONES,
    prime: Optional[int] = None,
    order: Optional[Sequence[int]] = None,
) -> list:
    """``[dim H^0(L)(m), ..., dim H^d(L)(m)]``."""
    cones = _ordered(cover_cones(bundle.fan, cover), order)
    present = _present_cones(bundle, cones, m)
    return _fit(_cech_dims(cones, present, prime), bundle.dim)


def default_degree_box(bundle: VirtualPolyhedron) -> Optional[DegreeBox]:
    """Box of ``plus - minus`` vertex differences, or None for unbounded polyhedra.

    Outside this box ``plus - m`` misses ``minus``, so ``minus \\ (plus - m)``
    is all of ``minus`` and every group vanishes.
    """
    if bundle.tail:
        return None
    diffs = [tuple(a - b for a, b in zip(p, q)) for p in bundle.plus.points for q in bundle.minus.points]
    d = bundle.dim
    return DegreeBox(tuple(min(v[i] for v in diffs) for i in range(d)), tuple(max(v[i] for v in diffs) for i in range(d)))


@dataclass(frozen=True)
class CohomologyTable:
    """Non-zero rows ``m -> (h^0, ..., h^d)`` of a bundle over a degree box."""

    entries: dict
    box: DegreeBox
    bundle: Optional[VirtualPolyhedron] = None

    def __post_init__(self):
        clean = {}
        for m, dims in self.entries.items():
            m = tuple(int(x) for x in m)
            dims = tuple(int(x) for x in dims)
            if m not in self.box:
                raise ValueError(f"degree {m} lies outside the box")
            if any(dims):
                clean[m] = dims
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def __getitem__(self, m):
        m = tuple(m)
        if m not in self.box:
            raise KeyError(f"degree {m} outside the table's box")
        return self.entries.get(m, (0,) * (len(self.box.lo) + 1))

    def __len__(self):
        return len(self.entries)

    def rows(self) -> list:
        return list(self.entries.items())

    def totals(self) -> list:
        d = len(self.box.lo)
        return [sum(dims[i] for dims in self.entries.values()) for i in range(d + 1)]

    def support(self, i: int) -> list:
        """Degrees where ``H^i`` is non-zero."""
        return [m for m, dims in self.entries.items() if dims[i]]

    def to_tsv(self) -> str:
        d = len(self.box.lo)
        header = [f"m_{k + 1}" for k in range(d)] + [f"h{k}" for k in range(d + 1)]
        lines = ["\t".join(header)]
        for m, dims in self.entries.items():
            lines.append("\t".join(str(x) for x in m + dims))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "box": {"lo": list(self.box.lo), "hi": list(self.box.hi)},
            "rows": [{"m": list(m), "h": list(dims)} for m, dims in self.entries.items()],
        }
        if self.bundle is not None:
            b = self.bundle
            doc["bundle"] = {
                "fan": {"rays": [list(r) for r in b.fan.rays], "max_cones": [sorted(c) for c in b.fan.max_cones]},
                "tail_rays": [list(t) for t in b.tail],
                "plus": [list(p) for p in b.plus.points],
                "minus": [list(p) for p in b.minus.points],
            }
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "CohomologyTable":
        doc = json.loads(text)
        box = DegreeBox(tuple(doc["box"]["lo"]), tuple(doc["box"]["hi"]))
        bundle = None
        if "bundle" in doc:
            b = doc["bundle"]
            fan = Fan(tuple(map(tuple, b["fan"]["rays"])), tuple(b["fan"]["max_cones"]))
            tail = tuple(map(tuple, b["tail_rays"]))
            bundle = VirtualPolyhedron(
                LatticePolyhedron(tuple(map(tuple, b["plus"])), tail),
                LatticePolyhedron(tuple(map(tuple, b["minus"])), tail),
                fan,
            )
        return cls({tuple(r["m"]): tuple(r["h"]) for r in doc["rows"]}, box, bundle)


def cohomology_table(
    bundle: VirtualPolyhedron,
    box: Optional[DegreeBox] = None,
    cover: str = MAXIMAL_CONES,
    prime: Optional[int] = None,
) -> CohomologyTable:
    if box is None:
        box = default_degree_box(bundle)
        if box is None:
            raise UnboundedBoxError("the tail cone is non-trivial; pass an explicit degree box")
    entries = {}
    for m in box:
        dims = cohomology_at(bundle, m, cover, prime)
        if any(dims):
            entries[m] = tuple(dims)
    return CohomologyTable(entries, box, bundle)


# ---------------------------------------------------------------------------
# Oracles


def classical_cohomology(divisor: ToricDivisor, fan: Fan, m, prime: Optional[int] = None) -> list:
    """Cohomology of ``O(D)`` in degree ``m`` from the simplicial complex of
    rays with ``<m, rho> < -lambda_rho``, spanned inside the maximal cones.
    """
    if not fan.is_simplicial():
        raise NonSimplicialFanError("the classical formula is only modelled for simplicial fans")
    m = _coords(m)
    bad = {i for i, (r, lam) in enumerate(zip(fan.rays, divisor)) if dot(m, r) < -lam}
    simplices = set()
    for cone in fan.max_cones:
        verts = sorted(cone & bad)
        for k in range(len(verts) + 1):
            simplices.update(itertools.combinations(verts, k))
    by_size = {}
    for s in simplices:
        by_size.setdefault(len(s), []).append(s)
    top = max(by_size)
    # index p of the augmented complex holds simplices with p vertices,
    # so its p-th cohomology is reduced H^{p-1}
    levels = [sorted(by_size.get(p, [])) for p in range(top + 1)]
    boundaries = []
    for p in range(top):
        index = {s: i for i, s in enumerate(levels[p])}
        entries = {}
        for r, s in enumerate(levels[p + 1]):
            for k in range(len(s)):
                entries[r, index[s[:k] + s[k + 1:]]] = -1 if k % 2 else 1
        boundaries.append(RationalMatrix.from_entries(len(levels[p + 1]), len(levels[p]), entries))
    dims = cohomology_dims(CochainComplex(tuple(len(l) for l in levels), tuple(boundaries)), prime)
    return _fit(dims, fan.dim)


def h0_containment(bundle: VirtualPolyhedron, m) -> int:
    """1 if ``minus + m`` is contained in ``plus``, else 0."""
    m = _coords(m)
    fan = bundle.fan
    floors = [support_min(bundle.plus, r) for r in fan.rays]
    for q in bundle.minus.points:
        x = tuple(a + b for a, b in zip(q, m))
        if any(dot(x, r) < h for r, h in zip(fan.rays, floors)):
            return 0
    return 1


# ---------------------------------------------------------------------------
# Good-cover verification.  Sampled points are kept as integer numerators
# over a common positive denominator so all tests stay exact.


@dataclass
class ConeCheck:
    cone: frozenset
    algebraic_empty: bool
    geometric_empty: bool
    samples_in: int = 0
    star_checks: int = 0
    star_failures: int = 0

    @property
    def agree(self) -> bool:
        return self.algebraic_empty == self.geometric_empty


@dataclass
class GoodCoverReport:
    degree: tuple
    seed: int
    samples_requested: int
    difference_empty: bool
    cones: list = field(default_factory=list)
    samples: int = 0
    uncovered: list = field(default_factory=list)
    sampled_in_empty: list = field(default_factory=list)

    @property
    def flags_agree(self) -> bool:
        return all(c.agree for c in self.cones)

    @property
    def union_ok(self) -> bool:
        return not self.uncovered and not self.sampled_in_empty

    @property
    def star_ok(self) -> bool:
        return all(c.star_failures == 0 for c in self.cones)

    @property
    def ok(self) -> bool:
        return self.flags_agree and self.union_ok and self.star_ok

    def summary(self) -> str:
        bad = [sorted(c.cone) for c in self.cones if not c.agree]
        return (
            f"m={self.degree} seed={self.seed} samples={self.samples} "
            f"flag disagreements={bad} uncovered={len(self.uncovered)} "
            f"star failures={sum(c.star_failures for c in self.cones)}"
        )


def good_cover_report(
    bundle: VirtualPolyhedron,
    m,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    cover: str = ALL_CONES,
    max_attempts: Optional[int] = None,
) -> GoodCoverReport:
    """Check the covering of ``minus \\ (plus - m)`` by the sets
    ``S(sigma) = minus \\ (v_sigma^+ - m + sigma^dual)``.

    For every cone the algebraic emptiness test is compared with a direct
    test on the generators of ``minus``.  Random rational points of the
    difference are then checked to lie in some ``S(sigma)``, and the segment
    from ``v_sigma^-`` to each sampled point of ``S(sigma)`` is checked to stay
    inside ``S(sigma)``.
    """
    m = _coords(m)
    fan = bundle.fan
    rays = fan.rays
    minus = bundle.minus
    cones = cover_cones(fan, cover)
    # every membership test below only needs the pairings <x, rho>
    plus_floor = [support_min(bundle.plus, r) - dot(m, r) for r in rays]
    minus_floor = [support_min(minus, r) for r in rays]

    def pairings(x):
        return [dot(x, r) for r in rays]

    def in_shifted_plus(xr, den):
        return all(v >= den * h for v, h in zip(xr, plus_floor))

    def in_minus(xr, den):
        return all(v >= den * h for v, h in zip(xr, minus_floor))

    walls = []
    minus_apex = []
    for ids in cones:
        k = fan.containing_max_cone(ids)
        vp = bundle.plus_vertices[k]
        walls.append(tuple((i, dot(vp, rays[i]) - dot(m, rays[i])) for i in sorted(ids)))
        minus_apex.append(pairings(bundle.minus_vertices[k]))

    def in_s(j, xr, den):
        return any(xr[i] < den * t for i, t in walls[j])

    minus_pairs = [pairings(q) for q in minus.points]
    bad_points = [q for q, qr in zip(minus.points, minus_pairs) if not in_shifted_plus(qr, 1)]
    report = GoodCoverReport(tuple(m), seed, samples, difference_empty=not bad_points)
    for j, ids in enumerate(cones):
        algebraic = local_sections_nonzero(bundle, ids, m)
        geometric = not any(in_s(j, qr, 1) for qr in minus_pairs)
        report.cones.append(ConeCheck(ids, algebraic, geometric))

    if not bad_points or samples <= 0:
        return report

    rng = random.Random(seed)
    q_den = 1 << 12
    pts = minus.points
    tail = minus.tail
    attempts = 0
    limit = max_attempts if max_attempts is not None else 200 * samples
    d = bundle.dim
    while report.samples < samples:
        if attempts >= limit:
            if report.samples == 0:
                raise SamplingExhaustedError(f"no point of the difference found in {attempts} draws")
            break
        attempts += 1
        b = rng.choice(bad_points)
        weights = [rng.randint(0, q_den) for _ in pts]
        w_sum = sum(weights) or 1
        tail_w = [rng.randint(0, 3 * q_den) for _ in tail]
        d1 = w_sum * q_den
        y = [q_den * sum(w * p[c] for w, p in zip(weights, pts)) + w_sum * sum(u * t[c] for u, t in zip(tail_w, tail)) for c in range(d)]
        a = rng.randrange(q_den)
        den = q_den * d1
        x = tuple(b[c] * den + a * (y[c] - b[c] * d1) for c in range(d))
        xr = pairings(x)
        if in_shifted_plus(xr, den):
            continue
        report.samples += 1
        hits = [j for j in range(len(cones)) if in_s(j, xr, den)]
        if not hits:
            report.uncovered.append((x, den))
        for j in hits:
            check = report.cones[j]
            check.samples_in += 1
            if check.geometric_empty or check.algebraic_empty:
                report.sampled_in_empty.append((sorted(cones[j]), x, den))
            vm = minus_apex[j]
            for num, dd in ((1, 2), (1, 4), (3, 4)):
                # point vm + (num/dd) (x/den - vm), paired with every ray
                pd = dd * den
                zr = [dd * v * den + num * (w - v * den) for v, w in zip(vm, xr)]
                check.star_checks += 1
                if not (in_s(j, zr, pd) and in_minus(zr, pd)):
                    check.star_failures += 1
    return report
