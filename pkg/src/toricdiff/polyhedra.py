"""Lattices, cones, fans and lattice polyhedra with a prescribed tail cone.

Vectors of the character lattice ``M`` and of the dual lattice ``N`` are
plain integer tuples inside the library; :class:`LatticeVector` tags them
with their lattice where the distinction matters to a caller.  A fan keeps a
global list of primitive rays and indexes its cones by sets of ray indices,
so intersections of cones are computed combinatorially.

Polyhedra are stored as ``conv(points) + cone(tail)`` with possibly
redundant points; every consumer goes through support minima, so no hull
computation is needed outside :func:`normal_fan`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.optimize import linprog

from .errors import FanError, NotCompatibleError, UnboundedBelowError
from .linalg import RationalMatrix, determinant, rank

M = "M"
N = "N"


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def primitive(v: Sequence[int]) -> tuple:
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        raise ValueError("the zero vector has no primitive generator")
    return tuple(int(x) // g for x in v)


def int_rank(vectors: Iterable[Sequence]) -> int:
    rows = [list(v) for v in vectors]
    if not rows:
        return 0
    return rank(RationalMatrix.from_rows(rows))


def normal_vector(vectors: Sequence[Sequence[int]], d: int) -> tuple:
    """Generalized cross product of ``d - 1`` integer vectors in ``Z^d``.

    The result is orthogonal to every input and is zero iff the inputs are
    linearly dependent.
    """
    if len(vectors) != d - 1:
        raise ValueError(f"need {d - 1} vectors in dimension {d}")
    if d == 1:
        return (1,)
    out = []
    for i in range(d):
        minor = [[v[j] for j in range(d) if j != i] for v in vectors]
        out.append((-1) ** i * determinant(minor))
    return tuple(out)


@dataclass(frozen=True)
class LatticeVector:
    """Integer vector tagged with the lattice (``"M"`` or ``"N"``) it lives in."""

    coords: tuple
    space: str

    def __post_init__(self):
        if self.space not in (M, N):
            raise ValueError(f"space must be 'M' or 'N', not {self.space!r}")
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)


def pairing(m: LatticeVector, n: LatticeVector) -> int:
    """The perfect pairing ``M x N -> Z``."""
    if not isinstance(m, LatticeVector) or not isinstance(n, LatticeVector):
        raise TypeError("pairing takes two LatticeVector arguments")
    if m.space == n.space:
        raise TypeError(f"cannot pair two vectors of {m.space}")
    if m.space == N:
        m, n = n, m
    if len(m) != len(n):
        raise ValueError(f"length mismatch: {len(m)} vs {len(n)}")
    return dot(m.coords, n.coords)


def _coords(v):
    return v.coords if isinstance(v, LatticeVector) else tuple(v)


# ---------------------------------------------------------------------------
# LP helpers.  Only the fan validator uses floating point; every other
# decision in the package is exact.

_LP_EPS = 1e-9


def _strict_solution_exists(zero_rows, pos_rows, dim, neg_rows=()):
    """Is there ``m`` with ``z.m = 0``, ``p.m > 0`` and ``q.m < 0`` for the given rows?"""
    pos_rows = [list(r) for r in pos_rows] + [[-x for x in r] for r in neg_rows]
    if not pos_rows:
        return True
    # variables (m_1..m_dim, t); maximize t subject to p.m >= t
    c = np.zeros(dim + 1)
    c[-1] = -1.0
    a_ub = np.array([[-x for x in r] + [1.0] for r in pos_rows], dtype=float)
    b_ub = np.zeros(len(pos_rows))
    a_eq = b_eq = None
    if zero_rows:
        a_eq = np.array([list(r) + [0.0] for r in zero_rows], dtype=float)
        b_eq = np.zeros(len(zero_rows))
    bounds = [(-1.0, 1.0)] * dim + [(None, 1.0)]
    res = linprog(c, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq, bounds=bounds, method="highs")
    return res.status == 0 and -res.fun > _LP_EPS


def cone_contains(generators: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Membership of ``v`` in the cone spanned by ``generators``."""
    if not any(v):
        return True
    if not generators:
        return False
    a_eq = np.array(generators, dtype=float).T
    res = linprog(
        np.zeros(len(generators)),
        A_eq=a_eq,
        b_eq=np.array(v, dtype=float),
        bounds=[(0, None)] * len(generators),
        method="highs",
    )
    return res.status == 0


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cone:
    """Cone spanned by primitive rays in ``N``.

    ``indices`` records the ray indices inside an ambient fan, if any.
    """

    rays: tuple
    indices: Optional[frozenset] = None

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))
        if self.indices is not None:
            object.__setattr__(self, "indices", frozenset(self.indices))

    @property
    def dim(self) -> int:
        return int_rank(self.rays)

    def is_full_dimensional(self, d: int) -> bool:
        return self.dim == d

    def is_pointed(self) -> bool:
        if not self.rays:
            return True
        for r, s in itertools.combinations(self.rays, 2):
            if int_rank([r, s]) < 2 and dot(r, s) < 0:
                return False
        return _strict_solution_exists([], self.rays, len(self.rays[0]))


def dual_contains(sigma: Cone, m) -> bool:
    """``m`` lies in the dual cone of ``sigma``."""
    m = _coords(m)
    return all(dot(m, r) >= 0 for r in sigma.rays)


def _facets_of(ray_ids: frozenset, rays: Sequence[tuple], d: int) -> list:
    """Facets of the full-dimensional cone on ``ray_ids`` as (ray set, inner normal)."""
    ids = sorted(ray_ids)
    found = {}
    for sub in itertools.combinations(ids, d - 1):
        n = normal_vector([rays[i] for i in sub], d)
        if not any(n):
            continue
        vals = [dot(n, rays[i]) for i in ids]
        if all(v >= 0 for v in vals):
            pass
        elif all(v <= 0 for v in vals):
            n = tuple(-x for x in n)
        else:
            continue
        face = frozenset(i for i in ids if dot(n, rays[i]) == 0)
        if face not in found:
            found[face] = primitive(n)
    return sorted(found.items(), key=lambda kv: sorted(kv[0]))


def _faces_of(ray_ids: frozenset, rays: Sequence[tuple], d: int) -> set:
    # every proper face of a full-dimensional cone is an intersection of facets
    facets = [f for f, _ in _facets_of(ray_ids, rays, d)]
    faces = {frozenset(ray_ids)}
    frontier = set(facets)
    faces |= frontier
    while frontier:
        new = set()
        for f in frontier:
            for g in facets:
                h = f & g
                if h not in faces:
                    new.add(h)
        faces |= new
        frontier = new
    faces.add(frozenset())
    return faces


def _face_key(face):
    return (len(face), sorted(face))


@dataclass(frozen=True)
class Fan:
    """A fan given by its primitive rays and the ray-index sets of its maximal cones."""

    rays: tuple
    max_cones: tuple

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        if not rays:
            raise FanError("a fan needs at least one ray")
        d = len(rays[0])
        if any(len(r) != d for r in rays):
            raise FanError("rays have different lengths")
        cones = tuple(frozenset(int(i) for i in c) for c in self.max_cones)
        for k, c in enumerate(cones):
            if not c:
                raise FanError(f"maximal cone {k} is empty")
            if any(i < 0 or i >= len(rays) for i in c):
                raise FanError(f"maximal cone {k} refers to a ray index out of range")
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)

    @property
    def dim(self) -> int:
        return len(self.rays[0])

    def cone(self, k: int) -> Cone:
        """The ``k``-th maximal cone."""
        return self.cone_from_indices(self.max_cones[k])

    def cone_from_indices(self, ids) -> Cone:
        ids = frozenset(ids)
        return Cone(tuple(self.rays[i] for i in sorted(ids)), ids)

    def locate(self, sigma: Cone) -> frozenset:
        """Ray-index set of ``sigma`` inside this fan."""
        if sigma.indices is not None:
            ids = sigma.indices
        else:
            lookup = {r: i for i, r in enumerate(self.rays)}
            try:
                ids = frozenset(lookup[r] for r in sigma.rays)
            except KeyError as exc:
                raise FanError(f"ray {exc.args[0]} is not a ray of the fan") from None
        if ids not in self.face_set:
            raise FanError(f"cone with rays {sorted(ids)} is not a cone of the fan")
        return ids

    @cached_property
    def faces(self) -> tuple:
        """All cones of the fan as ray-index sets, smallest first."""
        out = set()
        for c in self.max_cones:
            if int_rank(self.rays[i] for i in c) == self.dim:
                out |= _faces_of(c, self.rays, self.dim)
            else:
                # lower-dimensional maximal cones only arise in invalid input
                out |= {frozenset(s) for k in range(len(c) + 1) for s in itertools.combinations(c, k)}
        return tuple(sorted(out, key=_face_key))

    @cached_property
    def face_set(self) -> frozenset:
        return frozenset(self.faces)

    def containing_max_cone(self, ids) -> int:
        """Least index of a maximal cone containing the cone ``ids``."""
        ids = frozenset(ids)
        for k, c in enumerate(self.max_cones):
            if ids <= c:
                return k
        raise FanError(f"no maximal cone contains rays {sorted(ids)}")

    def is_simplicial(self) -> bool:
        return all(int_rank(self.rays[i] for i in c) == len(c) for c in self.max_cones)

    def is_smooth(self) -> bool:
        if not self.is_simplicial():
            return False
        for c in self.max_cones:
            if len(c) == self.dim:
                if abs(determinant([self.rays[i] for i in sorted(c)])) != 1:
                    return False
            else:
                return False
        return True

    def same_as(self, other: "Fan") -> bool:
        """Equality up to relabelling of rays and cones."""
        if set(self.rays) != set(other.rays):
            return False
        mine = {frozenset(self.rays[i] for i in c) for c in self.max_cones}
        theirs = {frozenset(other.rays[i] for i in c) for c in other.max_cones}
        return mine == theirs

    def permuted(self, ray_order: Sequence[int], cone_order: Sequence[int]) -> "Fan":
        """Relabel rays (new ray ``k`` is old ray ``ray_order[k]``) and reorder cones."""
        new_index = {old: new for new, old in enumerate(ray_order)}
        return Fan(
            tuple(self.rays[i] for i in ray_order),
            tuple(frozenset(new_index[i] for i in self.max_cones[k]) for k in cone_order),
        )


def intersect_cones(sigma: Cone, tau: Cone, fan: Fan) -> Cone:
    """Intersection of two cones of ``fan``, generated by their shared rays."""
    a = fan.locate(sigma)
    b = fan.locate(tau)
    return fan.cone_from_indices(a & b)


@dataclass(frozen=True)
class Violation:
    axiom: str
    cones: tuple
    detail: str

    def __str__(self):
        return f"[{self.axiom}] cones {list(self.cones)}: {self.detail}"


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def axioms(self) -> set:
        return {v.axiom for v in self.violations}

    def __str__(self):
        if self.ok:
            lines = ["fan is valid"]
        else:
            lines = [str(v) for v in self.violations]
        return "\n".join(lines + [f"note: {n}" for n in self.notes])


def validate_fan(fan: Fan, tail_rays: Sequence[Sequence[int]] = ()) -> ValidationReport:
    """Check the fan axioms and that the support is the dual of the tail cone.

    ``tail_rays`` generate the tail cone in ``M``; the empty list stands for
    the zero cone, whose dual is all of ``N_R``.
    """
    report = ValidationReport()
    d = fan.dim
    tail = [tuple(t) for t in tail_rays]
    add = report.violations.append

    for i, r in enumerate(fan.rays):
        if not any(r):
            add(Violation("ray", (), f"ray {i} is zero"))
        elif primitive(r) != r:
            add(Violation("ray", (), f"ray {i} = {r} is not primitive"))
    if len(set(fan.rays)) != len(fan.rays):
        add(Violation("ray", (), "repeated rays"))

    for k, c in enumerate(fan.max_cones):
        cone = fan.cone(k)
        if not cone.is_pointed():
            add(Violation("pointed", (k,), f"cone {k} contains a line"))
        if cone.dim != d:
            add(Violation("full-dimensional", (k,), f"cone {k} has dimension {cone.dim} < {d}"))

    if report.violations:
        return report

    for i, j in itertools.combinations(range(len(fan.max_cones)), 2):
        a, b = fan.max_cones[i], fan.max_cones[j]
        shared = a & b
        ok = _strict_solution_exists(
            [fan.rays[r] for r in shared],
            [fan.rays[r] for r in a - shared],
            d,
            neg_rows=[fan.rays[r] for r in b - shared],
        )
        if not ok:
            add(Violation("face", (i, j), "intersection is not the common face spanned by the shared rays"))

    for k, c in enumerate(fan.max_cones):
        for r in c:
            for t in tail:
                if dot(t, fan.rays[r]) < 0:
                    add(Violation("support", (k,), f"ray {fan.rays[r]} lies outside the dual of the tail cone"))

    owners = {}
    for k, c in enumerate(fan.max_cones):
        for facet, _ in _facets_of(c, fan.rays, d):
            owners.setdefault(facet, []).append(k)
    for facet, ks in sorted(owners.items(), key=lambda kv: sorted(kv[0])):
        on_boundary = any(all(dot(t, fan.rays[r]) == 0 for r in facet) for t in tail if any(t))
        expected = 1 if on_boundary else 2
        if len(ks) != expected:
            where = "on the boundary of" if on_boundary else "in the interior of"
            add(
                Violation(
                    "completeness",
                    tuple(ks),
                    f"facet with rays {sorted(facet)} {where} the support lies in "
                    f"{len(ks)} maximal cone(s), expected {expected}",
                )
            )
    report.notes.append("support equality checked by facet counting (pure full-dimensional fans)")
    return report


# ---------------------------------------------------------------------------


def _normalize_tail(tail) -> tuple:
    out = set()
    for t in tail:
        t = tuple(int(x) for x in t)
        if not any(t):
            continue
        out.add(primitive(t))
    return tuple(sorted(out))


@dataclass(frozen=True)
class LatticePolyhedron:
    """``conv(points) + cone(tail)`` for lattice points ``points`` in ``M``."""

    points: tuple
    tail: tuple = ()

    def __post_init__(self):
        pts = tuple(sorted({tuple(int(x) for x in p) for p in self.points}))
        if not pts:
            raise ValueError("a polyhedron needs at least one point")
        d = len(pts[0])
        if any(len(p) != d for p in pts):
            raise ValueError("points have different lengths")
        tail = _normalize_tail(self.tail)
        if any(len(t) != d for t in tail):
            raise ValueError("tail rays do not match the dimension of the points")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "tail", tail)

    @classmethod
    def neutral(cls, d: int, tail=()) -> "LatticePolyhedron":
        """The tail cone itself, i.e. the neutral element for Minkowski addition."""
        return cls(((0,) * d,), tail)

    @property
    def dim(self) -> int:
        return len(self.points[0])

    @property
    def is_compact(self) -> bool:
        return not self.tail

    def same_tail(self, other: "LatticePolyhedron") -> bool:
        if self.tail == other.tail:
            return True
        return all(cone_contains(other.tail, t) for t in self.tail) and all(
            cone_contains(self.tail, t) for t in other.tail
        )

    def translate(self, s) -> "LatticePolyhedron":
        s = _coords(s)
        return LatticePolyhedron(tuple(tuple(a + b for a, b in zip(p, s)) for p in self.points), self.tail)

    def dilate(self, k: int) -> "LatticePolyhedron":
        """``k``-fold Minkowski sum of the polyhedron with itself (``k >= 0``)."""
        if k < 0:
            raise ValueError("dilation factor must be non-negative")
        if k == 0:
            return LatticePolyhedron.neutral(self.dim, self.tail)
        return LatticePolyhedron(tuple(tuple(k * x for x in p) for p in self.points), self.tail)

    def __add__(self, other: "LatticePolyhedron") -> "LatticePolyhedron":
        return minkowski_sum(self, other)

    def support_min(self, n) -> int:
        return support_min(self, n)

    def contains(self, x, rays: Sequence[Sequence[int]]) -> bool:
        """Membership test through the half-spaces normal to ``rays``.

        Exact whenever ``rays`` contains the facet normals, e.g. the rays of
        a compatible fan.
        """
        return all(dot(x, r) >= support_min(self, r) for r in rays)

    def lattice_points(self) -> list:
        """All lattice points of a compact polyhedron (brute force over its box)."""
        if self.tail:
            raise ValueError("an unbounded polyhedron has infinitely many lattice points")
        lo = [min(p[i] for p in self.points) for i in range(self.dim)]
        hi = [max(p[i] for p in self.points) for i in range(self.dim)]
        box = itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))
        if int_rank(_affine_directions(self)) == self.dim:
            facets = _facet_normals(self)
            return [x for x in box if self.contains(x, facets)]
        homog = [tuple(p) + (1,) for p in self.points]
        return [x for x in box if cone_contains(homog, tuple(x) + (1,))]


def support_min(delta: LatticePolyhedron, n) -> int:
    """``min <delta, n>``; raises when the tail cone makes it unbounded."""
    n = _coords(n)
    for t in delta.tail:
        if dot(t, n) < 0:
            raise UnboundedBelowError(f"tail ray {t} pairs negatively with {n}")
    return min(dot(p, n) for p in delta.points)


def minkowski_sum(a: LatticePolyhedron, b: LatticePolyhedron) -> LatticePolyhedron:
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    if not a.same_tail(b):
        raise ValueError(f"tail cones differ: {a.tail} vs {b.tail}")
    pts = tuple(tuple(x + y for x, y in zip(p, q)) for p in a.points for q in b.points)
    return LatticePolyhedron(pts, a.tail)


def vertex_v_sigma(delta: LatticePolyhedron, sigma: Cone, fan: Optional[Fan] = None) -> tuple:
    """The vertex of ``delta`` realizing its support function on ``sigma``.

    For a cone that is not full-dimensional the vertex of the least-index
    maximal cone of ``fan`` containing it is returned.
    """
    d = delta.dim
    if sigma.dim != d:
        if fan is None:
            raise ValueError("a fan is needed to pick a vertex for a lower-dimensional cone")
        k = fan.containing_max_cone(fan.locate(sigma))
        return vertex_v_sigma(delta, fan.cone(k))
    mins = [support_min(delta, r) for r in sigma.rays]
    for p in delta.points:
        if all(dot(p, r) == h for r, h in zip(sigma.rays, mins)):
            return p
    raise NotCompatibleError(f"support function is not linear on the cone with rays {list(sigma.rays)}", sigma)


def compatibility_witness(delta: LatticePolyhedron, fan: Fan) -> Optional[int]:
    """Index of a maximal cone on which ``delta`` fails to be compatible, else None."""
    for k in range(len(fan.max_cones)):
        try:
            vertex_v_sigma(delta, fan.cone(k))
        except (NotCompatibleError, UnboundedBelowError, ValueError):
            return k
    return None


def is_compatible(delta: LatticePolyhedron, fan: Fan) -> bool:
    return compatibility_witness(delta, fan) is None


def _affine_directions(delta: LatticePolyhedron):
    p0 = delta.points[0]
    return [tuple(a - b for a, b in zip(p, p0)) for p in delta.points[1:]] + list(delta.tail)


def _facet_normals(delta: LatticePolyhedron) -> list:
    """Primitive inner facet normals of a full-dimensional polyhedron."""
    d = delta.dim
    # facets need not pass through points[0], so use every pairwise difference
    diffs = {primitive(tuple(a - b for a, b in zip(p, q))) for p, q in itertools.combinations(delta.points, 2)}
    dirs = sorted(diffs | set(delta.tail))
    normals = set()
    tried = set()
    for sub in itertools.combinations(dirs, d - 1):
        n = normal_vector(list(sub), d)
        if not any(n):
            continue
        n = primitive(n)
        for cand in (n, tuple(-x for x in n)):
            if cand in tried:
                continue
            tried.add(cand)
            if any(dot(t, cand) < 0 for t in delta.tail):
                continue
            h = min(dot(p, cand) for p in delta.points)
            face_pts = [p for p in delta.points if dot(p, cand) == h]
            face_dirs = [tuple(a - b for a, b in zip(p, face_pts[0])) for p in face_pts[1:]]
            face_dirs += [t for t in delta.tail if dot(t, cand) == 0]
            if int_rank(face_dirs) == d - 1:
                normals.add(cand)
    return sorted(normals)


def normal_fan(delta: LatticePolyhedron) -> Fan:
    """The normal fan of a full-dimensional polyhedron in dimension at most 3."""
    d = delta.dim
    if d > 3:
        raise NotImplementedError("normal fans are only computed in dimension <= 3")
    if int_rank(_affine_directions(delta)) != d:
        raise ValueError("polyhedron is not full-dimensional")
    normals = _facet_normals(delta)
    mins = [support_min(delta, n) for n in normals]
    cones = []
    for p in delta.points:
        incident = frozenset(i for i, (n, h) in enumerate(zip(normals, mins)) if dot(p, n) == h)
        if int_rank(normals[i] for i in incident) == d and incident not in cones:
            cones.append(incident)
    cones.sort(key=lambda c: sorted(c))
    return Fan(tuple(normals), tuple(cones))
