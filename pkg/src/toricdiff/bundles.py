"""Toric divisors, virtual polyhedra and the polytope/divisor dictionary.

A toric divisor is the coefficient vector ``lambda`` over the rays of a fan.
A compatible polyhedron ``P`` gives the nef divisor with
``lambda_rho = -min <P, rho>``, so that ``P = {x : <x, rho> >= -lambda_rho}``.
A line bundle is represented by a :class:`VirtualPolyhedron`, a formal
difference of two compatible polyhedra with the same tail cone.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import ceil
from fractions import Fraction
from typing import Optional, Sequence

from .errors import NoAmpleGivenError, NotCartierError, NotCompatibleError
from .linalg import solve_unique
from .polyhedra import (
    Fan,
    LatticePolyhedron,
    compatibility_witness,
    dot,
    support_min,
    vertex_v_sigma,
    _coords,
)


@dataclass(frozen=True)
class ToricDivisor:
    """``sum lambda_rho D_rho`` with coefficients listed in the fan's ray order."""

    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))

    def __len__(self):
        return len(self.coefficients)

    def __getitem__(self, i):
        return self.coefficients[i]

    def __iter__(self):
        return iter(self.coefficients)

    def _check(self, other):
        if len(self) != len(other):
            raise ValueError("divisors live on fans with different numbers of rays")

    def __add__(self, other):
        self._check(other)
        return ToricDivisor(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        self._check(other)
        return ToricDivisor(a - b for a, b in zip(self, other))

    def __neg__(self):
        return ToricDivisor(-a for a in self)

    def __mul__(self, k: int):
        return ToricDivisor(k * a for a in self)

    __rmul__ = __mul__

    @classmethod
    def zero(cls, fan: Fan):
        return cls((0,) * len(fan.rays))

    def principal_shift(self, fan: Fan, m) -> "ToricDivisor":
        """``D + div(chi^m)``, which changes each coefficient by ``<m, rho>``."""
        m = _coords(m)
        return ToricDivisor(a + dot(m, r) for a, r in zip(self, fan.rays))


def canonical_divisor(fan: Fan) -> ToricDivisor:
    """``K = -sum D_rho``."""
    return ToricDivisor((-1,) * len(fan.rays))


def divisor_of_polyhedron(delta: LatticePolyhedron, fan: Fan) -> ToricDivisor:
    k = compatibility_witness(delta, fan)
    if k is not None:
        raise NotCompatibleError(f"polyhedron is not compatible with maximal cone {k}", fan.cone(k))
    return ToricDivisor(-support_min(delta, r) for r in fan.rays)


@dataclass(frozen=True)
class VirtualPolyhedron:
    """The line bundle ``O(plus - minus)`` on the toric variety of ``fan``."""

    plus: LatticePolyhedron
    minus: LatticePolyhedron
    fan: Fan

    def __post_init__(self):
        if self.plus.dim != self.fan.dim or self.minus.dim != self.fan.dim:
            raise ValueError("polyhedra and fan have different dimensions")
        if not self.plus.same_tail(self.minus):
            raise ValueError(f"tail cones differ: {self.plus.tail} vs {self.minus.tail}")
        for name, part in (("plus", self.plus), ("minus", self.minus)):
            k = compatibility_witness(part, self.fan)
            if k is not None:
                raise NotCompatibleError(
                    f"{name} part is not compatible with maximal cone {k}", self.fan.cone(k)
                )

    @property
    def dim(self) -> int:
        return self.fan.dim

    @property
    def tail(self) -> tuple:
        return self.plus.tail

    @cached_property
    def plus_vertices(self) -> tuple:
        return tuple(vertex_v_sigma(self.plus, self.fan.cone(k)) for k in range(len(self.fan.max_cones)))

    @cached_property
    def minus_vertices(self) -> tuple:
        return tuple(vertex_v_sigma(self.minus, self.fan.cone(k)) for k in range(len(self.fan.max_cones)))

    @cached_property
    def virtual_vertices(self) -> tuple:
        """``v_sigma^+ - v_sigma^-`` for every maximal cone."""
        return tuple(
            tuple(a - b for a, b in zip(p, q)) for p, q in zip(self.plus_vertices, self.minus_vertices)
        )

    def swapped(self) -> "VirtualPolyhedron":
        """The dual bundle ``O(minus - plus)``."""
        return VirtualPolyhedron(self.minus, self.plus, self.fan)

    def add_to_both(self, p: LatticePolyhedron) -> "VirtualPolyhedron":
        return VirtualPolyhedron(self.plus + p, self.minus + p, self.fan)


def divisor_of_virtual(bundle: VirtualPolyhedron) -> ToricDivisor:
    return divisor_of_polyhedron(bundle.plus, bundle.fan) - divisor_of_polyhedron(bundle.minus, bundle.fan)


def cartier_data(divisor: ToricDivisor, fan: Fan) -> tuple:
    """Local equations: for each maximal cone the ``v`` with ``<v, rho> = -lambda_rho`` on its rays."""
    if len(divisor) != len(fan.rays):
        raise ValueError("divisor and fan have different numbers of rays")
    out = []
    for k, cone in enumerate(fan.max_cones):
        ids = sorted(cone)
        try:
            sol = solve_unique([fan.rays[i] for i in ids], [-divisor[i] for i in ids])
        except ValueError:
            raise NotCartierError(f"maximal cone {k} is not full-dimensional", fan.cone(k)) from None
        if sol is None or any(x.denominator != 1 for x in sol):
            raise NotCartierError(f"no integral local equation on maximal cone {k}", fan.cone(k))
        out.append(tuple(int(x) for x in sol))
    return tuple(out)


def is_nef(divisor: ToricDivisor, fan: Fan) -> bool:
    """Cartier test on every maximal cone, then concavity of the support function."""
    local = cartier_data(divisor, fan)
    return all(
        dot(v, r) >= -lam for v in local for r, lam in zip(fan.rays, divisor)
    )


def polyhedron_of_divisor(divisor: ToricDivisor, fan: Fan, tail=()) -> LatticePolyhedron:
    """The polyhedron ``{x : <x, rho> >= -lambda_rho}`` of a nef divisor."""
    if not is_nef(divisor, fan):
        raise ValueError("divisor is not nef")
    return LatticePolyhedron(cartier_data(divisor, fan), tail)


def ample_multiplier(divisor: ToricDivisor, fan: Fan, ample: LatticePolyhedron) -> int:
    """Smallest ``N >= 0`` making ``divisor + N * ample`` nef."""
    a_div = divisor_of_polyhedron(ample, fan)
    a_loc = cartier_data(a_div, fan)
    d_loc = cartier_data(divisor, fan)
    bound = 0
    for k, cone in enumerate(fan.max_cones):
        for i, r in enumerate(fan.rays):
            if i in cone:
                continue
            slack = dot(a_loc[k], r) + a_div[i]
            if slack <= 0:
                raise NoAmpleGivenError(
                    f"polyhedron is not strictly concave across ray {i} and maximal cone {k}"
                )
            deficit = dot(d_loc[k], r) + divisor[i]
            if deficit < 0:
                bound = max(bound, ceil(Fraction(-deficit, slack)))
    for n in range(bound + 1):
        if is_nef(divisor + n * a_div, fan):
            return n
    raise AssertionError("nef cutoff bound was not attained")


def nef_decompose(divisor: ToricDivisor, fan: Fan, ample: Optional[LatticePolyhedron]) -> VirtualPolyhedron:
    """Write ``divisor`` as ``(divisor + N ample) - N ample`` with both parts nef."""
    if ample is None:
        raise NoAmpleGivenError("nef decomposition needs an ample polyhedron")
    n = ample_multiplier(divisor, fan, ample)
    a_div = divisor_of_polyhedron(ample, fan)
    plus = polyhedron_of_divisor(divisor + n * a_div, fan, ample.tail)
    return VirtualPolyhedron(plus, ample.dilate(n), fan)


def shift(bundle: VirtualPolyhedron, s) -> VirtualPolyhedron:
    """Translate the plus part by ``s``; cohomology degrees move by ``s``."""
    return VirtualPolyhedron(bundle.plus.translate(s), bundle.minus, bundle.fan)


def linearly_equivalent(d1: ToricDivisor, d2: ToricDivisor, fan: Fan) -> Optional[tuple]:
    """The ``m`` with ``d1 - d2 = div(chi^m)``, or None if the divisors are not equivalent."""
    diff = d1 - d2
    try:
        sol = solve_unique(fan.rays, list(diff))
    except ValueError:
        raise ValueError("rays of the fan do not span N_R") from None
    if sol is None or any(x.denominator != 1 for x in sol):
        return None
    return tuple(int(x) for x in sol)
