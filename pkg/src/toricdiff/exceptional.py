"""Checking exceptional sequences of nef toric line bundles.

``Ext^i(O(P), O(Q)) = H^i(O(Q - P))``, so every check reduces to a
cohomology table of a virtual polyhedron.

Two directions are supported.  ``FORWARD_CONVENTION`` demands
``Ext^*(L_i, L_j) = 0`` for ``j > i``; ``REVERSE_CONVENTION`` demands
``Ext^*(L_j, L_i) = 0`` for ``j > i``, which is the usual convention for
exceptional sequences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .bundles import VirtualPolyhedron
from .cohomology import CohomologyTable, DegreeBox, MAXIMAL_CONES, cohomology_table
from .errors import NotCompatibleError
from .polyhedra import Fan, LatticePolyhedron, compatibility_witness

FORWARD_CONVENTION = "forward"
REVERSE_CONVENTION = "reverse"


def ext_table(p: LatticePolyhedron, q: LatticePolyhedron, fan: Fan, box: Optional[DegreeBox] = None, cover=MAXIMAL_CONES) -> CohomologyTable:
    """Degree-wise ``Ext^*(O(p), O(q))``."""
    return cohomology_table(VirtualPolyhedron(q, p, fan), box, cover)


def ext_dims(p: LatticePolyhedron, q: LatticePolyhedron, fan: Fan, box: Optional[DegreeBox] = None) -> list:
    """Total dimensions of ``Ext^i(O(p), O(q))`` for ``i = 0..d``."""
    return ext_table(p, q, fan, box).totals()


@dataclass(frozen=True)
class NefSequence:
    polytopes: tuple
    fan: Fan

    def __post_init__(self):
        object.__setattr__(self, "polytopes", tuple(self.polytopes))
        for k, p in enumerate(self.polytopes):
            if p.tail:
                raise ValueError(f"entry {k} is unbounded; exceptional sequences need a complete fan")
            w = compatibility_witness(p, self.fan)
            if w is not None:
                raise NotCompatibleError(f"entry {k} is not compatible with maximal cone {w}", self.fan.cone(w))

    def __len__(self):
        return len(self.polytopes)


@dataclass(frozen=True)
class ExtViolation:
    """A non-zero ``Ext^degree(L_source, L_target)`` in character ``m``."""

    source: int
    target: int
    degree: int
    m: tuple
    dim: int

    def __str__(self):
        return f"Ext^{self.degree}(L_{self.source}, L_{self.target}) has dimension {self.dim} in degree {self.m}"


@dataclass
class ExceptionalReport:
    direction: str
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def pairs(self) -> set:
        return {(v.source, v.target) for v in self.violations}

    def __str__(self):
        if self.ok:
            return f"exceptional ({self.direction} convention)"
        return "\n".join(["not exceptional:"] + [f"  {v}" for v in self.violations])


def _violations(src, tgt, table, expected):
    out = []
    for m, dims in table.rows():
        for i, h in enumerate(dims):
            if h:
                out.append(ExtViolation(src, tgt, i, m, h))
    totals = table.totals()
    if totals == expected:
        return []
    return out


def is_exceptional_sequence(
    seq: NefSequence,
    direction: str = REVERSE_CONVENTION,
    box: Optional[DegreeBox] = None,
) -> ExceptionalReport:
    """Check self-Ext and one-directional Ext vanishing for every pair."""
    if direction not in (FORWARD_CONVENTION, REVERSE_CONVENTION):
        raise ValueError(f"unknown direction {direction!r}")
    report = ExceptionalReport(direction)
    fan = seq.fan
    d = fan.dim
    n = len(seq)
    for i in range(n):
        p = seq.polytopes[i]
        table = ext_table(p, p, fan, box)
        report.violations += _violations(i, i, table, [1] + [0] * d)
    for i in range(n):
        for j in range(i + 1, n):
            src, tgt = (i, j) if direction == FORWARD_CONVENTION else (j, i)
            table = ext_table(seq.polytopes[src], seq.polytopes[tgt], fan, box)
            report.violations += _violations(src, tgt, table, [0] * (d + 1))
    return report
