"""Cohomology of toric line bundles represented by differences of lattice polyhedra."""

from .bundles import (
    ToricDivisor,
    VirtualPolyhedron,
    canonical_divisor,
    cartier_data,
    divisor_of_polyhedron,
    divisor_of_virtual,
    is_nef,
    linearly_equivalent,
    nef_decompose,
    polyhedron_of_divisor,
    shift,
)
from .cohomology import (
    ALL_CONES,
    MAXIMAL_CONES,
    CohomologyTable,
    DegreeBox,
    cech_complex,
    classical_cohomology,
    cohomology_at,
    cohomology_table,
    default_degree_box,
    good_cover_report,
    h0_containment,
    local_sections_nonzero,
)
from .exceptional import (
    FORWARD_CONVENTION,
    REVERSE_CONVENTION,
    NefSequence,
    ext_dims,
    is_exceptional_sequence,
)
from .linalg import CochainComplex, RationalMatrix, cohomology_dims, rank
from .polyhedra import (
    Cone,
    Fan,
    LatticePolyhedron,
    LatticeVector,
    dual_contains,
    intersect_cones,
    is_compatible,
    minkowski_sum,
    normal_fan,
    pairing,
    support_min,
    validate_fan,
    vertex_v_sigma,
)

__version__ = "0.1.0"
