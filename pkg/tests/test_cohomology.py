import pytest
from hypothesis import given, strategies as st

from toricdiff.bundles import ToricDivisor, VirtualPolyhedron, divisor_of_virtual
from toricdiff.catalog import (
    BLOWUP_A2,
    BLOWUP_A2_MINUS_2E,
    BLOWUP_A2_ZERO,
    F1,
    F1_A,
    F1_B,
    P1,
    SURFACES,
)
from toricdiff.cohomology import (
    ALL_CONES,
    CohomologyTable,
    DegreeBox,
    cech_complex,
    classical_cohomology,
    cohomology_at,
    cohomology_table,
    cover_cones,
    default_degree_box,
    good_cover_report,
    h0_containment,
    local_sections_nonzero,
)
from toricdiff.errors import NonSimplicialFanError, UnboundedBoxError
from toricdiff.linalg import cohomology_dims
from toricdiff.polyhedra import Cone, Fan, LatticePolyhedron

ORIGIN = LatticePolyhedron(((0, 0),))
TWO_B = F1_B.dilate(2)
L_2B_A = VirtualPolyhedron(TWO_B, F1_A, F1)
L_A_2B = VirtualPolyhedron(F1_A, TWO_B, F1)
L_A_4B = VirtualPolyhedron(F1_A, F1_B.dilate(4), F1)
L_MINUS_2A = VirtualPolyhedron(ORIGIN, F1_A.dilate(2), F1)
L_2E = VirtualPolyhedron(BLOWUP_A2_ZERO, BLOWUP_A2_MINUS_2E, BLOWUP_A2)
TRIVIAL = VirtualPolyhedron(ORIGIN, ORIGIN, F1)


def test_degree_box():
    box = DegreeBox((-1, 0), (1, 1))
    assert len(box) == 6
    assert list(box)[:2] == [(-1, 0), (-1, 1)]
    assert (0, 1) in box and (2, 0) not in box
    with pytest.raises(ValueError):
        DegreeBox((1, 0), (0, 0))


def test_local_sections():
    assert local_sections_nonzero(L_2B_A, frozenset(), (5, -9))
    assert local_sections_nonzero(L_2B_A, Cone(((1, 0), (0, 1))), (0, 1))
    assert not local_sections_nonzero(L_A_2B, Cone(((1, 0), (0, 1))), (0, -1))


def test_cech_examples():
    assert cohomology_dims(cech_complex(TRIVIAL, (0, 0))) == [1, 0, 0, 0]
    assert cohomology_at(TRIVIAL, (0, 0)) == [1, 0, 0]
    assert cohomology_at(L_A_2B, (0, -1)) == [0, 1, 0]
    assert cohomology_at(L_A_4B, (-1, -3)) == [0, 0, 1]
    assert cohomology_at(L_2B_A, (0, 1)) == [1, 0, 0]
    assert cohomology_at(L_2E, (-1, -1)) == [0, 1, 0]
    assert cohomology_at(L_MINUS_2A, (-1, 0)) == [0, 1, 0]


def test_cech_order_and_cover_examples():
    n = len(cover_cones(F1))
    for order in ([3, 2, 1, 0], [1, 3, 0, 2]):
        assert cohomology_at(L_A_4B, (-1, -3), order=order) == [0, 0, 1]
    with pytest.raises(ValueError):
        cohomology_at(L_A_4B, (0, 0), order=list(range(n - 1)))
    assert cohomology_at(L_A_2B, (0, -1), cover=ALL_CONES) == [0, 1, 0]


def test_prime_field_agrees_on_surfaces():
    for m in default_degree_box(L_A_4B):
        assert cohomology_at(L_A_4B, m, prime=2) == cohomology_at(L_A_4B, m)


def test_default_box():
    box = default_degree_box(TRIVIAL)
    assert (box.lo, box.hi) == ((0, 0), (0, 0))
    box = default_degree_box(L_2B_A)
    assert (box.lo, box.hi) == ((-1, 0), (2, 2))
    assert default_degree_box(L_2E) is None
    with pytest.raises(UnboundedBoxError):
        cohomology_table(L_2E)


def test_tables():
    t = cohomology_table(L_2B_A)
    assert t.rows() == [((0, 1), (1, 0, 0)), ((0, 2), (1, 0, 0)), ((1, 2), (1, 0, 0))]
    assert t.totals() == [3, 0, 0]
    assert cohomology_table(L_A_2B).rows() == [((0, -1), (0, 1, 0))]


def test_table_serialization():
    t = cohomology_table(L_2B_A)
    assert t.to_tsv().splitlines()[0] == "m_1\tm_2\th0\th1\th2"
    assert t.to_tsv().splitlines()[1] == "0\t1\t1\t0\t0"
    back = CohomologyTable.from_json(t.to_json())
    assert back.entries == t.entries and back.box == t.box
    assert back.bundle.plus.points == t.bundle.plus.points
    with pytest.raises(ValueError):
        CohomologyTable({(9, 9): (1, 0, 0)}, t.box)


def test_classical_examples():
    assert classical_cohomology(ToricDivisor((-2, 0)), P1, (1,)) == [0, 1]
    assert classical_cohomology(ToricDivisor((0, 0, 0, 0)), F1, (0, 0)) == [1, 0, 0]
    d = divisor_of_virtual(L_A_2B)
    assert classical_cohomology(d, F1, (0, -1)) == [0, 1, 0]
    square_pyramid = Fan(
        ((1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1), (0, 0, -1)),
        ({0, 1, 2, 3}, {0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}),
    )
    with pytest.raises(NonSimplicialFanError):
        classical_cohomology(ToricDivisor((0,) * 5), square_pyramid, (0, 0, 0))


def test_h0_examples():
    assert h0_containment(L_2B_A, (0, 1)) == 1
    assert h0_containment(L_2B_A, (1, 1)) == 0
    assert h0_containment(L_2E, (3, 0)) == 1


def test_good_cover_examples():
    rep = good_cover_report(L_2B_A, (0, 1))
    assert rep.difference_empty
    assert all(c.algebraic_empty and c.geometric_empty for c in rep.cones if c.cone)
    assert rep.ok

    rep = good_cover_report(L_A_2B, (0, -1))
    assert rep.ok and rep.samples == 64
    first = next(c for c in rep.cones if c.cone == frozenset({0, 1}))
    assert not first.algebraic_empty and first.samples_in > 0 and first.star_checks > 0

    rep = good_cover_report(TRIVIAL, (1, 0))
    assert rep.ok and rep.samples == 64 and not rep.uncovered

    rep = good_cover_report(L_2E, (-1, -1))
    assert rep.ok and rep.samples == 64


def test_good_cover_is_seed_pinned():
    a = good_cover_report(L_A_4B, (-1, -3), seed=5)
    b = good_cover_report(L_A_4B, (-1, -3), seed=5)
    assert a.summary() == b.summary()
    assert [c.samples_in for c in a.cones] == [c.samples_in for c in b.cones]


def test_blowup_scan_matches_containment():
    box = DegreeBox.cube(2, -3, 3)
    t = cohomology_table(L_2E, box)
    assert t.support(1) == [(-1, -1)]
    assert set(t.support(0)) == {m for m in box if m[0] >= 0 and m[1] >= 0}


# invariants on random bundles of the standard surfaces

names = st.sampled_from(sorted(SURFACES))
coeffs = st.tuples(st.integers(0, 2), st.integers(0, 2))


def _bundle(name, a, b):
    fan, gens, _ = SURFACES[name]

    def combo(c):
        out = LatticePolyhedron.neutral(fan.dim)
        for g, k in zip(gens, c):
            out = out + g.dilate(k)
        return out

    return VirtualPolyhedron(combo(a), combo(b), fan)


@given(names, coeffs, coeffs)
def test_oracles_agree(name, a, b):
    bundle = _bundle(name, a, b)
    d = divisor_of_virtual(bundle)
    for m in default_degree_box(bundle).inflate(1):
        dims = cohomology_at(bundle, m)
        assert dims == classical_cohomology(d, bundle.fan, m)
        assert dims[0] == h0_containment(bundle, m)


@given(names, coeffs, coeffs, st.randoms(use_true_random=False))
def test_cover_and_order_invariance(name, a, b, rnd):
    bundle = _bundle(name, a, b)
    n = len(cover_cones(bundle.fan))
    order = list(range(n))
    rnd.shuffle(order)
    for m in default_degree_box(bundle):
        base = cohomology_at(bundle, m)
        assert cohomology_at(bundle, m, cover=ALL_CONES) == base
        assert cohomology_at(bundle, m, order=order) == base


@given(names, coeffs, coeffs)
def test_vanishing_outside_window(name, a, b):
    bundle = _bundle(name, a, b)
    box = default_degree_box(bundle)
    for m in box.inflate(2):
        if m not in box:
            assert cohomology_at(bundle, m) == [0] * (bundle.dim + 1)


@given(names, coeffs, coeffs, st.integers(-2, 2), st.integers(-2, 2))
def test_emptiness_flags(name, a, b, x, y):
    bundle = _bundle(name, a, b)
    m = (x, y)[: bundle.dim]
    assert good_cover_report(bundle, m, samples=0).flags_agree
