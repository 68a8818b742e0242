import itertools

import pytest
from hypothesis import given, strategies as st

from toricdiff.catalog import F1, F1_A, F1_B
from toricdiff.errors import NotCompatibleError
from toricdiff.exceptional import (
    FORWARD_CONVENTION,
    REVERSE_CONVENTION,
    NefSequence,
    ext_dims,
    is_exceptional_sequence,
)
from toricdiff.polyhedra import LatticePolyhedron

O = LatticePolyhedron(((0, 0),))
A, B = F1_A, F1_B
AB = F1_A + F1_B
TWO_B = F1_B.dilate(2)
NAMES = {"0": O, "A": A, "B": B, "A+B": AB, "2B": TWO_B}


def seq(*names):
    return NefSequence(tuple(NAMES[n] for n in names), F1)


def test_ext_dims_examples():
    assert ext_dims(A, A, F1) == [1, 0, 0]
    assert ext_dims(O, A, F1) == [2, 0, 0]
    assert ext_dims(TWO_B, A, F1)[1] == 1


def test_nef_difference_counts_lattice_points():
    # Ext(P, P + R) = lattice points of R for nef R
    for r in (A, B, AB, TWO_B):
        assert ext_dims(O, r, F1) == [len(r.lattice_points()), 0, 0]
        assert ext_dims(B, B + r, F1) == [len(r.lattice_points()), 0, 0]


def test_displayed_sequences_reverse_direction():
    assert is_exceptional_sequence(seq("0", "A", "B", "A+B"), REVERSE_CONVENTION).ok
    assert is_exceptional_sequence(seq("0", "B", "A+B", "2B"), REVERSE_CONVENTION).ok


def test_displayed_sequences_fail_forward():
    assert not is_exceptional_sequence(seq("0", "A", "B", "A+B"), FORWARD_CONVENTION).ok


def test_a_and_2b_obstruction():
    for names in itertools.permutations(["0", "A", "2B"]):
        i, j = names.index("A"), names.index("2B")
        report = is_exceptional_sequence(seq(*names), REVERSE_CONVENTION)
        if i < j:
            assert not report.ok
            hits = [v for v in report.violations if (v.source, v.target) == (j, i)]
            assert [(v.degree, v.m, v.dim) for v in hits] == [(1, (0, -1), 1)]
        forward = is_exceptional_sequence(seq(*names), FORWARD_CONVENTION)
        if j < i:
            hits = [v for v in forward.violations if (v.source, v.target) == (j, i)]
            assert [(v.degree, v.m, v.dim) for v in hits] == [(1, (0, -1), 1)]


def test_sequence_checks():
    with pytest.raises(NotCompatibleError):
        NefSequence((LatticePolyhedron(((0, 0), (0, 1))),), F1)
    with pytest.raises(ValueError):
        is_exceptional_sequence(seq("0"), "sideways")


@given(st.integers(-3, 3), st.integers(-3, 3), st.sampled_from([("0", "A", "B", "A+B"), ("0", "B", "A+B", "2B"), ("0", "A", "2B")]))
def test_shift_invariance(x, y, names):
    moved = NefSequence(tuple(NAMES[n].translate((x, y)) for n in names), F1)
    for direction in (FORWARD_CONVENTION, REVERSE_CONVENTION):
        assert is_exceptional_sequence(moved, direction).ok == is_exceptional_sequence(seq(*names), direction).ok
