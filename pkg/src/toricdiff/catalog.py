"""Small standard toric varieties and their nef generators."""

from .polyhedra import Fan, LatticePolyhedron

# Hirzebruch surface F_1: rays (0,1), (1,0), (0,-1), (-1,1)
F1 = Fan(((0, 1), (1, 0), (0, -1), (-1, 1)), ({0, 1}, {1, 2}, {2, 3}, {3, 0}))
F1_A = LatticePolyhedron(((0, 0), (1, 0)))
F1_B = LatticePolyhedron(((0, 0), (0, 1), (1, 1)))

P1 = Fan(((1,), (-1,)), ({0}, {1}))
P1_H = LatticePolyhedron(((0,), (1,)))

P2 = Fan(((1, 0), (0, 1), (-1, -1)), ({0, 1}, {1, 2}, {2, 0}))
P2_H = LatticePolyhedron(((0, 0), (1, 0), (0, 1)))

P1xP1 = Fan(((1, 0), (0, 1), (-1, 0), (0, -1)), ({0, 1}, {1, 2}, {2, 3}, {3, 0}))
P1xP1_H1 = LatticePolyhedron(((0, 0), (1, 0)))
P1xP1_H2 = LatticePolyhedron(((0, 0), (0, 1)))

# blow-up of the affine plane in the origin; tail cone = first quadrant of M
QUADRANT = ((1, 0), (0, 1))
BLOWUP_A2 = Fan(((1, 0), (1, 1), (0, 1)), ({0, 1}, {1, 2}))
BLOWUP_A2_ZERO = LatticePolyhedron(((0, 0),), QUADRANT)
BLOWUP_A2_MINUS_E = LatticePolyhedron(((0, 1), (1, 0)), QUADRANT)
BLOWUP_A2_MINUS_2E = LatticePolyhedron(((0, 2), (2, 0)), QUADRANT)

# name -> (fan, nef generators, ample polyhedron)
SURFACES = {
    "P1": (P1, (P1_H,), P1_H),
    "P2": (P2, (P2_H,), P2_H),
    "P1xP1": (P1xP1, (P1xP1_H1, P1xP1_H2), P1xP1_H1 + P1xP1_H2),
    "F1": (F1, (F1_A, F1_B), F1_A + F1_B),
}
