"""The standard desk-scale fixtures used by tests, demos and the check suite.

Rank one (projective-line situation): F1 is the complete fan with rays +-1,
also read as its canonical complex; F2 has vertices {0, 1}; F5 has vertices
{-1, 0, 1}; F6 has the half-integral vertex 1/2 (component multiplicity 2).
Rank two (projective-plane situation): F3 is the fan with rays (1,0), (0,1),
(-1,-1), F3C its canonical complex, and F3S the stellar subdivision of F3C at
the lattice point (1,0).
"""

from fractions import Fraction

from .polyhedra import (Cone, Fan, PolyComplex, Polyhedron, rec_fan_as_complex,
                        star_subdivision)


def _pc(rank, cells):
    return PolyComplex(rank, [Polyhedron(rank, v, r) for v, r in cells])


def f1_fan():
    return Fan(1, [Cone(1, [(1,)]), Cone(1, [(-1,)])])


def f1_complex():
    return _pc(1, [([(0,)], [(1,)]), ([(0,)], [(-1,)])])


def f2_complex():
    return _pc(1, [([(0,)], [(-1,)]), ([(0,), (1,)], []), ([(1,)], [(1,)])])


def f5_complex():
    return _pc(1, [([(0,)], []), ([(-1,), (0,)], []), ([(0,), (1,)], []),
                   ([(-1,)], [(-1,)]), ([(1,)], [(1,)])])


def f6_complex():
    h = Fraction(1, 2)
    return _pc(1, [([(0,)], [(-1,)]), ([(0,), (h,)], []), ([(h,), (1,)], []),
                   ([(1,)], [(1,)])])


def f3_fan():
    return Fan(2, [Cone(2, [(1, 0), (0, 1)]),
                   Cone(2, [(0, 1), (-1, -1)]),
                   Cone(2, [(-1, -1), (1, 0)])])


def f3_complex():
    return rec_fan_as_complex(f3_fan())


def f3s_complex():
    return star_subdivision(f3_complex(), point=(1, 0))


def p1_chain():
    """F1 <= F2 <= F5, the depth-3 tower of the rank-one acceptance runs."""
    return [f1_complex(), f2_complex(), f5_complex()]


def p2_chain():
    return [f3_complex(), f3s_complex()]


def all_fixture_models():
    return {"F1": f1_complex(), "F2": f2_complex(), "F5": f5_complex(),
            "F6": f6_complex(), "F3C": f3_complex(), "F3S": f3s_complex()}
