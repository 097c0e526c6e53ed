from fractions import Fraction as Q

import pytest

from ppchow.errors import DegreeMismatch, FaceMismatch, NotARay, NotRegular
from ppchow.fixtures import (f1_complex, f1_fan, f2_complex, f3_complex,
                             f3_fan, f5_complex)
from ppchow.polyhedra import Cone, cone_over, refines
from ppchow.polyring import HomogPoly
from ppchow.ppfan import (constant_pp, equivariant_degree, graded_basis,
                          make_pp, phi_cone, phi_ray, pullback, pushforward)


def lin(*coeffs):
    return HomogPoly.linear_form(coeffs)


def test_make_pp_examples():
    fan = f1_fan()
    # on F1, fan order is (negative ray, positive ray)
    f = make_pp(fan, [HomogPoly.zero(1, 1), lin(1)])
    assert f.degree == 1
    with pytest.raises(DegreeMismatch):
        make_pp(fan, [HomogPoly.constant(1, 1), lin(1)], degree=1)
    co = cone_over(f2_complex())
    # cones sorted: <(-1,0),(0,1)>, <(0,1),(1,1)>, <(1,0),(1,1)>
    f2 = make_pp(co.fan, [lin(0, 1), lin(-1, 1), HomogPoly.zero(2, 1)])
    assert f2.degree == 1
    with pytest.raises(FaceMismatch):
        make_pp(co.fan, [lin(0, 1), lin(1, 0), HomogPoly.zero(2, 1)])


def test_phi_ray_examples():
    fan = f1_fan()
    f = phi_ray(fan, (1,))
    assert list(f.pieces) == [HomogPoly.zero(1, 1), lin(1)]
    co = cone_over(f2_complex())
    pr = phi_ray(co.fan, (0, 1))
    by_cone = {co.fan.cones[i].rays: p for i, p in zip(co.fan.maximal, pr.pieces)}
    assert by_cone[((Q(0), Q(1)), (Q(1), Q(1)))] == lin(-1, 1)
    assert by_cone[((Q(-1), Q(0)), (Q(0), Q(1)))] == lin(0, 1)
    assert by_cone[((Q(1), Q(0)), (Q(1), Q(1)))].is_zero()
    pr2 = phi_ray(co.fan, (1, 1))
    by_cone = {co.fan.cones[i].rays: p for i, p in zip(co.fan.maximal, pr2.pieces)}
    assert by_cone[((Q(0), Q(1)), (Q(1), Q(1)))] == lin(1, 0)
    assert by_cone[((Q(1), Q(0)), (Q(1), Q(1)))] == lin(0, 1)
    with pytest.raises(NotARay):
        phi_ray(co.fan, (1, 2))
    irregular = __import__("ppchow.polyhedra", fromlist=["Fan"]).Fan(
        2, [Cone(2, [(1, 0), (1, 2)])])
    with pytest.raises(NotRegular):
        phi_ray(irregular, (1, 0))


def test_phi_cone_examples():
    fan = f1_fan()
    assert phi_cone(fan, Cone(1, [])) == constant_pp(fan, 1)
    assert phi_cone(fan, Cone(1, [(1,)])) == phi_ray(fan, (1,))
    co = cone_over(f2_complex())
    prod = phi_ray(co.fan, (0, 1)) * phi_ray(co.fan, (1, 1))
    assert prod == phi_cone(co.fan, Cone(2, [(0, 1), (1, 1)]))


def test_ring_ops():
    fan = f1_fan()
    plus, minus = phi_ray(fan, (1,)), phi_ray(fan, (-1,))
    assert (plus * minus).is_zero()
    assert plus + plus == plus.scale(2)


def test_graded_basis_dims():
    assert [len(graded_basis(f1_fan(), k)) for k in range(4)] == [1, 2, 2, 2]
    dims = [len(graded_basis(f3_fan(), k)) for k in range(4)]
    # Hilbert series (1 + t + t^2) / (1 - t)^2
    series = []
    for k in range(4):
        series.append(sum(max(k - j + 1, 0) for j in range(3)))
    assert dims == series == [1, 3, 6, 9]
    for pc in (f2_complex(), f3_complex()):
        assert len(graded_basis(cone_over(pc).fan, 0)) == 1


def test_pp_cone_basis_dimension_example():
    # 3 horizontal rays plus the vertical ray of the canonical plane model
    assert len(graded_basis(cone_over(f3_complex()).fan, 1)) == 4


def test_pullback_and_pushforward():
    F2, F1c = f2_complex(), f1_complex()
    m = refines(F2, F1c)
    fm = m.fan_map
    co2 = cone_over(F2)
    pr0 = phi_ray(co2.fan, (0, 1))
    pr1 = phi_ray(co2.fan, (1, 1))
    # identity pullback
    ident = refines(F2, F2).fan_map
    assert pullback(ident, pr0) == pr0
    # Prop-style pushforward branches
    assert pushforward(fm, pr1).is_zero()
    assert pushforward(fm, pr0) == phi_ray(fm.target, (0, 1))
    # pullback is a ring map on sampled pairs
    for a in graded_basis(fm.target, 1):
        for b in graded_basis(fm.target, 1):
            assert pullback(fm, a * b) == pullback(fm, a) * pullback(fm, b)
    # birational projection: push after pull is the identity
    for k in range(3):
        for b in graded_basis(fm.target, k):
            assert pushforward(fm, pullback(fm, b)) == b
    # projection formula
    for x in graded_basis(fm.target, 1):
        for y in graded_basis(fm.source, 1):
            assert pushforward(fm, pullback(fm, x) * y) == x * pushforward(fm, y)


def test_functoriality_tower():
    F1c, F2, F5 = f1_complex(), f2_complex(), f5_complex()
    m52, m21 = refines(F5, F2), refines(F2, F1c)
    m51 = m21.compose(m52)
    for b in graded_basis(m21.fan_map.target, 2):
        assert pullback(m52.fan_map, pullback(m21.fan_map, b)) == \
            pullback(m51.fan_map, b)
    for b in graded_basis(m52.fan_map.source, 2):
        assert pushforward(m21.fan_map, pushforward(m52.fan_map, b)) == \
            pushforward(m51.fan_map, b)


def test_degree_examples():
    fan = f1_fan()
    assert equivariant_degree(fan, phi_ray(fan, (1,))) == HomogPoly.constant(1, 1)
    assert equivariant_degree(fan, constant_pp(fan, 1)).is_zero()
    f3 = f3_fan()
    for c in f3.max_cones():
        assert equivariant_degree(f3, phi_cone(f3, c)) == HomogPoly.constant(2, 1)


def test_outputs_pass_validation():
    co = cone_over(f2_complex())
    for f in (phi_ray(co.fan, (0, 1)), phi_ray(co.fan, (1, 1)),
              phi_ray(co.fan, (0, 1)) * phi_ray(co.fan, (1, 1))):
        assert f.offending_pair() is None


def test_basis_dims_refinement_monotone():
    from ppchow.qlinalg import mat, rank
    from ppchow.polyring import monomial_exponents
    F2, F5 = f2_complex(), f5_complex()
    m = refines(F5, F2)
    for k in range(3):
        basis = graded_basis(cone_over(F2).fan, k)
        monos = monomial_exponents(2, k)
        flat = []
        for b in basis:
            pb = pullback(m.fan_map, b)
            flat.append([p.coeffs.get(e, 0) for p in pb.pieces for e in monos])
        if flat:
            assert rank(mat(flat)) == len(basis)
        assert len(graded_basis(cone_over(F5).fan, k)) >= len(basis)
