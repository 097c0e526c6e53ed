from fractions import Fraction as Q

import pytest

from ppchow.errors import (NonSCR, NotAComplex, NotARecessionCone,
                           RecessionMismatch, UnboundedEdge)
from ppchow.fixtures import (f1_complex, f1_fan, f2_complex, f3_complex,
                             f3s_complex, f5_complex, f6_complex)
from ppchow.polyhedra import (Cone, PolyComplex, Polyhedron, build_complex,
                              common_refinement, cone_over, edge_data,
                              horizontal_star, recession_fan, refines,
                              star_subdivision, vertex_chart)


def test_fixture_complexes_valid_and_complete():
    for pc in (f1_complex(), f2_complex(), f5_complex(), f6_complex(),
               f3_complex(), f3s_complex()):
        assert pc.is_complete()
        assert pc.is_regular()
        for c in pc.cells:
            assert len(c.vertices) >= 1
        for e in pc.bounded_edges:
            assert len(pc.cells[e].vertices) == 2


def test_build_complex_rejects_overlap():
    with pytest.raises(NotAComplex):
        build_complex([([(0,), (1,)], []), ([(Q(1, 2),), (2,)], [])], rank=1)


def test_build_complex_rejects_line():
    with pytest.raises(NonSCR):
        Polyhedron(1, [(0,)], [(1,), (-1,)])


def test_cone_over_examples():
    co1 = cone_over(f1_complex())
    keys = {c.rays for c in co1.fan.max_cones()}
    assert keys == {((Q(0), Q(1)), (Q(1), Q(0))), ((Q(-1), Q(0)), (Q(0), Q(1)))}
    co2 = cone_over(f2_complex())
    keys = {c.rays for c in co2.fan.max_cones()}
    assert ((Q(0), Q(1)), (Q(1), Q(1))) in keys
    assert ((Q(1), Q(0)), (Q(1), Q(1))) in keys
    assert ((Q(-1), Q(0)), (Q(0), Q(1))) in keys
    point = build_complex([([(3,)], [])], rank=1)
    cop = cone_over(point)
    assert [c.rays for c in cop.fan.max_cones()] == [((Q(3), Q(1)),)]


def test_cone_over_slice_recovers_cells():
    for pc in (f2_complex(), f5_complex(), f3s_complex()):
        co = cone_over(pc)
        n = pc.rank
        for i in pc.maximal:
            cone = co.fan.cones[co.cell_to_cone[i]]
            verts = [tuple(x / r[n] for x in r[:n]) for r in cone.rays if r[n] > 0]
            rays = [r[:n] for r in cone.rays if r[n] == 0]
            cell = Polyhedron(n, verts, rays)
            assert cell.same_as(pc.cells[i])


def test_recession_examples():
    assert recession_fan(f2_complex()).same_as(f1_fan())
    assert recession_fan(f1_complex()).same_as(f1_fan())
    assert recession_fan(f5_complex()).same_as(f1_fan())


def test_regularity_examples():
    assert cone_over(f2_complex()).fan.is_regular()
    assert cone_over(f1_complex()).fan.is_regular()
    from ppchow.polyhedra import Fan
    assert not Fan(2, [Cone(2, [(1, 0), (1, 2)])]).is_regular()


def test_vertex_charts():
    F2 = f2_complex()
    ch0 = vertex_chart(F2, (0,))
    assert ch0.multiplicity == 1
    assert {c.rays for c in ch0.fan.max_cones()} == {((Q(1),),), ((Q(-1),),)}
    assert ch0.fan.is_complete()
    ch1 = vertex_chart(F2, (1,))
    cell_b = next(i for i in F2.maximal if F2.cells[i].is_bounded())
    cone_b = ch1.fan.cones[ch1.cell_to_cone[cell_b]]
    assert cone_b.rays == ((Q(-1),),)
    ch6 = vertex_chart(f6_complex(), (Q(1, 2),))
    assert ch6.multiplicity == 2


def test_edge_data():
    F2 = f2_complex()
    e = F2.cells[F2.bounded_edges[0]]
    v1, v2, r1, r2 = edge_data(F2, e)
    assert v1 == (Q(1),) and v2 == (Q(0),)
    assert r1 == (Q(-1),) and r2 == (Q(1),)
    F5 = f5_complex()
    seg = next(F5.cells[i] for i in F5.bounded_edges
               if set(F5.cells[i].vertices) == {(Q(-1),), (Q(0),)})
    v1, v2, _, _ = edge_data(F5, seg)
    assert v1 == (Q(0),) and v2 == (Q(-1),)
    F1 = f1_complex()
    assert F1.bounded_edges == ()
    ray_cell = next(c for c in F1.cells if c.dim == 1)
    with pytest.raises(UnboundedEdge):
        edge_data(F1, ray_cell)


def test_horizontal_star():
    F2 = f2_complex()
    assert horizontal_star(F2, Cone(1, [])).same_as(F2)
    pt = horizontal_star(F2, Cone(1, [(1,)]))
    assert pt.rank == 0 and len(pt.max_cells()) == 1
    hs = horizontal_star(f3_complex(), Cone(2, [(1, 0)]))
    assert hs.rank == 1 and hs.is_complete()


def test_horizontal_star_not_a_recession_cone():
    with pytest.raises(NotARecessionCone):
        horizontal_star(f3_complex(), Cone(2, [(1, 1)]))


def test_refines_partial_order():
    F1, F2, F5 = f1_complex(), f2_complex(), f5_complex()
    assert refines(F5, F2) is not None
    assert refines(F2, F5) is None
    assert refines(F2, F2).is_identity()
    assert refines(F5, F1) is not None  # transitivity of the order
    m = refines(F5, F2)
    assert all(m.target.cells[m.cell_map[i]].contains_poly(m.source.cells[i])
               for i in m.source.maximal)


def test_star_subdivision_examples():
    assert star_subdivision(f1_complex(), point=(1,)).same_as(f2_complex())
    assert star_subdivision(f2_complex(), point=(-1,)).same_as(f5_complex())
    assert star_subdivision(f2_complex(), point=(0,)).same_as(f2_complex())
    sub = star_subdivision(f3_complex(), point=(1, 0))
    assert sub.same_as(f3s_complex())
    assert refines(sub, f3_complex()) is not None


def test_common_refinement():
    F2, F5 = f2_complex(), f5_complex()
    assert common_refinement(F2, F5).same_as(F5)
    assert common_refinement(F2, F2).same_as(F2)
    shift = PolyComplex(1, [
        Polyhedron(1, [(Q(1, 2),)], [(-1,)]),
        Polyhedron(1, [(Q(1, 2),), (Q(3, 2),)], []),
        Polyhedron(1, [(Q(3, 2),)], [(1,)])])
    cr = common_refinement(F2, shift)
    assert cr.vertices == ((Q(3, 2),), (Q(1),), (Q(1, 2),), (Q(0),))
    assert not cr.is_regular()  # the unbounded cone over [3/2, oo) has index 2
    with pytest.raises(RecessionMismatch):
        common_refinement(F2, f3_complex())


def test_chart_fans_complete():
    for pc in (f2_complex(), f5_complex(), f3s_complex()):
        for v in pc.vertices:
            assert vertex_chart(pc, v).fan.is_complete()
