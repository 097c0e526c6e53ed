#!/usr/bin/env python3
"""Complexes, cones over them, and the directed set of models.

A proper toric model of a toric variety over a discretely valued field is
encoded by a complete SCR polyhedral complex whose recession fan is the
variety's fan.  This walk-through builds the standard rank-one models, looks
at their cone fans, charts and subdivisions, and checks the partial order.
"""

from fractions import Fraction as Q

from ppchow import (Cone, build_complex, common_refinement, cone_over,
                    edge_data, horizontal_star, recession_fan, refines,
                    star_subdivision, vertex_chart)
from ppchow.fixtures import f1_complex, f2_complex, f3_complex, f5_complex


def show(title, value):
    print(f"{title}: {value}")


print("== the trivial model of the projective line ==")
F1 = f1_complex()
show("complex", F1)
show("complete", F1.is_complete())
show("regular", F1.is_regular())

print()
print("== the two-vertex model ==")
F2 = f2_complex()
show("vertices (descending)", F2.vertices)
co = cone_over(F2)
show("maximal cones of the cone fan", [c.rays for c in co.fan.max_cones()])
show("recession fan equals the variety's fan",
     recession_fan(F2).same_as(recession_fan(F1)))

print()
print("== charts at the vertices ==")
for v in F2.vertices:
    chart = vertex_chart(F2, v)
    show(f"chart at {v}", [c.rays for c in chart.fan.max_cones()])
    show(f"component multiplicity at {v}", chart.multiplicity)
edge = F2.cells[F2.bounded_edges[0]]
show("ordered edge data (v1, v2, ray at v1, ray at v2)", edge_data(F2, edge))

print()
print("== subdivisions and the partial order ==")
F5 = f5_complex()
show("stellar subdivision of F2 at -1 equals F5",
     star_subdivision(F2, point=(-1,)).same_as(F5))
show("F5 refines F2", refines(F5, F2) is not None)
show("F2 refines F5", refines(F2, F5) is not None)
show("common refinement of F2 and F5 is F5",
     common_refinement(F2, F5).same_as(F5))

print()
print("== a rank-two example: horizontal stars ==")
F3 = f3_complex()
star = horizontal_star(F3, Cone(2, [(1, 0)]))
show("the star of a ray is a complete complex one rank down",
     (star.rank, star.is_complete()))

print()
print("== a half-integral vertex ==")
half = build_complex([([(0,)], [(-1,)]), ([(0,), (Q(1, 2),)], []),
                      ([(Q(1, 2),), (1,)], []), ([(1,)], [(1,)])], rank=1)
show("multiplicity at the half-integral vertex",
     vertex_chart(half, (Q(1, 2),)).multiplicity)
show("still a regular model", half.is_regular())
