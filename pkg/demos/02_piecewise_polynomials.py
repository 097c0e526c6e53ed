#!/usr/bin/env python3
"""Piecewise polynomials on fans: generators, bases, transfers, degrees.

The equivariant Chow ring of a toric model is the ring of piecewise
polynomial functions on the cone over its complex; the ray generators play
the role of the orbit-closure classes.  Everything below is exact.
"""

from ppchow import (cone_over, equivariant_degree, graded_basis, phi_cone,
                    phi_ray, pullback, pushforward, refines)
from ppchow.fixtures import f1_complex, f1_fan, f2_complex, f3_fan
from ppchow.polyhedra import Cone

print("== ray generators on the projective-line fan ==")
fan = f1_fan()
plus = phi_ray(fan, (1,))
minus = phi_ray(fan, (-1,))
print("phi_+ pieces:", list(plus.pieces))
print("phi_+ . phi_- = 0 (disjoint stars):", (plus * minus).is_zero())

print()
print("== graded dimensions ==")
print("dim PP^k of the line fan, k=0..3:",
      [len(graded_basis(fan, k)) for k in range(4)])
print("dim PP^k of the plane fan, k=0..3:",
      [len(graded_basis(f3_fan(), k)) for k in range(4)])

print()
print("== generators multiply like orbit closures ==")
co = cone_over(f2_complex())
r0, r1 = phi_ray(co.fan, (0, 1)), phi_ray(co.fan, (1, 1))
print("phi_ray(0,1) pieces:", list(r0.pieces))
print("product equals the cone generator:",
      r0 * r1 == phi_cone(co.fan, Cone(2, [(0, 1), (1, 1)])))

print()
print("== pushforward along a model map ==")
m = refines(f2_complex(), f1_complex())
print("vertical ray pushes to zero:", pushforward(m.fan_map, r1).is_zero())
print("horizontal ray pushes to itself:",
      pushforward(m.fan_map, r0) == phi_ray(m.fan_map.target, (0, 1)))
for k in range(3):
    for b in graded_basis(m.fan_map.target, k):
        assert pushforward(m.fan_map, pullback(m.fan_map, b)) == b
print("push after pull is the identity in degrees <= 2: True")

print()
print("== equivariant degree by localization ==")
f3 = f3_fan()
top = phi_cone(f3, f3.max_cones()[0])
print("degree of a fixed-point class on the plane:", equivariant_degree(f3, top))
print("degree of the constant in degree zero:",
      equivariant_degree(fan, phi_ray(fan, (1,)) * 0 + graded_basis(fan, 0)[0]))
