#!/usr/bin/env python3
"""Arithmetic cycles and the two limit descriptions.

An arithmetic cycle pairs a horizontal cycle with a Green current; the
direct-limit picture trades it for one piecewise polynomial class on one
model, the inverse-limit picture for a pushforward-compatible tower.  The
vertical correction of an eigenfunction satisfies the Poincare-Lelong
identity exactly.
"""

from ppchow import (Cone, InvariantCycle, LimitClass, LimitTower, ModelChain,
                    arith_product, closure_class, div_nu, eigen_divisor,
                    limit_equal, model_cycle_class, poincare_lelong_check,
                    theta, theta_inverse, theta_prime, theta_prime_inverse)
from ppchow.fixtures import p1_chain, p2_chain
from ppchow.polyhedra import cone_over

chain = ModelChain(p1_chain())
F1, F2, F5 = chain.models


def cyc(rank, codim, *terms):
    return InvariantCycle(rank, codim,
                          {tuple(tuple(r) for r in rays): c for rays, c in terms})


print("== eigenfunction divisors ==")
E = eigen_divisor(cone_over(F1).fan, Cone(2, []), (1, 0))
print("div of the basic character on the trivial model:", E.terms)

print()
print("== Poincare-Lelong ==")
print("on the line:", poincare_lelong_check(chain, Cone(1, []), (1,))["all_equal"])
chain2 = ModelChain(p2_chain())
print("on the plane, both basis characters:",
      all(poincare_lelong_check(chain2, Cone(2, []), u)["all_equal"]
          for u in ((1, 0), (0, 1))))

print()
print("== the direct limit ==")
horizontal = cyc(2, 1, ([(1, 0)], 1))
a = theta(chain, 0, horizontal)
print("round trip through the arithmetic cycle:",
      limit_equal(theta_inverse(a), LimitClass(F1, model_cycle_class(F1, horizontal))))
v0 = theta(chain, 1, cyc(2, 1, ([(0, 1)], 1)))
v1 = theta(chain, 1, cyc(2, 1, ([(1, 1)], 1)))
prod = arith_product(v0, v1)
print("the two fiber components intersect in the vertical point class:",
      theta_inverse(prod).pp.pieces)

print()
print("== the inverse limit ==")
eta = cyc(1, 1, ([(1,)], 1))
T = LimitTower(chain, {i: closure_class(chain.models[i], eta) for i in range(3)})
x = theta_prime(T)
print("the closure tower encodes (cycle, zero current):",
      (x.eta == eta, all(x.green.value(i).is_zero() for i in range(3))))
T2 = theta_prime_inverse(x)
print("and comes back unchanged:",
      all(T2.value(i) == T.value(i) for i in range(3)))

print()
print("== vertical corrections ==")
nu = div_nu(chain, Cone(1, []), (1,))
print("the correction vanishes on the trivial model and is supported on the",
      "exceptional component of the finer ones:",
      [not nu.value(i).is_zero() for i in nu.indices()])
