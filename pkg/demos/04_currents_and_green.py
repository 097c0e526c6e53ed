#!/usr/bin/env python3
"""Limit towers: delta currents, Green currents, regularity.

Currents are truncated inverse-limit families over an explicit chain of
models.  The delta current of a horizontal cycle is the tower of slices of
its closure classes; a Green current for it comes from choosing a lifting on
one model; regularity detection is honest about truncation depth.
"""

from fractions import Fraction as Q

from ppchow import (ClosedForm, InvariantCycle, ModelChain, closure_class,
                    delta_current, form_equal, green_from_lifting, is_green,
                    iota_upper, regularity_check, tower_stabilization)
from ppchow.errors import NotStabilized
from ppchow.fixtures import p1_chain
from ppchow.limits import degree_current, evaluate_tilde_degree_zero

chain = ModelChain(p1_chain())
plus = InvariantCycle(1, 1, {((Q(1),),): 1})
minus = InvariantCycle(1, 1, {((Q(-1),),): 1})

print("== delta currents of the two points of the line ==")
d_plus = delta_current(chain, plus)
print("tower of the point at +infinity stabilizes at chain position",
      tower_stabilization(d_plus))
d_minus = delta_current(chain, minus)
print("the other point's tower is refined at depth 3, no stabilization:",
      tower_stabilization(d_minus))
print("its equivariant degree is already constant:", degree_current(d_plus))

print()
print("== Green currents from liftings ==")
F2 = chain.models[1]
lift = closure_class(F2, plus)
g = green_from_lifting(chain, 1, lift, plus)
omega = is_green(g, plus)
print("the Green identity certifies the slice of the lifting:",
      form_equal(omega, ClosedForm(F2, iota_upper(F2, lift))))
print("regularity check recovers the defining model:",
      regularity_check(g).model.same_as(F2))

g_minus = green_from_lifting(chain, 1, closure_class(F2, minus), minus)
print("the Green identity holds for the other point too:",
      is_green(g_minus, minus) is not None)
try:
    regularity_check(g_minus)
except NotStabilized as exc:
    print("but its current is honestly not a form at this depth:", exc)

print()
print("== Green currents as functions ==")
g0 = green_from_lifting(chain, 0, closure_class(chain.models[0], plus), plus)
values = {p: evaluate_tilde_degree_zero(g0, (Q(p),)) for p in (-1, 0, 1)}
print("the degree-zero Green current evaluated at lattice points:", values)
