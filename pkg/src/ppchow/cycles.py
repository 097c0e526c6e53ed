"""Invariant cycles as formal rational combinations of orbit-closure cones.

A horizontal cycle lives on the generic fiber and is a combination of cones
of the recession fan; a model cycle is a combination of cones of c(Pi) and
may mix horizontal (height-zero) and vertical cones.  Under the Poincare
duality dictionary the cone sigma stands for the orbit closure V(sigma) and
its class is the generator phi_sigma.
"""

from fractions import Fraction

from .polyhedra import Cone, cone_over
from .ppfan import phi_cone, zero_pp
from .qlinalg import primitive, rat, vec


def _cone_key(rays):
    return tuple(sorted(primitive(vec(r)) for r in rays))


class InvariantCycle:
    """A formal combination of codimension-k invariant subvarieties.

    ``rank`` is the ambient lattice rank of the fan carrying the cones; for
    horizontal cycles that is n, for model-level cycles n + 1.
    """

    __slots__ = ("rank", "codim", "terms")

    def __init__(self, rank, codim, terms):
        self.rank = rank
        self.codim = codim
        clean = {}
        for rays, c in terms.items():
            key = _cone_key(rays) if rays else ()
            c = rat(c)
            if len(key) and len({len(r) for r in key}) != 1:
                raise ValueError("ragged ray data")
            if c != 0:
                clean[key] = clean.get(key, Fraction(0)) + c
        self.terms = {k: c for k, c in clean.items() if c != 0}

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return InvariantCycle(self.rank, self.codim, out)

    def __neg__(self):
        return InvariantCycle(self.rank, self.codim, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = rat(c)
        return InvariantCycle(self.rank, self.codim, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, InvariantCycle) and self.rank == other.rank
                and self.terms == other.terms)

    def cones(self):
        return [Cone(self.rank, list(k)) for k in self.terms]

    def __repr__(self):
        return f"InvariantCycle(codim={self.codim}, {self.terms})"


def horizontal_lift_key(key, n):
    """Embed a cone of the recession fan at height zero in c(Pi)."""
    return tuple(tuple(r) + (Fraction(0),) for r in key)


def closure_class(pc, cycle):
    """The class of the Zariski closure of a horizontal cycle on a model.

    Each horizontal cone is read at height zero inside c(Pi) and contributes
    its generator there.
    """
    co = cone_over(pc)
    fan = co.fan
    n = pc.rank
    out = zero_pp(fan, cycle.codim)
    for key, c in cycle.terms.items():
        lifted = Cone(n + 1, list(horizontal_lift_key(key, n)))
        out = out + phi_cone(fan, lifted).scale(c)
    return out


def model_cycle_class(pc, cycle):
    """The PP class of a model-level cycle on c(Pi)."""
    co = cone_over(pc)
    out = zero_pp(co.fan, cycle.codim)
    for key, c in cycle.terms.items():
        out = out + phi_cone(co.fan, Cone(pc.rank + 1, list(key))).scale(c)
    return out


def horizontal_part(cycle, n):
    """The height-zero terms of a model-level cycle, read in the recession fan."""
    terms = {}
    for key, c in cycle.terms.items():
        if all(r[n] == 0 for r in key):
            terms[tuple(r[:n] for r in key)] = c
    return InvariantCycle(n, cycle.codim, terms)


def vertical_part(cycle, n):
    terms = {k: c for k, c in cycle.terms.items() if any(r[n] != 0 for r in k)}
    return InvariantCycle(n + 1, cycle.codim, terms)


def cycle_from_pp(fan, f, codim):
    """Express a PP class as a combination of the codim-k cone generators.

    Returns the InvariantCycle or None when the class is not supported on
    cycles of that codimension.
    """
    from .ppfan import pp_coordinates
    cones = [c for c in fan.cones if c.dim == codim]
    basis = [phi_cone(fan, c) for c in cones]
    coords = pp_coordinates(f, basis)
    if coords is None:
        return None
    return InvariantCycle(fan.rank, codim,
                          {c.rays: x for c, x in zip(cones, coords) if x != 0})
