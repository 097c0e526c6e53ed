"""Piecewise polynomial functions on fans.

A PPFunction keeps one ambient homogeneous polynomial per maximal cone; the
lower faces are determined by restriction, and validity means any two pieces
agree on the span of the cones' intersection.  On a regular fan the ray
generators phi_tau (1 on the primitive generator, 0 on the opposite facet)
generate everything; products, pullbacks along subdivisions, pushforwards and
the localization degree are all exact.
"""

import itertools

from .errors import (DegreeMismatch, FaceMismatch, NotARay, NotProper,
                     NotRegular)
from .polyring import (HomogPoly, RatFun, equal_on_span, ratfun_sum_to_poly,
                       monomial_exponents)
from .polyhedra import Cone
from .qlinalg import kernel_basis, mat, mat_inverse, primitive, vec


def _max_pair_spans(fan):
    """For every pair of maximal cones, the span of their intersection."""
    if "pair_spans" not in fan._cache:
        out = []
        maxs = fan.max_cones()
        for (i, ci), (j, cj) in itertools.combinations(enumerate(maxs), 2):
            inter = ci.intersect(cj)
            if inter is not None:
                out.append((i, j, tuple(inter.span()), inter))
        fan._cache["pair_spans"] = tuple(out)
    return fan._cache["pair_spans"]


class PPFunction:
    """A degree-k piecewise polynomial on a fan, stored on maximal cones."""

    __slots__ = ("fan", "degree", "pieces")

    def __init__(self, fan, degree, pieces, validate=True):
        pieces = tuple(pieces)
        if len(pieces) != len(fan.maximal):
            raise ValueError("need one piece per maximal cone")
        for p in pieces:
            if p.dim != fan.rank:
                raise ValueError("piece has wrong ambient dimension")
            if not p.is_zero() and p.degree != degree:
                raise DegreeMismatch(f"piece of degree {p.degree} in a degree-{degree} function")
        self.fan = fan
        self.degree = degree
        self.pieces = tuple(p if not p.is_zero() else HomogPoly.zero(fan.rank, degree)
                            for p in pieces)
        if validate:
            bad = self.offending_pair()
            if bad is not None:
                i, j, inter = bad
                raise FaceMismatch(
                    f"pieces on cones {i} and {j} disagree on their common face {inter!r}",
                    witness=bad)

    def offending_pair(self):
        for i, j, span, inter in _max_pair_spans(self.fan):
            if not equal_on_span(self.pieces[i], self.pieces[j], span):
                return (i, j, inter)
        return None

    def is_zero(self):
        return all(p.is_zero() for p in self.pieces)

    def __eq__(self, other):
        return (isinstance(other, PPFunction) and self.fan.same_as(other.fan)
                and self.pieces == other.pieces)

    def __hash__(self):
        return hash(self.pieces)

    def __add__(self, other):
        self._check_same_fan(other)
        if self.degree != other.degree:
            # the zero function sits in every graded piece
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise DegreeMismatch(f"adding degrees {self.degree} and {other.degree}")
        return PPFunction(self.fan, self.degree,
                          [p + q for p, q in zip(self.pieces, other.pieces)],
                          validate=False)

    def __neg__(self):
        return PPFunction(self.fan, self.degree, [-p for p in self.pieces], validate=False)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PPFunction):
            self._check_same_fan(other)
            return PPFunction(self.fan, self.degree + other.degree,
                              [p * q for p, q in zip(self.pieces, other.pieces)],
                              validate=False)
        if isinstance(other, HomogPoly):
            # a global polynomial acts cone-wise
            return PPFunction(self.fan, self.degree + other.degree,
                              [p * other for p in self.pieces], validate=False)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c):
        return PPFunction(self.fan, self.degree, [p.scale(c) for p in self.pieces],
                          validate=False)

    def _check_same_fan(self, other):
        if not self.fan.same_as(other.fan):
            raise ValueError("operands live on different fans")

    def __repr__(self):
        return f"PP(deg={self.degree}, pieces={list(self.pieces)})"


def make_pp(fan, pieces, degree=None):
    """Validated PPFunction from raw per-maximal-cone polynomials."""
    pieces = list(pieces)
    if degree is None:
        degree = next((p.degree for p in pieces if not p.is_zero()), 0)
    return PPFunction(fan, degree, pieces, validate=True)


def zero_pp(fan, degree):
    return PPFunction(fan, degree, [HomogPoly.zero(fan.rank, degree)
                                    for _ in fan.maximal], validate=False)


def constant_pp(fan, value):
    return PPFunction(fan, 0, [HomogPoly.constant(fan.rank, value)
                               for _ in fan.maximal], validate=False)


def _ray_vector(fan, ray):
    if isinstance(ray, Cone):
        if ray.dim != 1:
            raise NotARay(f"{ray!r} is not a ray")
        return ray.rays[0]
    return primitive(vec(ray))


def dual_forms(cone, rank):
    """The forms phi_{tau,sigma} for a full-dimensional regular cone.

    Row i of the inverse ray matrix is the unique linear form that is 1 on
    the i-th primitive ray and 0 on the others.
    """
    if cone.dim != rank or len(cone.rays) != rank:
        raise NotRegular(f"cone {cone!r} is not full-dimensional simplicial")
    M = mat([[cone.rays[j][i] for j in range(rank)] for i in range(rank)])
    try:
        inv = mat_inverse(M)
    except ValueError:
        raise NotRegular(f"cone {cone!r} is degenerate")
    return [HomogPoly.linear_form(row) for row in inv]


def phi_ray(fan, ray):
    """The canonical degree-one generator attached to a ray of a regular fan."""
    if not fan.is_regular():
        raise NotRegular("phi generators need a regular fan")
    v = _ray_vector(fan, ray)
    if not any(c.dim == 1 and c.rays == (v,) for c in fan.cones):
        raise NotARay(f"{v} is not a ray of the fan")
    pieces = []
    for c in fan.max_cones():
        if c.contains_point(v):
            idx = c.rays.index(v)
            pieces.append(dual_forms(c, fan.rank)[idx])
        else:
            pieces.append(HomogPoly.zero(fan.rank, 1))
    return PPFunction(fan, 1, pieces, validate=False)


def phi_cone(fan, cone):
    """phi_sigma = product of phi_tau over the rays of sigma."""
    out = constant_pp(fan, 1)
    for r in cone.rays:
        out = out * phi_ray(fan, r)
    return out


def pp_add(f, g):
    if f.degree != g.degree and not (f.is_zero() or g.is_zero()):
        raise DegreeMismatch("adding different degrees")
    return f + g


def pp_product(f, g):
    return f * g


def pp_scale(c, f):
    return f.scale(c)


def graded_basis(fan, k):
    """A Q-basis of the degree-k piecewise polynomials on the fan.

    Unknown coefficients per maximal cone are subjected to the face
    constraints (coefficient comparison after restricting the difference to
    each pairwise intersection span); the kernel of that system is the
    graded piece.
    """
    rank_ = fan.rank
    monos = monomial_exponents(rank_, k)
    nmax = len(fan.maximal)
    width = len(monos) * nmax
    rows = []
    for i, j, span, _ in _max_pair_spans(fan):
        r = len(span)
        param_monos = monomial_exponents(r, k)
        for col, e in enumerate(monos):
            basis_poly = HomogPoly(rank_, k, {e: 1})
            restricted = _restrict(basis_poly, span)
            for pm_idx, pm in enumerate(param_monos):
                coeff = restricted.coeffs.get(pm, 0)
                if coeff == 0:
                    continue
                row_key = (i, j, pm)
                rows.append((row_key, i * len(monos) + col, coeff))
                rows.append((row_key, j * len(monos) + col, -coeff))
    keys = sorted({rk for rk, _, _ in rows}, key=repr)
    key_pos = {rk: idx for idx, rk in enumerate(keys)}
    matrix = [[0] * width for _ in keys]
    for rk, col, coeff in rows:
        matrix[key_pos[rk]][col] += coeff
    kern = kernel_basis(mat(matrix)) if keys else \
        [tuple(1 if c == i else 0 for c in range(width)) for i in range(width)]
    basis = []
    for v in kern:
        pieces = []
        for i in range(nmax):
            coeffs = {e: v[i * len(monos) + col] for col, e in enumerate(monos)
                      if v[i * len(monos) + col] != 0}
            pieces.append(HomogPoly(rank_, k, coeffs))
        basis.append(PPFunction(fan, k, pieces, validate=False))
    return basis


def _restrict(poly, span):
    from .polyring import restrict_to_span
    return restrict_to_span(poly, span)


def pp_coordinates(f, basis):
    """Coordinates of f in a graded basis, or None if outside the span."""
    from .qlinalg import solve, transpose
    monos = monomial_exponents(f.fan.rank, f.degree)
    def flat(g):
        out = []
        for p in g.pieces:
            out.extend(p.coeffs.get(e, 0) for e in monos)
        return out
    cols = [flat(b) for b in basis]
    target = flat(f)
    if not cols:
        return () if all(x == 0 for x in target) else None
    return solve(transpose(mat(cols)), vec(target))


def pullback(fan_map, f):
    """(pi^* f) on the source: the piece over a cone is the piece of its image."""
    if not f.fan.same_as(fan_map.target):
        raise ValueError("function does not live on the map's target")
    pieces = [f.pieces[fan_map.max_map[s]] for s in range(len(fan_map.source.maximal))]
    return PPFunction(fan_map.source, f.degree, pieces, validate=False)


def _truncated_volume(cone, functional, rank_):
    """n! times the volume of the cone cut off at functional <= 1."""
    from .qlinalg import det
    scaled = []
    for r in cone.rays:
        h = functional.evaluate(r)
        if h <= 0:
            raise NotProper("functional not positive on a covering cone")
        scaled.append([x / h for x in r])
    return abs(det(mat(scaled)))


def _check_covers(sigma, parts, rank_):
    """Exact check that the full-dimensional cones cover sigma.

    Compares the volume of sigma truncated by a functional positive on it
    against the sum over the parts; the parts sit inside sigma and meet along
    faces, so equality is equivalent to covering.
    """
    c = dual_forms(sigma, rank_)
    functional = c[0]
    for form in c[1:]:
        functional = functional + form
    total = _truncated_volume(sigma, functional, rank_)
    covered = sum(_truncated_volume(p, functional, rank_) for p in parts)
    return covered == total


def pushforward(fan_map, f):
    """Pushforward along a proper subdivision of regular fans.

    On a maximal target cone sigma the value is
    (prod of sigma's dual forms) * sum over maximal source cones inside sigma
    of piece / (prod of the source cone's dual forms), summed exactly; a
    nonzero remainder in the division means the map was not a subdivision.
    Properness (equal supports) is certified by an exact volume count of the
    source cones inside each target cone.
    """
    src, tgt = fan_map.source, fan_map.target
    if not f.fan.same_as(src):
        raise ValueError("function does not live on the map's source")
    if not (src.is_regular() and tgt.is_regular()):
        raise NotRegular("pushforward needs regular fans")
    rank_ = tgt.rank
    pieces = []
    for t, tmax in enumerate(tgt.maximal):
        sigma = tgt.cones[tmax]
        parts = [src.cones[src.maximal[s]] for s in range(len(src.maximal))
                 if fan_map.max_map[s] == t]
        if not _check_covers(sigma, parts, rank_):
            raise NotProper(f"source cones do not cover target cone {sigma!r}")
        numf = dual_forms(sigma, rank_)
        terms = []
        for s in range(len(src.maximal)):
            if fan_map.max_map[s] != t:
                continue
            num = f.pieces[s]
            for form in numf:
                num = num * form
            terms.append(RatFun(num, dual_forms(src.cones[src.maximal[s]], rank_)))
        pieces.append(ratfun_sum_to_poly(terms, dim=rank_, degree=f.degree))
    return PPFunction(tgt, f.degree, pieces, validate=False)


def equivariant_degree(fan, f):
    """Localization sum over the fixed points of a regular fan.

    Returns the exact polynomial sum over maximal cones of
    piece / (product of the cone's dual forms); degree reasons force zero
    when f.degree < rank.  On a complete fan this is the equivariant degree;
    on the cone over a model it computes degrees of vertically supported
    classes, with any failure surfacing as :class:`NotPolynomial`.
    """
    if not fan.is_regular():
        raise NotRegular("degree needs a regular fan")
    terms = []
    for pos, i in enumerate(fan.maximal):
        terms.append(RatFun(f.pieces[pos], dual_forms(fan.cones[i], fan.rank)))
    return ratfun_sum_to_poly(terms, dim=fan.rank, degree=f.degree - fan.rank)


def restrict_to_height_zero(cone_over_, f):
    """Restrict a PP function on c(Pi) to the horizontal subfan rec(Pi).

    The piece on a maximal recession cone is the piece of any maximal cone of
    c(Pi) above it with the height variable set to zero; face compatibility
    makes the choice immaterial.
    """
    from .polyhedra import recession_fan
    pc = cone_over_.complex
    rec = recession_fan(pc)
    n = pc.rank
    images = [HomogPoly.variable(n, i) for i in range(n)] + [HomogPoly.zero(n, 1)]
    pieces = []
    for rmax in rec.maximal:
        sigma = rec.cones[rmax]
        lift = Cone(n + 1, [tuple(r) + (0,) for r in sigma.rays])
        pos = next(p for p, i in enumerate(cone_over_.fan.maximal)
                   if cone_over_.fan.cones[i].contains_cone(lift))
        pieces.append(f.pieces[pos].substitute(images))
    return PPFunction(rec, f.degree, pieces, validate=False)
