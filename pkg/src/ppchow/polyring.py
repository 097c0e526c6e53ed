"""Homogeneous multivariate polynomials over Q and formal rational functions.

Polynomials are always stored in ambient coordinates; "a polynomial on the
span of a cone" is any ambient polynomial, compared modulo vanishing on that
span (:func:`equal_on_span`).  Rational functions keep their denominators as
factored lists of linear forms and are only ever collapsed to polynomials by
exact division, never by truncation.
"""

from fractions import Fraction

from .errors import DegreeMismatch, NotPolynomial
from .qlinalg import rat, rat_str, span_basis, vec


class HomogPoly:
    """A homogeneous polynomial over Q in ``dim`` ambient variables.

    Coefficients are stored sparsely as a map from exponent tuples (summing
    to ``degree``) to nonzero rationals.  The zero polynomial carries a
    degree like every other one; there is one zero per (dim, degree).
    """

    __slots__ = ("dim", "degree", "coeffs")

    def __init__(self, dim, degree, coeffs=None):
        self.dim = dim
        self.degree = degree
        clean = {}
        for expo, c in (coeffs or {}).items():
            expo = tuple(int(e) for e in expo)
            c = rat(c)
            if len(expo) != dim or any(e < 0 for e in expo):
                raise ValueError(f"bad exponent {expo} for dimension {dim}")
            if sum(expo) != degree:
                raise ValueError(f"exponent {expo} is not homogeneous of degree {degree}")
            if c != 0:
                clean[expo] = clean.get(expo, Fraction(0)) + c
        self.coeffs = {e: c for e, c in clean.items() if c != 0}

    @classmethod
    def zero(cls, dim, degree):
        return cls(dim, degree, {})

    @classmethod
    def constant(cls, dim, value):
        value = rat(value)
        return cls(dim, 0, {(0,) * dim: value} if value != 0 else {})

    @classmethod
    def linear_form(cls, coefficients):
        coefficients = vec(coefficients)
        d = len(coefficients)
        coeffs = {}
        for i, c in enumerate(coefficients):
            if c != 0:
                e = [0] * d
                e[i] = 1
                coeffs[tuple(e)] = c
        return cls(d, 1, coeffs)

    @classmethod
    def variable(cls, dim, index, power=1):
        e = [0] * dim
        e[index] = power
        return cls(dim, power, {tuple(e): 1})

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return (isinstance(other, HomogPoly) and self.dim == other.dim
                and self.coeffs == other.coeffs
                and (self.degree == other.degree or self.is_zero()))

    def __hash__(self):
        return hash((self.dim, frozenset(self.coeffs.items())))

    def __add__(self, other):
        if self.dim != other.dim:
            raise ValueError("ambient dimension mismatch")
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise DegreeMismatch(f"cannot add degrees {self.degree} and {other.degree}")
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return HomogPoly(self.dim, self.degree, out)

    def __neg__(self):
        return HomogPoly(self.dim, self.degree, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if self.dim != other.dim:
            raise ValueError("ambient dimension mismatch")
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return HomogPoly(self.dim, self.degree + other.degree, out)

    __rmul__ = __mul__

    def scale(self, c):
        c = rat(c)
        return HomogPoly(self.dim, self.degree, {e: c * v for e, v in self.coeffs.items()})

    def evaluate(self, point):
        point = vec(point)
        total = Fraction(0)
        for e, c in self.coeffs.items():
            term = c
            for x, k in zip(point, e):
                term *= x ** k
            total += term
        return total

    def substitute(self, images):
        """Compose with a linear substitution x_i -> images[i].

        Each image is a HomogPoly of formal degree one (possibly zero, which
        kills the variable) in a common target dimension; the result is
        homogeneous of the same degree in that dimension.
        """
        if len(images) != self.dim:
            raise ValueError("need one image per variable")
        tdim = images[0].dim if images else 0
        out = HomogPoly.zero(tdim, self.degree)
        for e, c in self.coeffs.items():
            term = HomogPoly.constant(tdim, c)
            for img, k in zip(images, e):
                for _ in range(k):
                    term = term * img
            out = out + term
        return out

    def monomials(self):
        return sorted(self.coeffs)

    def leading(self):
        """Leading (exponent, coefficient) in graded-lex order."""
        if self.is_zero():
            return None
        e = max(self.coeffs)
        return e, self.coeffs[e]

    def __repr__(self):
        if self.is_zero():
            return "0"
        names = "xyzw" if self.dim <= 4 else None
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            mono = "*".join(
                (names[i] if names else f"x{i}") + (f"^{k}" if k > 1 else "")
                for i, k in enumerate(e) if k > 0)
            if mono:
                coef = "" if c == 1 else ("-" if c == -1 else rat_str(c) + "*")
                parts.append(coef + mono)
            else:
                parts.append(rat_str(c))
        return " + ".join(parts).replace("+ -", "- ")


def poly_add(p, q):
    return p + q


def poly_mul(p, q):
    return p * q


def monomial_exponents(dim, degree):
    """All exponent tuples of the given total degree, in sorted order."""
    if dim == 0:
        return [()] if degree == 0 else []
    out = []
    for head in range(degree, -1, -1):
        for tail in monomial_exponents(dim - 1, degree - head):
            out.append((head,) + tail)
    return sorted(out)


class LinSubspace:
    """A rational linear subspace, kept as an independent basis."""

    __slots__ = ("dim", "basis")

    def __init__(self, dim, vectors):
        self.dim = dim
        self.basis = tuple(span_basis([vec(v) for v in vectors]))

    def rank(self):
        return len(self.basis)


def restrict_to_span(p, subspace):
    """Rewrite p as a polynomial in parameters of the subspace.

    Substitutes x = sum_i s_i b_i for the basis b of the subspace; the result
    lives in ``rank`` many parameter variables.
    """
    basis = subspace.basis if isinstance(subspace, LinSubspace) else tuple(span_basis([vec(v) for v in subspace]))
    r = len(basis)
    images = []
    for i in range(p.dim):
        images.append(HomogPoly.linear_form([basis[j][i] for j in range(r)]) if r else HomogPoly.zero(0, 1))
    return p.substitute(images)


def equal_on_span(p, q, subspace):
    """Do p and q agree as functions on the given linear subspace?"""
    if p.dim != q.dim:
        raise ValueError("ambient dimension mismatch")
    diff = p - q
    if diff.is_zero():
        return True
    return restrict_to_span(diff, subspace).is_zero()


def divide_exact(p, divisor):
    """Exact quotient p / divisor, or (quotient, remainder) evidence.

    Multivariate long division by a single divisor in graded-lex order;
    returns (q, r) with p = q*divisor + r and no term of r divisible by the
    divisor's leading monomial.  Exactness of the division is r == 0.
    """
    if divisor.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lead_e, lead_c = divisor.leading()
    quot = HomogPoly.zero(p.dim, max(p.degree - divisor.degree, 0))
    rem = HomogPoly.zero(p.dim, p.degree)
    work = p
    while not work.is_zero():
        e, c = work.leading()
        if all(a >= b for a, b in zip(e, lead_e)):
            me = tuple(a - b for a, b in zip(e, lead_e))
            mono = HomogPoly(p.dim, sum(me), {me: c / lead_c})
            quot = quot + mono if not quot.is_zero() else mono
            work = work - mono * divisor
        else:
            mono = HomogPoly(p.dim, sum(e), {e: c})
            rem = rem + mono if not rem.is_zero() else mono
            work = work - mono
    return quot, rem


def _canonical_linear(form):
    """Scale a linear form to integer coprime coefficients with positive
    leading coefficient; returns (canonical form, scalar) with
    form = scalar * canonical."""
    if form.degree != 1 or form.is_zero():
        raise ValueError("denominator factors must be nonzero linear forms")
    coeffs = [form.coeffs.get(tuple(1 if i == j else 0 for j in range(form.dim)), Fraction(0))
              for i in range(form.dim)]
    from .qlinalg import primitive
    prim = list(primitive(coeffs))
    idx = next(i for i, c in enumerate(prim) if c != 0)
    if prim[idx] < 0:
        prim = [-c for c in prim]
    scalar = coeffs[idx] / prim[idx]
    return HomogPoly.linear_form(prim), scalar


class RatFun:
    """A formal quotient numerator / product of linear forms.

    The denominator is a multiset of canonical linear forms; it is never
    expanded.  Construction cancels numeric scalars into the numerator.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, linear_factors=()):
        den = {}
        scale = Fraction(1)
        for f in linear_factors:
            canon, scalar = _canonical_linear(f)
            scale *= scalar
            den[canon] = den.get(canon, 0) + 1
        self.numerator = numerator.scale(1 / scale) if scale != 1 else numerator
        self.denominator = den

    def degree(self):
        return self.numerator.degree - sum(self.denominator.values())


def ratfun_sum_to_poly(terms, dim=None, degree=None):
    """Exact sum of rational functions, collapsed to a polynomial.

    Brings all terms over the least common denominator, then divides the
    combined numerator by each linear factor in turn.  Raises
    :class:`NotPolynomial` (with the remainder as witness) if any division
    fails, which signals an invalid input map rather than a rounding issue.
    """
    terms = list(terms)
    if not terms:
        if dim is None or degree is None:
            raise ValueError("empty sum needs explicit dim and degree")
        return HomogPoly.zero(dim, max(degree, 0))
    dim = terms[0].numerator.dim
    lcm = {}
    for t in terms:
        for f, k in t.denominator.items():
            lcm[f] = max(lcm.get(f, 0), k)
    total = None
    for t in terms:
        num = t.numerator
        for f, k in lcm.items():
            extra = k - t.denominator.get(f, 0)
            for _ in range(extra):
                num = num * f
        total = num if total is None else total + num
    if total.is_zero():
        return HomogPoly.zero(dim, max((degree if degree is not None else 0), 0))
    for f, k in lcm.items():
        for _ in range(k):
            total, rem = divide_exact(total, f)
            if not rem.is_zero():
                raise NotPolynomial("rational-function sum is not a polynomial", remainder=rem)
    return total


def random_homog(rng, dim, degree, coeff_range=9):
    """Deterministic random polynomial with small rational coefficients."""
    coeffs = {}
    for e in monomial_exponents(dim, degree):
        num = rng.randint(-coeff_range, coeff_range)
        den = rng.randint(1, 3)
        if num:
            coeffs[e] = Fraction(num, den)
    return HomogPoly(dim, degree, coeffs)
