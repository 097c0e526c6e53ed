"""Exact rational and lattice linear algebra.

Everything here is dense and exact: vectors are tuples of
:class:`fractions.Fraction`, matrices are tuples of row tuples.  Solutions
and kernels verify by substitution with no tolerance.  Problem sizes are
graded pieces of piecewise-polynomial spaces, at most a few hundred
coordinates, so no attempt is made at asymptotic cleverness.
"""

from fractions import Fraction
from math import gcd

Rat = Fraction


def rat(x):
    """Coerce ints, Fractions and "p/q" strings to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to a rational")


def rat_str(q):
    """Serialize a rational as "p/q", omitting the denominator when 1."""
    q = rat(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def vec(entries):
    return tuple(rat(e) for e in entries)


def mat(rows):
    rows = tuple(vec(r) for r in rows)
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix")
    return rows


def zero_vec(n):
    return (Fraction(0),) * n


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vscale(c, u):
    c = rat(c)
    return tuple(c * a for a in u)


def vdot(u, v):
    return sum((a * b for a, b in zip(u, v, strict=True)), Fraction(0))


def is_zero_vec(u):
    return all(a == 0 for a in u)


def mat_vec(A, x):
    return tuple(vdot(row, x) for row in A)


def transpose(A):
    return tuple(zip(*A)) if A else ()


def rref(A):
    """Reduced row echelon form.  Returns (rows, pivot column indices)."""
    rows = [list(r) for r in A]
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return tuple(tuple(row) for row in rows), tuple(pivots)


def rank(A):
    return len(rref(A)[1])


def solve(A, b):
    """One exact solution of A x = b, or None if the system is inconsistent.

    Free variables are set to zero, so the returned solution is deterministic.
    """
    A = mat(A)
    b = vec(b)
    if len(A) != len(b):
        raise ValueError("dimension mismatch between matrix and right-hand side")
    if not A:
        return ()
    n = len(A[0])
    aug = mat([list(row) + [bi] for row, bi in zip(A, b)])
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = red[i][n]
    return tuple(x)


def kernel_basis(A):
    """Basis of the exact null space of A; empty list iff A is injective."""
    A = mat(A)
    if not A:
        return []
    n = len(A[0])
    red, pivots = rref(A)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -red[i][f]
        basis.append(tuple(v))
    return basis


def det(A):
    A = [list(r) for r in mat(A)]
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("determinant needs a square matrix")
    d = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if A[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            A[c], A[pivot] = A[pivot], A[c]
            d = -d
        d *= A[c][c]
        inv = 1 / A[c][c]
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] * inv
                for j in range(c, n):
                    A[i][j] -= f * A[c][j]
    return d


def in_span(vectors, target):
    """Is target in the rational span of the given vectors?"""
    if not vectors:
        return is_zero_vec(target)
    return solve(transpose(mat(vectors)), target) is not None


def span_basis(vectors):
    """Subset-free basis of the span, as the nonzero rows of the RREF."""
    if not vectors:
        return []
    red, pivots = rref(mat(vectors))
    return [red[i] for i in range(len(pivots))]


def complement_basis(vectors, dim):
    """Extend span(vectors) by standard basis vectors to all of Q^dim."""
    basis = list(span_basis(vectors))
    for j in range(dim):
        e = tuple(Fraction(1 if i == j else 0) for i in range(dim))
        if not in_span(basis, e):
            basis.append(e)
    return basis[len(span_basis(vectors)):]


# ---------------------------------------------------------------------------
# integer lattice algorithms
# ---------------------------------------------------------------------------


def _swap_rows(M, i, j):
    M[i], M[j] = M[j], M[i]


def _swap_cols(M, i, j):
    for row in M:
        row[i], row[j] = row[j], row[i]


def _add_row(M, dst, src, q):
    # row_dst += q * row_src
    M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]


def _add_col(M, dst, src, q):
    for row in M:
        row[dst] += q * row[src]


def smith_normal_form(A):
    """Smith normal form of an integer matrix.

    Returns (U, D, V) with U*A*V = D, U and V unimodular, and the diagonal
    of D a divisibility chain d1 | d2 | ... with nonnegative entries.
    """
    M = [[int(x) for x in row] for row in A]
    m = len(M)
    n = len(M[0]) if m else 0
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def min_entry(s):
        best = None
        for i in range(s, m):
            for j in range(s, n):
                if M[i][j] != 0 and (best is None or abs(M[i][j]) < abs(M[best[0]][best[1]])):
                    best = (i, j)
        return best

    s = 0
    while True:
        pos = min_entry(s)
        if pos is None:
            break
        while True:
            i, j = min_entry(s)
            _swap_rows(M, s, i), _swap_rows(U, s, i)
            _swap_cols(M, s, j), _swap_cols(V, s, j)
            dirty = False
            for r in range(s + 1, m):
                if M[r][s] != 0:
                    q = -(M[r][s] // M[s][s])
                    _add_row(M, r, s, q), _add_row(U, r, s, q)
                    dirty = dirty or M[r][s] != 0
            for c in range(s + 1, n):
                if M[s][c] != 0:
                    q = -(M[s][c] // M[s][s])
                    _add_col(M, c, s, q), _add_col(V, c, s, q)
                    dirty = dirty or M[s][c] != 0
            if not dirty:
                # pivot must divide the whole remaining block
                bad = next(((r, c) for r in range(s + 1, m) for c in range(s + 1, n)
                            if M[r][c] % M[s][s] != 0), None)
                if bad is None:
                    break
                _add_row(M, s, bad[0], 1), _add_row(U, s, bad[0], 1)
        if M[s][s] < 0:
            M[s] = [-x for x in M[s]]
            U[s] = [-x for x in U[s]]
        s += 1
        if s == min(m, n):
            break

    Ut = tuple(tuple(r) for r in U)
    Vt = tuple(tuple(r) for r in V)
    Dt = tuple(tuple(r) for r in M)
    return Ut, Dt, Vt


def primitive(direction):
    """Primitive integer vector on the ray through a rational direction."""
    d = vec(direction)
    if is_zero_vec(d):
        raise ValueError("zero vector has no primitive representative")
    denom = 1
    for x in d:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in d]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(Fraction(x // g) for x in ints)


def hermite_row_basis(rows):
    """Basis of the integer row span of an integer matrix (row-style HNF)."""
    M = [[int(x) for x in row] for row in rows]
    if not M:
        return []
    n = len(M[0])
    basis = []
    r = 0
    for c in range(n):
        pivot = None
        for i in range(r, len(M)):
            if M[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        _swap_rows(M, r, pivot)
        # euclidean elimination below the pivot
        while True:
            nz = [i for i in range(r + 1, len(M)) if M[i][c] != 0]
            if not nz:
                break
            for i in nz:
                q = -(M[i][c] // M[r][c])
                _add_row(M, i, r, q)
                if M[i][c] != 0 and abs(M[i][c]) < abs(M[r][c]):
                    _swap_rows(M, r, i)
        if M[r][c] < 0:
            M[r] = [-x for x in M[r]]
        r += 1
    return [tuple(Fraction(x) for x in row) for row in M[:r] if any(row)]


def lattice_basis(generators):
    """Basis of the lattice generated by rational vectors in Q^n.

    Clears denominators uniformly, runs an integer Hermite reduction and
    scales back, so the result generates exactly the same subgroup.
    """
    gens = [vec(g) for g in generators if not is_zero_vec(vec(g))]
    if not gens:
        return []
    scale = 1
    for g in gens:
        for x in g:
            scale = scale * x.denominator // gcd(scale, x.denominator)
    int_rows = [[int(x * scale) for x in g] for g in gens]
    basis = hermite_row_basis(int_rows)
    return [tuple(x / scale for x in row) for row in basis]


def coords_in_lattice(basis, target):
    """Integer coordinates of target in the given lattice basis, or None."""
    if not basis:
        return None if not is_zero_vec(vec(target)) else ()
    sol = solve(transpose(mat(basis)), vec(target))
    if sol is None or any(x.denominator != 1 for x in sol):
        return None
    return tuple(int(x) for x in sol)


def primitive_in_lattice(basis, direction):
    """Shortest lattice point on the ray through direction; None if the ray
    misses the lattice's rational span."""
    d = vec(direction)
    sol = solve(transpose(mat(basis)), d) if basis else None
    if sol is None:
        return None
    coords = primitive(sol)
    out = zero_vec(len(d))
    for c, b in zip(coords, basis):
        out = vadd(out, vscale(c, b))
    # orient along the given direction
    for a, b in zip(out, d):
        if a != 0 or b != 0:
            if (a < 0 < b) or (b < 0 < a):
                out = vscale(-1, out)
            break
    return out


def mat_inverse(A):
    """Exact inverse of a square rational matrix."""
    A = mat(A)
    n = len(A)
    aug = mat([list(row) + [Fraction(1 if i == j else 0) for j in range(n)]
               for i, row in enumerate(A)])
    red, pivots = rref(aug)
    if list(pivots) != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(row[n:] for row in red)


def integer_kernel_basis(A):
    """Saturated basis of {x in Z^n : A x = 0} for an integer matrix A.

    Uses the Smith normal form: with U A V = D, the kernel is spanned by the
    columns of V matching zero diagonal entries, and V unimodular makes the
    result saturated.
    """
    A = [[int(x) for x in row] for row in A]
    if not A:
        raise ValueError("need explicit column count; pass a zero row instead")
    n = len(A[0])
    _, D, V = smith_normal_form(A)
    cols = []
    for j in range(n):
        dj = D[j][j] if j < len(D) and j < len(D[0]) else 0
        if dj == 0:
            cols.append(tuple(Fraction(V[i][j]) for i in range(n)))
    return cols


def rays_extend_to_basis(rays, lattice=None):
    """Do the (primitive) rays extend to a basis of the lattice?

    The test is the Smith normal form one: the coordinate matrix of the rays
    must have all invariant factors equal to 1.  With ``lattice`` omitted the
    ambient lattice is Z^n.
    """
    rays = [vec(r) for r in rays]
    if not rays:
        return True
    if lattice is None:
        n = len(rays[0])
        lattice = [tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)]
    coord_rows = []
    for r in rays:
        coords = coords_in_lattice(lattice, r)
        if coords is None:
            return False
        coord_rows.append(coords)
    _, D, _ = smith_normal_form(coord_rows)
    k = len(coord_rows)
    invariants = [D[i][i] for i in range(min(k, len(D[0]) if D else 0))]
    return len([d for d in invariants if d != 0]) == k and all(d == 1 for d in invariants if d != 0)
