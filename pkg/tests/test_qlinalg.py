import random
from fractions import Fraction as Q

from ppchow.qlinalg import (det, hermite_row_basis, integer_kernel_basis,
                            kernel_basis, lattice_basis, mat, mat_vec,
                            primitive, rat, rat_str, rays_extend_to_basis,
                            smith_normal_form, solve, vec)


def test_rat_parsing():
    assert rat("3/4") == Q(3, 4)
    assert rat(5) == Q(5)
    assert rat_str(Q(3, 4)) == "3/4"
    assert rat_str(Q(4, 2)) == "2"


def test_solve_identity_scaled():
    assert solve([[1]], [2]) == (Q(2),)


def test_solve_two_by_two():
    assert solve([[1, 1], [1, -1]], [0, 2]) == (Q(1), Q(-1))


def test_solve_random_by_substitution():
    rng = random.Random(0)
    for _ in range(5):
        while True:
            A = mat([[Q(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(6)]
                     for _ in range(6)])
            if det(A) != 0:
                break
        x_true = vec([rng.randint(-5, 5) for _ in range(6)])
        b = mat_vec(A, x_true)
        x = solve(A, b)
        assert mat_vec(A, x) == tuple(b)


def test_solve_inconsistent():
    assert solve([[1, 1], [1, 1]], [0, 1]) is None


def test_kernel_identity_and_rank_one():
    assert kernel_basis([[1, 0], [0, 1]]) == []
    basis = kernel_basis([[1, 1]])
    assert len(basis) == 1
    v = basis[0]
    assert v[0] + v[1] == 0 and v != (0, 0)


def test_kernel_of_rho_degree_one_on_f2_by_brute_force():
    # unknowns: slopes (a-, a+) at vertex 0 and (b-, b+) at vertex 1; the
    # single gluing constraint on the shared segment forces b- = a+
    A = [[0, 1, -1, 0]]
    assert len(kernel_basis(A)) == 3


def test_kernel_substitution():
    A = [[2, 3, 5], [1, -1, 0]]
    for v in kernel_basis(A):
        assert all(x == 0 for x in mat_vec(mat(A), v))


def test_snf_examples():
    _, D, _ = smith_normal_form([[2]])
    assert D[0][0] == 2
    _, D, _ = smith_normal_form([[1, 0], [0, 1]])
    assert D[0][0] == 1 and D[1][1] == 1
    U, D, V = smith_normal_form([[2, 4], [6, 8]])
    assert (D[0][0], D[1][1]) == (2, 4)


def test_snf_random_properties():
    rng = random.Random(1)
    for _ in range(10):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        A = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        U, D, V = smith_normal_form(A)
        assert det(U) in (1, -1) and det(V) in (1, -1)
        UA = [[sum(U[i][k] * A[k][j] for k in range(m)) for j in range(n)]
              for i in range(m)]
        UAV = [[sum(UA[i][k] * V[k][j] for k in range(n)) for j in range(n)]
               for i in range(m)]
        assert all(UAV[i][j] == D[i][j] for i in range(m) for j in range(n))
        diag = [D[i][i] for i in range(min(m, n))]
        for a, b in zip(diag, diag[1:]):
            if b != 0:
                assert a != 0 and b % a == 0


def test_primitive():
    assert primitive([Q(1, 2), Q(1)]) == (Q(1), Q(2))
    assert primitive([-2, -4]) == (Q(-1), Q(-2))


def test_lattice_and_kernel_helpers():
    basis = lattice_basis([(1, 0), (0, 1), (Q(1, 2), Q(1, 2))])
    # index-2 overlattice of Z^2
    assert len(basis) == 2
    ker = integer_kernel_basis([[1, -2]])
    assert len(ker) == 1 and ker[0][0] - 2 * ker[0][1] == 0
    assert rays_extend_to_basis([(1, 0)])
    assert rays_extend_to_basis([(1, 0), (1, 1)])
    assert not rays_extend_to_basis([(1, 0), (1, 2)])


def test_hermite_row_basis():
    basis = hermite_row_basis([[2, 0], [0, 2], [1, 1]])
    assert len(basis) == 2
