import itertools
import random

import pytest
import sympy

from linroots.gf import make_field
from linroots.linalg import Matrix, NotSquare, det, rank, shift_matrix, twist, twisted_product

PAPER_4X4 = [[-1, 3, -3, 0], [0, -1, 3, -3], [-3, 0, -1, 3], [3, -3, 0, -1]]


def _rand_matrix(F, r, c, rng):
    return Matrix.from_rows(F, [[rng.randrange(F.order) for _ in range(c)] for _ in range(r)])


def _rank_by_enumeration(M, p):
    """log_p of the number of distinct F_p-combinations of the rows (prime field)."""
    rows = [M.row(i) for i in range(M.nrows)]
    seen = set()
    for coeffs in itertools.product(range(p), repeat=len(rows)):
        seen.add(tuple(sum(c * r[j] for c, r in zip(coeffs, rows)) % p for j in range(M.ncols)))
    k = 0
    while p**k < len(seen):
        k += 1
    return k


def test_rank_trivial_cases():
    F = make_field(5, 1)
    assert rank(Matrix.zeros(F, 3, 4)) == 0
    assert rank(Matrix.identity(F, 4)) == 4
    assert rank(Matrix.from_ints(F, [[1, -1], [-1, 1]])) == 1


@pytest.mark.parametrize("p", [2, 3, 5])
def test_rank_matches_enumeration(p):
    F = make_field(p, 1)
    rng = random.Random(p)
    for _ in range(30):
        M = _rand_matrix(F, rng.randrange(1, 4), rng.randrange(1, 5), rng)
        if rng.random() < 0.3 and M.nrows > 1:
            M = Matrix.from_rows(F, list(M.rows[:-1]) + [M.rows[0]])
        assert rank(M) == _rank_by_enumeration(M, p)


def test_rank_is_transpose_invariant():
    F = make_field(2, 8)
    rng = random.Random(0)
    for _ in range(30):
        M = _rand_matrix(F, rng.randrange(1, 6), rng.randrange(1, 6), rng)
        assert rank(M) == rank(M.transpose())


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13, 17, 37])
def test_paper_matrix_determinants(p):
    F = make_field(p, 1)
    D = Matrix.from_ints(F, PAPER_4X4)
    assert det(D) == 91 % p
    assert det(D.submatrix(range(3), range(1, 4))) == 9 % p
    assert (det(D) == 0) == (p in (7, 13))


def test_det_matches_sympy_over_prime_fields():
    rng = random.Random(3)
    for p in (3, 7, 101):
        F = make_field(p, 1)
        for _ in range(20):
            n = rng.randrange(1, 5)
            rows = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
            assert det(Matrix.from_ints(F, rows)) == int(sympy.Matrix(rows).det()) % p


def test_det_multiplicative_over_extension():
    F = make_field(3, 4)
    rng = random.Random(4)
    for _ in range(20):
        A, B = _rand_matrix(F, 3, 3, rng), _rand_matrix(F, 3, 3, rng)
        assert det(A @ B) == F.mul(det(A), det(B))
        assert (det(A) == 0) == (rank(A) < 3)
    assert det(Matrix.identity(F, 5)) == 1
    with pytest.raises(NotSquare):
        det(Matrix.zeros(F, 2, 3))


def test_twist():
    F4 = make_field(2, 2)
    w = F4.generator
    M = Matrix.from_rows(F4, [[w]])
    assert twist(M, 1) == Matrix.from_rows(F4, [[F4.mul(w, w)]])
    F = make_field(3, 4)
    N = _rand_matrix(F, 2, 3, random.Random(1))
    assert twist(N, 0) == N
    assert twist(N, 4) == N


def test_twisted_product():
    F = make_field(2, 4)
    rng = random.Random(9)
    M = _rand_matrix(F, 2, 2, rng)
    assert twisted_product(M, 1, 1) == M
    assert twisted_product(M, 1, 2) == twist(M, 1) @ M
    assert twisted_product(M, 3, 3) == twist(M, 6) @ twist(M, 3) @ M
    I = Matrix.identity(F, 3)
    assert twisted_product(I, 2, 5) == I


def test_shift_matrix():
    F = make_field(5, 1)
    assert shift_matrix(F, 4, 0) == Matrix.identity(F, 4)
    assert shift_matrix(F, 2, 1) == Matrix.from_ints(F, [[0, 1], [1, 0]])
    assert shift_matrix(F, 5, 5) == Matrix.identity(F, 5)
    J = shift_matrix(F, 4, 1)
    assert J @ J @ J == shift_matrix(F, 4, 3)


def test_matrix_shape_errors():
    F = make_field(2, 1)
    with pytest.raises(ValueError):
        Matrix.zeros(F, 2, 2) @ Matrix.zeros(F, 3, 1)
