from __future__ import annotations

import itertools
import random

import pytest

from grasspole.errors import DegreeBoundExceeded, DimensionMismatch, NonSquare
from grasspole.fields import QQ, make_field
from grasspole.matrix import (
    ConstMatrix,
    PolyMatrix,
    adjugate,
    is_left_prime,
    left_kernel_min_basis,
    leading_row_coefficients,
    maximal_minors,
    multi_indices,
    poly_rank,
    rref,
    stacked_det,
    system_degree,
)
from grasspole.poly import NEG_INF, Poly
from grasspole.systems import random_matrix

F2, F3, F5, F7 = (make_field(q) for q in (2, 3, 5, 7))


def P(F, *coeffs):
    return Poly(F, coeffs)


def random_poly_matrix(F, r, c, rng, deg=2):
    return PolyMatrix(
        F, [[[rng.randrange(F.order) for _ in range(deg + 1)] for _ in range(c)] for _ in range(r)]
    )


# Example matrices (entries as ascending coefficient lists)
EX_2X4 = [[[0], [0, 1], [1, 1], [0, 0, 1]], [[1], [1, 0, 1], [1], [0, 1]]]
EX_MONO = [[[1], [0], [0, 0, 1], [0, 0, 0, 2]], [[0], [1], [0, 1], [0, 0, 1]]]
EX_DEG = [[[1], [0, 1], [0, 1], [0, 0, 1]], [[0], [1], [2], [0, 3]]]


def test_det_identity_and_small():
    assert ConstMatrix.identity(F5, 3).det() == F5(1)
    M = PolyMatrix(F3, [[[0, 1], [1]], [[1], [0, 1]]])
    assert M.det() == P(F3, -1, 0, 1)


def test_det_requires_square():
    with pytest.raises(NonSquare):
        ConstMatrix(F5, [[1, 2, 3]]).det()
    with pytest.raises(NonSquare):
        PolyMatrix(F5, [[[1], [2]]]).det()


def test_det_exhaustive_small_over_f2():
    for n in (2, 3):
        for bits in itertools.product((0, 1), repeat=n * n):
            M = ConstMatrix(F2, [bits[i * n:(i + 1) * n] for i in range(n)])
            assert M.det() == M.det_cofactor()


def test_bareiss_matches_cofactor():
    rng = random.Random(1)
    for F in (F2, F3, F7):
        for n in range(1, 7):
            M = random_poly_matrix(F, n, n, rng, deg=1 if n > 4 else 2)
            assert M.det() == M.det_cofactor()
    for n in range(1, 5):
        M = PolyMatrix(QQ, [[[rng.randint(-3, 3) for _ in range(2)] for _ in range(n)] for _ in range(n)])
        assert M.det() == M.det_cofactor()


def test_rref_examples():
    R, rank, piv = rref(ConstMatrix(F5, [[0, 1], [1, 0]]))
    assert R == ConstMatrix.identity(F5, 2) and piv == (0, 1)
    R, rank, piv = rref(ConstMatrix(F5, [[0, 1, 2, 0], [0, 0, 0, 1]]))
    assert piv == (1, 3)  # columns 2 and 4, 1-based
    assert ConstMatrix.zeros(F5, 2, 3).rank() == 0


def test_rref_idempotent_and_row_space():
    rng = random.Random(2)
    for _ in range(30):
        M = random_matrix(F7, rng.randint(1, 4), rng.randint(1, 5), rng)
        R, rank, piv = M.rref()
        assert R.rref()[0] == R
        assert M.vstack(R).rank() == rank == M.rank()
        assert list(piv) == sorted(set(piv))


def test_maximal_minors_monomial_example():
    M = PolyMatrix(F5, EX_MONO)
    got = maximal_minors(M)
    # 1, s, s^2, -s^2, -2 s^3, -s^4 with alpha = 2
    want = [P(F5, 1), P(F5, 0, 1), P(F5, 0, 0, 1), P(F5, 0, 0, -1), P(F5, 0, 0, 0, -2), P(F5, 0, 0, 0, 0, -1)]
    assert got == want


def test_maximal_minors_identity_block():
    M = ConstMatrix.identity(F5, 2).hstack(ConstMatrix.zeros(F5, 2, 2)).to_poly()
    assert [g.c for g in maximal_minors(M)] == [(1,), (), (), (), (), ()]


def _det2(a, b, c, d):
    return a * d - b * c


def test_example_2x4_minors_against_2x2_formula():
    M = PolyMatrix(F2, EX_2X4)
    oracle = [_det2(M[0, i], M[0, j], M[1, i], M[1, j]) for i, j in itertools.combinations(range(4), 2)]
    assert maximal_minors(M) == oracle
    assert [str(g) for g in oracle] == ["s", "s + 1", "s^2", "s^3 + s^2 + 1", "s^4", "s"]


def test_stacked_det_block_case_and_example():
    D = PolyMatrix(F5, [[[0, 1], [1]], [[0], [1, 1]]])
    M = PolyMatrix.identity(F5, 2).scale(Poly.zero(F5)).hstack(D)
    K = ConstMatrix.identity(F5, 2).hstack(ConstMatrix.zeros(F5, 2, 2))
    assert stacked_det(K, M) == D.det()
    K = ConstMatrix(F5, [[0, 1, 2, 0], [0, 0, 0, 1]])
    assert stacked_det(K, PolyMatrix(F5, EX_DEG)).is_zero()
    with pytest.raises(DimensionMismatch):
        stacked_det(ConstMatrix(F5, [[1, 0, 0]]), PolyMatrix(F5, EX_DEG))


def laplace_sign(alpha, m, N):
    comp = [j for j in range(N) if j not in alpha]
    return -1 if (m * (m + 1) // 2 + sum(c + 1 for c in comp)) % 2 else 1


def test_laplace_expansion_random_f7():
    rng = random.Random(3)
    for _ in range(100):
        m, p = rng.randint(1, 3), rng.randint(1, 3)
        N = m + p
        K = random_matrix(F7, m, N, rng)
        M = random_poly_matrix(F7, p, N, rng, deg=2)
        total = Poly.zero(F7)
        for alpha, g in zip(multi_indices(N, p), maximal_minors(M)):
            comp = [j for j in range(N) if j not in alpha]
            k_alpha = K.take_columns(comp).det()
            total = total + g.scale(k_alpha * laplace_sign(alpha, m, N))
        assert total == stacked_det(K, M)


def test_left_kernel_examples():
    F = QQ
    T = PolyMatrix(F, [[[0, 1]], [[1]]])
    B = left_kernel_min_basis(T)
    assert (B @ T).is_zero() and B.nrows == 1 and B.degree == 1
    # row proportional to [1, -s]
    assert B[0, 0].is_constant() and B[0, 1] == -(B[0, 0] * Poly.s(F))


def test_left_kernel_shift_system():
    A = ConstMatrix(F5, [[0, 1], [0, 0]])
    C = ConstMatrix(F5, [[1, 0]])
    T = PolyMatrix.s_minus(A).vstack(C.to_poly())
    B = left_kernel_min_basis(T)
    assert (B @ T).is_zero()
    assert B.nrows == 1 and B.degree == 2
    assert B[0, 2].degree == 2  # the D part carries s^2 up to scaling


def test_left_kernel_random_observable():
    from grasspole.systems import observability_rank, random_state_space

    rng = random.Random(4)
    for _ in range(20):
        ss = random_state_space(F7, rng.randint(1, 4), 1, rng.randint(1, 3), rng)
        T = PolyMatrix.s_minus(ss.A).vstack(ss.C.to_poly())
        B = left_kernel_min_basis(T)
        assert (B @ T).is_zero()
        row_degrees = [max(g.degree for g in row) for row in B.rows]
        assert sum(row_degrees) == ss.n
        assert leading_row_coefficients(B).rank() == B.nrows
        assert observability_rank(ss) == ss.n


def test_left_kernel_degree_bound():
    T = PolyMatrix(F5, [[[0, 1]], [[0, 0, 1]]])
    with pytest.raises(DegreeBoundExceeded):
        left_kernel_min_basis(T, degree_bound=0)


def test_left_prime_and_degree():
    M = PolyMatrix(F2, EX_2X4)
    assert is_left_prime(M) and system_degree(M) == 4
    n = 3
    A = ConstMatrix.zeros(F5, n, n)
    sI = PolyMatrix.s_minus(A)
    M = sI.hstack((-ConstMatrix.identity(F5, n)).to_poly())
    assert is_left_prime(M) and system_degree(M) == n
    sI2 = PolyMatrix.s_minus(ConstMatrix.zeros(F5, 2, 2))
    assert not is_left_prime(sI2.hstack(sI2))
    assert system_degree(PolyMatrix(F5, [[[1], [1]], [[1], [1]]]).hstack(PolyMatrix(F5, [[[1]], [[1]]]))) == NEG_INF


def test_adjugate():
    assert adjugate(PolyMatrix.identity(F5, 3)) == PolyMatrix.identity(F5, 3)
    M = PolyMatrix(QQ, [[[0, 1], [1]], [[0], [0, 1]]])
    assert adjugate(M) == PolyMatrix(QQ, [[[0, 1], [-1]], [[0], [0, 1]]])
    rng = random.Random(5)
    for _ in range(10):
        M = random_poly_matrix(F7, 3, 3, rng)
        assert M @ adjugate(M) == PolyMatrix.identity(F7, 3).scale(M.det())


def test_poly_rank():
    M = PolyMatrix(F5, EX_DEG)
    assert poly_rank(M) == 2
    s = PolyMatrix(F5, [[[0, 1], [0, 1]], [[0, 1], [0, 1]]])
    assert poly_rank(s) == 1


def test_solve_and_inverse():
    rng = random.Random(6)
    for _ in range(20):
        A = random_matrix(F7, 3, 3, rng)
        if A.rank() < 3:
            continue
        assert A @ A.inverse() == ConstMatrix.identity(F7, 3)
        b = [F7(rng.randrange(7)) for _ in range(3)]
        x = A.solve(b)
        assert A @ ConstMatrix(F7, [[v] for v in x]) == ConstMatrix(F7, [[v] for v in b])
