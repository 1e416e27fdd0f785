import random
from fractions import Fraction

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings, strategies as st

from flattori.linalg import (
    DimensionError,
    LinearStructure,
    Matrix,
    NotNilpotentError,
    NotUnipotentError,
    StructureKind,
    Vector,
    commute,
    is_nilpotent,
    is_structure_linear,
    is_unipotent,
    nilpotent_exp,
    nilpotent_log,
    nullspace,
    nullspace_sparse,
    rank,
    validate_structure,
)

from helpers import random_matrix, random_nilpotent, random_unipotent

ID2 = Matrix.identity(2)
SHEAR = Matrix([[1, 1], [0, 1]])
E12 = Matrix([[0, 1], [0, 0]])
I_STD = Matrix([[0, -1], [1, 0]])


def test_scalars_are_exact():
    M = Matrix([["1/3", 0], [0, 3]])
    assert M @ M.inverse() == ID2
    assert M[0, 0] == Fraction(1, 3)
    with pytest.raises(TypeError):
        Matrix([[0.5]])


def test_matrix_shape_errors():
    with pytest.raises(DimensionError):
        Matrix([[1, 2], [3]])
    with pytest.raises(DimensionError):
        Matrix([[1, 2]]) @ Matrix([[1, 2]])
    with pytest.raises(DimensionError):
        is_nilpotent(Matrix([[1, 2]]))
    with pytest.raises(DimensionError):
        commute(ID2, Matrix.identity(3))


def test_transpose_and_det():
    M = Matrix([[1, 2, 3], [4, 5, 6]])
    assert M.T.shape == (3, 2)
    assert M.T.T == M
    assert Matrix([[2, 1], [7, 4]]).det() == 1
    assert Matrix([[1, 2], [2, 4]]).det() == 0


class TestNilpotent:
    def test_examples(self):
        assert is_nilpotent(E12)
        assert not is_nilpotent(ID2)
        assert is_nilpotent(SHEAR - ID2)

    def test_nilpotent_needs_full_power(self):
        # shift on R^5: N^4 != 0, N^5 = 0
        N = Matrix([[int(j == i + 1) for j in range(5)] for i in range(5)])
        assert is_nilpotent(N)
        assert not is_nilpotent(N + Matrix([[int(i == 4 and j == 0) for j in range(5)] for i in range(5)]))

    def test_unipotent_examples(self):
        assert is_unipotent(ID2)
        assert not is_unipotent(ID2 * 2)
        assert is_unipotent(SHEAR)


def test_commute_examples():
    M = Matrix([[3, -1], [2, 5]])
    assert commute(ID2, M)
    assert not commute(E12, Matrix([[0, 0], [1, 0]]))
    assert not commute(E12, I_STD)
    assert E12 @ I_STD == Matrix([[1, 0], [0, 0]])
    assert I_STD @ E12 == Matrix([[0, 0], [0, 1]])


class TestNullspace:
    def test_examples(self):
        assert len(nullspace(Matrix.zeros(2))) == 2
        assert nullspace(ID2) == []
        assert nullspace(E12) == [Vector([1, 0])]

    def test_rectangular(self):
        M = Matrix([[1, 2, 3], [2, 4, 6]])
        basis = nullspace(M)
        assert len(basis) == 2
        assert all((M @ v).is_zero() for v in basis)

    def test_sparse_rows_with_fractions(self):
        basis = nullspace_sparse([{0: Fraction(1, 2), 2: -1}], 3)
        assert basis == [Vector([0, 1, 0]), Vector([2, 0, 1])]

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 2**32), st.integers(1, 6), st.integers(1, 6))
    def test_rank_nullity(self, seed, n, m):
        rng = random.Random(seed)
        M = random_matrix(rng, n, m, mag=2)
        if rng.random() < 0.5 and n > 1:
            # force a dependent row
            rows = M.tolist()
            rows[-1] = [a + b for a, b in zip(rows[0], rows[1 % n])]
            M = Matrix(rows)
        basis = nullspace(M)
        assert len(basis) + rank(M) == m
        assert all((M @ v).is_zero() for v in basis)
        if basis:
            assert rank(Matrix.from_columns(basis)) == len(basis)
        # float oracle for the rank
        assert rank(M) == np.linalg.matrix_rank(np.array(M.tolist(), dtype=float))


class TestExpLog:
    def test_exp_examples(self):
        assert nilpotent_exp(Matrix.zeros(3)) == Matrix.identity(3)
        assert nilpotent_exp(E12) == SHEAR
        N = Matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        assert nilpotent_exp(N) == Matrix([[1, 1, "1/2"], [0, 1, 1], [0, 0, 1]])

    def test_log_examples(self):
        assert nilpotent_log(ID2) == Matrix.zeros(2)
        assert nilpotent_log(SHEAR) == E12
        M = Matrix([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
        assert nilpotent_log(M) == Matrix([[0, 1, "-1/2"], [0, 0, 1], [0, 0, 0]])

    def test_preconditions(self):
        with pytest.raises(NotNilpotentError):
            nilpotent_exp(ID2)
        with pytest.raises(NotUnipotentError):
            nilpotent_log(ID2 * 2)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 2**32), st.integers(1, 6))
    def test_roundtrip(self, seed, n):
        rng = random.Random(seed)
        N = random_nilpotent(rng, n)
        E = nilpotent_exp(N)
        assert is_unipotent(E)
        assert nilpotent_log(E) == N
        M = random_unipotent(rng, n)
        assert nilpotent_exp(nilpotent_log(M)) == M

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**32), st.integers(1, 5))
    def test_exp_matches_float_expm(self, seed, n):
        N = random_nilpotent(random.Random(seed), n)
        exact = np.array(nilpotent_exp(N).tolist(), dtype=float)
        approx = scipy.linalg.expm(np.array(N.tolist(), dtype=float))
        assert np.allclose(exact, approx, rtol=1e-9, atol=1e-9 * max(1.0, np.abs(exact).max()))

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 2**32), st.integers(1, 6))
    def test_unipotent_has_unit_determinant(self, seed, n):
        assert random_unipotent(random.Random(seed), n).det() == 1


def _hamilton(p, q):
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def _left_by(u):
    unit = [0, 0, 0, 0]
    unit[u] = 1
    cols = []
    for c in range(4):
        e = [0, 0, 0, 0]
        e[c] = 1
        cols.append(_hamilton(unit, e))
    return Matrix.from_columns(cols)


class TestStructures:
    def test_complex_standard_passes(self):
        assert validate_structure(LinearStructure(StructureKind.COMPLEX, 2, I=I_STD)).ok

    def test_identity_is_not_complex(self):
        rep = validate_structure(LinearStructure(StructureKind.COMPLEX, 2, I=ID2))
        assert not rep.ok
        assert not rep["I_squared"].passed

    def test_quaternionic_standard_matches_hamilton_table(self):
        S = LinearStructure.quaternionic_standard(4)
        assert S.I == _left_by(1)
        assert S.J == _left_by(2)
        assert S.K == _left_by(3)
        rep = validate_structure(S)
        assert rep.ok
        assert S.K @ S.K == -Matrix.identity(4)

    def test_odd_complex_dimension_fails(self):
        S = LinearStructure(StructureKind.COMPLEX, 3, I=Matrix.zeros(3))
        assert not validate_structure(S)["dimension"].passed

    def test_operator_presence_is_enforced(self):
        with pytest.raises(ValueError):
            LinearStructure(StructureKind.COMPLEX, 2)
        with pytest.raises(DimensionError):
            LinearStructure(StructureKind.COMPLEX, 4, I=I_STD)

    def test_structure_linearity_examples(self):
        S = LinearStructure.complex_standard(2)
        assert is_structure_linear(ID2, S)
        assert is_structure_linear(ID2, LinearStructure.real(2))
        assert not is_structure_linear(E12, S)
        # z -> (0, z1): W_1 -> W_2 on C^2 with block-diagonal I
        B = Matrix([[0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0]])
        assert is_structure_linear(B, LinearStructure.complex_standard(4))
        with pytest.raises(DimensionError):
            is_structure_linear(Matrix.identity(3), S)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 2**32), st.sampled_from([4, 8]))
    def test_commuting_with_i_and_j_implies_k(self, seed, n):
        rng = random.Random(seed)
        S = LinearStructure.quaternionic_standard(n)
        m = n // 4
        if rng.random() < 0.7:
            # right multiplication by a random quaternionic matrix commutes with I and J
            from flattori.linalg import quaternion_right_mult

            blocks = [[sum((quaternion_right_mult(u) * rng.randint(-3, 3) for u in range(4)), Matrix.zeros(4))
                       for _ in range(m)] for _ in range(m)]
            M = Matrix([sum((list(blocks[r][s].rows[i]) for s in range(m)), []) for r in range(m) for i in range(4)])
        else:
            M = random_matrix(rng, n)
        if commute(M, S.I) and commute(M, S.J):
            assert commute(M, S.K)
        assert is_structure_linear(M, S) == (commute(M, S.I) and commute(M, S.J))
