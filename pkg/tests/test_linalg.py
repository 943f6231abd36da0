"""Exact linear algebra over F_p: frozen examples and algebraic properties."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relstab.errors import DimensionMismatch, FieldMismatch
from relstab.linalg import (
    Mat,
    PrimeField,
    direct_sum_mat,
    kernel_basis,
    kronecker,
    mat_mul,
    quotient_projection,
    rank,
    rref,
    solve_linear,
)


def M(p, rows):
    return Mat(PrimeField(p), rows)


class TestPrimeField:
    def test_small_primes_accepted(self):
        for p in (2, 3, 5, 97):
            assert PrimeField(p).p == p

    @pytest.mark.parametrize("bad", [0, 1, 4, 6, 91, 101])
    def test_non_primes_rejected(self, bad):
        with pytest.raises(ValueError):
            PrimeField(bad)

    def test_inverse(self):
        f = PrimeField(7)
        for x in range(1, 7):
            assert (x * f.inv(x)) % 7 == 1


class TestMatMul:
    def test_identity_acts_trivially(self):
        a = M(2, [[1, 0], [1, 1]])
        assert mat_mul(Mat.identity(PrimeField(2), 2), a) == a

    def test_char_two_cancellation(self):
        a = M(2, [[1, 1], [1, 1]])
        b = M(2, [[1], [1]])
        assert mat_mul(a, b) == M(2, [[0], [0]])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            mat_mul(M(2, [[1, 0]]), M(2, [[1, 0]]))

    def test_field_mismatch(self):
        with pytest.raises(FieldMismatch):
            mat_mul(M(2, [[1]]), M(3, [[1]]))

    def test_zero_shapes(self):
        z = Mat.zeros(PrimeField(3), 0, 2)
        out = mat_mul(z, M(3, [[1, 2], [0, 1]]))
        assert out.rows == 0 and out.cols == 2


class TestRref:
    def test_rank_one_repeated_rows(self):
        red, pivots, rk = rref(M(2, [[1, 1], [1, 1]]))
        assert rk == 1 and pivots == (0,)
        assert red == M(2, [[1, 1], [0, 0]])

    def test_zero_matrix(self):
        red, pivots, rk = rref(M(2, [[0, 0, 0], [0, 0, 0], [0, 0, 0]]))
        assert rk == 0 and pivots == ()

    def test_singular_over_f3(self):
        # det([[2,1],[1,2]]) = 3 = 0 mod 3
        assert rank(M(3, [[2, 1], [1, 2]])) == 1

    def test_idempotent(self):
        a = M(5, [[1, 2, 3], [4, 0, 1], [2, 4, 1]])
        red = rref(a).reduced
        assert rref(red).reduced == red


class TestKernel:
    def test_identity_has_no_kernel(self):
        assert kernel_basis(Mat.identity(PrimeField(2), 2)).cols == 0

    def test_single_row(self):
        k = kernel_basis(M(2, [[1, 1]]))
        assert k == M(2, [[1], [1]])

    def test_rank_one_square(self):
        k = kernel_basis(M(2, [[1, 1], [1, 1]]))
        assert k == M(2, [[1], [1]])


class TestSolve:
    def test_identity_system(self):
        b = M(2, [[1], [0]])
        assert solve_linear(Mat.identity(PrimeField(2), 2), b) == b

    def test_free_variable_zeroed(self):
        x = solve_linear(M(2, [[1, 1]]), M(2, [[1]]))
        assert x == M(2, [[1], [0]])

    def test_inconsistent(self):
        assert solve_linear(M(2, [[0]]), M(2, [[1]])) is None

    def test_row_count_checked(self):
        with pytest.raises(DimensionMismatch):
            solve_linear(M(2, [[1], [0]]), M(2, [[1]]))


class TestKroneckerAndSums:
    def test_kron_identity_block_structure(self):
        a = M(2, [[1, 1], [0, 1]])
        k = kronecker(Mat.identity(PrimeField(2), 2), a)
        assert k == direct_sum_mat(a, a)

    def test_direct_sum_entries(self):
        out = direct_sum_mat(M(3, [[1]]), M(3, [[2]]))
        assert out == M(3, [[1, 0], [0, 2]])

    def test_kron_dims(self):
        a = Mat.zeros(PrimeField(2), 2, 3)
        b = Mat.zeros(PrimeField(2), 4, 5)
        k = kronecker(a, b)
        assert (k.rows, k.cols) == (8, 15)


class TestQuotientProjection:
    def test_projection_section_identity(self):
        f = PrimeField(3)
        image = M(3, [[1, 0], [2, 0], [0, 0]])
        proj, sec = quotient_projection(f, 3, image)
        assert proj.rows == 2  # 3 ambient - rank 1
        assert mat_mul(proj, sec) == Mat.identity(f, 2)
        # the image itself dies
        assert mat_mul(proj, image).is_zero()


# ---------------------------------------------------------------- properties

small_prime = st.sampled_from([2, 3, 5])
dims = st.integers(min_value=0, max_value=4)


def mat_strategy(p, rows, cols):
    return st.lists(
        st.lists(st.integers(0, p - 1), min_size=cols, max_size=cols),
        min_size=rows, max_size=rows,
    ).map(lambda entries: Mat(PrimeField(p), np.array(entries, dtype=np.int64).reshape(rows, cols)))


@given(data=st.data(), p=small_prime)
@settings(max_examples=60, deadline=None)
def test_matmul_associative(data, p):
    n = data.draw(st.integers(1, 4))
    a = data.draw(mat_strategy(p, n, n))
    b = data.draw(mat_strategy(p, n, n))
    c = data.draw(mat_strategy(p, n, n))
    assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))


@given(data=st.data(), p=small_prime, r=dims, c=dims)
@settings(max_examples=80, deadline=None)
def test_rank_nullity(data, p, r, c):
    a = data.draw(mat_strategy(p, r, c))
    assert rank(a) + kernel_basis(a).cols == c


@given(data=st.data(), p=small_prime, r=dims, c=dims)
@settings(max_examples=80, deadline=None)
def test_kernel_columns_annihilated(data, p, r, c):
    a = data.draw(mat_strategy(p, r, c))
    k = kernel_basis(a)
    assert mat_mul(a, k).is_zero()


@given(data=st.data(), p=small_prime, r=dims, c=dims)
@settings(max_examples=80, deadline=None)
def test_solve_is_exact_when_consistent(data, p, r, c):
    a = data.draw(mat_strategy(p, r, c))
    x_true = data.draw(mat_strategy(p, c, 1))
    b = mat_mul(a, x_true)
    x = solve_linear(a, b)
    assert x is not None
    assert mat_mul(a, x) == b


@given(data=st.data(), p=small_prime, r=dims, c=dims)
@settings(max_examples=60, deadline=None)
def test_rref_idempotent_property(data, p, r, c):
    a = data.draw(mat_strategy(p, r, c))
    red = rref(a).reduced
    assert rref(red).reduced == red
