"""Vandermonde matrix, determinant, and closed-form inverse against LU oracles."""

import numpy as np
import pytest

from graceful import (
    ConfluentRoots,
    RootSet,
    eval_partial_fraction,
    vandermonde_det,
    vandermonde_inverse,
    vandermonde_matrix,
)
from graceful.vandermonde import coefficient_rows
from helpers import draw_rootset


def cofactor_det_3x3(a):
    """Oracle: Laplace expansion along the first row."""
    return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))


class TestMatrix:
    def test_two_roots(self):
        v = vandermonde_matrix(RootSet((1, 2)))
        assert np.array_equal(v, np.array([[1, 1], [1, 2]], dtype=complex))

    def test_single_root(self):
        v = vandermonde_matrix(RootSet((3 - 1j,)))
        assert np.array_equal(v, np.array([[1]], dtype=complex))

    def test_confluent_rows_repeat(self):
        v = vandermonde_matrix(RootSet((0, 0)))
        assert np.array_equal(v, np.array([[1, 0], [1, 0]], dtype=complex))


class TestDeterminant:
    def test_two_roots_sign_convention(self):
        # rows (1, a_j, ...): det = prod_{j<k} (a_k - a_j) = 2 - 1 = +1
        assert vandermonde_det(RootSet((1, 2))) == 1

    def test_repeated_root_is_zero(self):
        assert vandermonde_det(RootSet((0.5 + 1j, 0.5 + 1j))) == 0

    def test_magnitude_against_cofactor_oracle(self):
        rs = RootSet((1, 2, 4))
        got = vandermonde_det(rs)
        assert abs(abs(got) - 6.0) < 1e-12
        oracle = cofactor_det_3x3(vandermonde_matrix(rs))
        assert abs(got - oracle) < 1e-12

    def test_matches_lu_oracle(self):
        rng = np.random.default_rng(21)
        for _ in range(15):
            rs = draw_rootset(rng, int(rng.integers(2, 7)), min_sep=0.1)
            got = vandermonde_det(rs)
            want = np.linalg.det(vandermonde_matrix(rs))
            assert abs(got - want) <= 1e-9 * max(1.0, abs(want))


class TestInverse:
    def test_two_roots_closed_form(self):
        inv = vandermonde_inverse(RootSet((1, 2)))
        assert np.allclose(inv, [[2, -1], [-1, 1]], atol=1e-15)
        # row 1, col 1: -S_1(alpha_2) / (alpha_1 - alpha_2) = (-2)/(-1) = 2
        assert inv[0, 0] == 2

    def test_single_root(self):
        assert np.array_equal(vandermonde_inverse(RootSet((5 + 2j,))), [[1]])

    def test_inverse_times_matrix_is_identity(self):
        rng = np.random.default_rng(22)
        for _ in range(20):
            m = int(rng.integers(1, 9))
            rs = draw_rootset(rng, m, min_sep=0.1)
            prod = vandermonde_inverse(rs) @ vandermonde_matrix(rs)
            assert np.abs(prod - np.eye(m)).max() < 1e-8

    def test_det_product_against_lu_oracle(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            rs = draw_rootset(rng, int(rng.integers(2, 9)), min_sep=0.1)
            det_inv = np.linalg.det(vandermonde_inverse(rs))  # LU oracle side
            assert abs(vandermonde_det(rs) * det_inv - 1.0) < 1e-8

    def test_rows_reproduce_partial_fraction(self):
        # row i of the inverse dotted with the exponential vector is g_i
        rng = np.random.default_rng(24)
        for _ in range(10):
            rs = draw_rootset(rng, int(rng.integers(1, 7)), min_sep=0.2, max_abs=2.0)
            x = complex(*rng.uniform(-1.5, 1.5, 2))
            inv = vandermonde_inverse(rs)
            expvec = np.exp(np.asarray(rs.roots) * x)
            direct = eval_partial_fraction(rs, x).values
            for i in range(rs.m):
                want = inv[i] @ expvec
                assert abs(want - direct[i]) <= 1e-12 * max(1.0, abs(want))

    def test_same_formula_path_as_partial_fraction(self):
        rs = RootSet((0.3 - 1j, 1.5, -2.0 + 0.5j))
        assert np.array_equal(vandermonde_inverse(rs), coefficient_rows(rs))

    def test_confluent_guard(self):
        with pytest.raises(ConfluentRoots):
            vandermonde_inverse(RootSet((1.0, 1.0 + 1e-9)))

    def test_exact_coincidence_rejected_without_guard(self):
        with pytest.raises(ConfluentRoots):
            coefficient_rows(RootSet((2.0, 2.0)))
