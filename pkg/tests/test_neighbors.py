"""Neighbor counting: spatial hash vs naive oracle, exact integer agreement."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import dynadim
from dynadim import _neighbors
from dynadim.geometry import (
    GeometryError,
    InsufficientWindowError,
    SymbolicPoint,
)
from dynadim._neighbors import (
    naive_neighbor_counts,
    neighbor_counts,
    pair_adjacency,
    row_group_counts,
    symbolic_window_counts,
    symbols_matrix,
)


def tiny_counts(pts, eps):
    """Hand-rolled reference: closed balls in the wrapped max metric."""
    out = []
    for p in pts:
        c = 0
        for q in pts:
            d = max(min(abs(a - b), 1.0 - abs(a - b)) for a, b in zip(p, q))
            if d <= eps:
                c += 1
        out.append(c)
    return np.array(out, dtype=np.int64)


def all_routes(coords, eps):
    return (
        neighbor_counts(coords, eps),
        neighbor_counts(coords, eps, backend="python"),
        naive_neighbor_counts(coords, eps),
    )


class TestAgainstTinyOracle:
    CASES_1D = [
        ([0.0, 0.25, 0.5, 0.9], 0.25),  # boundary-exact distances included
        ([0.01, 0.99, 0.5], 0.02),  # wraparound pair
        ([0.1] * 5 + [0.7], 0.3),  # duplicates
        ([0.0, 0.33, 0.66], 0.4),  # eps over 1/3: tiny grid, offset dedup
        ([0.2, 0.8], 1.0),  # eps >= 1: everything is close
    ]

    @pytest.mark.parametrize("vals,eps", CASES_1D)
    def test_1d_cases(self, vals, eps):
        expect = tiny_counts([(v,) for v in vals], eps)
        for got in all_routes(np.array(vals), eps):
            assert got.dtype == np.int64
            assert np.array_equal(got, expect)

    def test_2d_cases(self):
        pts = [(0.0, 0.0), (0.25, 0.0), (0.5, 0.5), (0.75, 0.99), (0.99, 0.01)]
        for eps in (0.25, 0.3, 0.05, 0.7):
            expect = tiny_counts(pts, eps)
            for got in all_routes(np.array(pts), eps):
                assert np.array_equal(got, expect)

    @settings(max_examples=40, deadline=None)
    @given(
        st.integers(min_value=2, max_value=40),
        st.sampled_from([0.02, 0.11, 0.25, 0.4, 0.75]),
        st.integers(min_value=0, max_value=2**31),
    )
    def test_random_2d_clouds(self, n, eps, seed):
        rng = np.random.default_rng(seed)
        a = rng.random((n, 2))
        expect = tiny_counts([tuple(r) for r in a], eps)
        for got in all_routes(a, eps):
            assert np.array_equal(got, expect)


class TestRouteAgreement:
    @pytest.mark.parametrize("dim", [1, 2])
    @pytest.mark.parametrize("eps", [1.0 / 64, 0.1, 0.34])
    def test_three_routes_agree_exactly(self, dim, eps):
        rng = np.random.default_rng(1234 + dim)
        a = rng.random((3000, dim))
        fast, pure, naive = all_routes(a, eps)
        assert np.array_equal(fast, pure)
        assert np.array_equal(fast, naive)

    def test_threads_change_nothing(self):
        rng = np.random.default_rng(7)
        a = rng.random((5000, 2))
        single = neighbor_counts(a, 0.05, threads=1)
        multi = neighbor_counts(a, 0.05, threads=4)
        assert np.array_equal(single, multi)

    def test_grid_cap_with_tiny_radius(self):
        rng = np.random.default_rng(3)
        a = rng.random((500, 2))
        eps = 1e-5  # far below point spacing: the cell grid is capped
        fast, pure, naive = all_routes(a, eps)
        assert np.array_equal(fast, naive)
        assert np.array_equal(pure, naive)
        assert fast.min() >= 1  # every point counts itself

    def test_compiled_backend_is_active(self):
        assert dynadim.KERNEL_BACKEND == _neighbors.BACKEND
        assert _neighbors.BACKEND in ("compiled", "python")


class TestValidation:
    def test_eps_must_be_positive(self):
        with pytest.raises(GeometryError):
            neighbor_counts(np.array([0.1, 0.2]), 0.0)
        with pytest.raises(GeometryError):
            neighbor_counts(np.array([0.1, 0.2]), -0.5)

    def test_shape_checks(self):
        with pytest.raises(GeometryError):
            neighbor_counts(np.zeros((4, 3)), 0.1)


class TestPairAdjacency:
    def test_matches_counts(self):
        rng = np.random.default_rng(11)
        a = rng.random((60, 2))
        adj = pair_adjacency(a, 0.2)
        assert adj.shape == (60, 60)
        assert np.array_equal(adj, adj.T)
        assert adj.diagonal().all()
        assert np.array_equal(adj.sum(axis=1), tiny_counts([tuple(r) for r in a], 0.2))

    def test_size_limit(self):
        with pytest.raises(GeometryError):
            pair_adjacency(np.zeros((5, 1)), 0.1, max_points=4)


def brute_window_counts(mat, left, right):
    w = (mat.shape[1] - 1) // 2
    keys = [tuple(row[left + w : right + w + 1]) for row in mat]
    return np.array([keys.count(k) for k in keys], dtype=np.int64)


class TestSymbolicCounting:
    def test_symbols_matrix_stacks_windows(self):
        pts = [SymbolicPoint((0, 1, 0), 2), SymbolicPoint((1, 1, 0), 2)]
        mat = symbols_matrix(pts)
        assert mat.shape == (2, 3)
        assert mat.tolist() == [[0, 1, 0], [1, 1, 0]]

    def test_mixed_radii_rejected(self):
        pts = [SymbolicPoint((0, 1, 0), 2), SymbolicPoint((1,), 2)]
        with pytest.raises(GeometryError):
            symbols_matrix(pts)

    def test_row_group_counts(self):
        mat = np.array([[0, 1], [0, 1], [1, 1], [0, 1]])
        assert row_group_counts(mat).tolist() == [3, 3, 1, 3]
        empty = np.empty((4, 0), dtype=np.int64)
        assert row_group_counts(empty).tolist() == [4, 4, 4, 4]

    @pytest.mark.parametrize("left,right", [(-2, 2), (0, 3), (-3, 0), (-1, 1)])
    def test_window_counts_match_brute_force(self, left, right):
        rng = np.random.default_rng(5)
        mat = rng.integers(0, 3, size=(50, 7))
        got = symbolic_window_counts(mat, left, right)
        assert np.array_equal(got, brute_window_counts(mat, left, right))

    def test_window_beyond_radius_raises(self):
        mat = np.zeros((3, 5), dtype=np.int64)
        with pytest.raises(InsufficientWindowError):
            symbolic_window_counts(mat, -3, 1)
        with pytest.raises(InsufficientWindowError):
            symbolic_window_counts(mat, 0, 3)
