"""Fixed-radius neighbor counting: backend dispatch, naive oracle, symbolic paths.

The fast path is a uniform-grid spatial hash with cell size >= eps
(compiled kernel when the extension built, numpy fallback otherwise).
The naive O(n^2) reference implementation lives here and must agree with
the fast path exactly on integer counts; tests enforce that.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .geometry import GeometryError, InsufficientWindowError

try:  # compiled kernel is optional; the numpy fallback is always available
    from . import _hashgrid as _impl

    BACKEND = "compiled"
except ImportError:  # pragma: no cover - exercised when the extension is absent
    from . import _hashgrid_py as _impl

    BACKEND = "python"

from . import _hashgrid_py as _pure


def _as_coord_matrix(coords) -> np.ndarray:
    a = np.ascontiguousarray(np.asarray(coords, dtype=np.float64))
    if a.ndim == 1:
        a = a[:, None]
    if a.ndim != 2 or a.shape[1] not in (1, 2):
        raise GeometryError("expected coordinates of shape (n,), (n,1) or (n,2)")
    return a


def _build_grid(a: np.ndarray, eps: float):
    n, d = a.shape
    ncells = max(1, int(1.0 / eps)) if eps < 1.0 else 1
    # Cell width only needs to be >= eps; cap the cell count so the grid
    # memory stays O(n) when eps is far below the point spacing.
    cap = max(1, n if d == 1 else int(2 * np.sqrt(n)) + 1)
    ncells = min(ncells, cap)
    cells = np.minimum((a * ncells).astype(np.int64), ncells - 1)
    if d == 1:
        cell_of = cells[:, 0]
        total = ncells
    else:
        cell_of = cells[:, 0] * ncells + cells[:, 1]
        total = ncells * ncells
    order = np.argsort(cell_of, kind="stable")
    counts = np.bincount(cell_of, minlength=total)
    cell_start = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
    # Cell offsets -1,0,1 reduced mod ncells and deduplicated, so tiny
    # grids (eps >= 1/3) do not double count.
    offsets = np.array(sorted({o % ncells for o in (-1, 0, 1)}), dtype=np.int64)
    sorted_coords = np.ascontiguousarray(a[order], dtype=np.float64)
    return cell_of.astype(np.int64), sorted_coords, cell_start, offsets, ncells


def neighbor_counts(coords, eps: float, threads: int = 1, backend=None) -> np.ndarray:
    """Per-point count of points within closed torus distance eps (self included)."""
    a = _as_coord_matrix(coords)
    eps = float(eps)
    if eps <= 0:
        raise GeometryError("eps must be positive")
    n, d = a.shape
    impl = _impl if backend is None else (_pure if backend == "python" else _impl)
    cell_of, sorted_coords, cell_start, offsets, ncells = _build_grid(a, eps)
    out = np.zeros(n, dtype=np.int64)
    if d == 1:
        args = (
            np.ascontiguousarray(a[:, 0]),
            np.ascontiguousarray(sorted_coords[:, 0]),
            eps,
            cell_start,
            offsets,
            ncells,
            cell_of,
        )
        fn = impl.count_range_1d
    else:
        args = (
            np.ascontiguousarray(a[:, 0]),
            np.ascontiguousarray(a[:, 1]),
            np.ascontiguousarray(sorted_coords[:, 0]),
            np.ascontiguousarray(sorted_coords[:, 1]),
            eps,
            cell_start,
            offsets,
            ncells,
            cell_of,
        )
        fn = impl.count_range_2d
    if threads <= 1 or n < 2048 or impl is _pure:
        fn(*args, 0, n, out)
        return out
    bounds = np.linspace(0, n, threads + 1).astype(int)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [
            pool.submit(fn, *args, int(lo), int(hi), out)
            for lo, hi in zip(bounds[:-1], bounds[1:])
            if hi > lo
        ]
        for f in futures:
            f.result()
    return out


def naive_neighbor_counts(coords, eps: float, chunk: int = 512) -> np.ndarray:
    """O(n^2) reference counter; the correctness oracle for the fast path."""
    a = _as_coord_matrix(coords)
    eps = float(eps)
    n = a.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for lo in range(0, n, chunk):
        hi = min(lo + chunk, n)
        dx = np.abs(a[lo:hi, None, :] - a[None, :, :])
        dx = np.minimum(dx, 1.0 - dx)
        d = dx.max(axis=2)
        out[lo:hi] = (d <= eps).sum(axis=1)
    return out


def pair_adjacency(coords, eps: float, max_points: int = 20000) -> np.ndarray:
    """Dense closed-ball adjacency matrix (diagonal True); small inputs only."""
    a = _as_coord_matrix(coords)
    if a.shape[0] > max_points:
        raise GeometryError(f"adjacency matrix limited to {max_points} points")
    dx = np.abs(a[:, None, :] - a[None, :, :])
    dx = np.minimum(dx, 1.0 - dx)
    return dx.max(axis=2) <= float(eps)


# ---------------------------------------------------------------------------
# symbolic points: depth-indexed prefix grouping


def symbols_matrix(points) -> np.ndarray:
    """Stack symbolic points of equal radius into an (n, 2W+1) int matrix."""
    radii = {p.radius for p in points}
    if len(radii) != 1:
        raise GeometryError("symbolic point cloud must have uniform window radius")
    return np.array([p.window for p in points], dtype=np.int64)


def row_group_counts(mat: np.ndarray) -> np.ndarray:
    """For each row, the number of identical rows (itself included)."""
    if mat.shape[1] == 0:
        return np.full(mat.shape[0], mat.shape[0], dtype=np.int64)
    _, inverse, counts = np.unique(mat, axis=0, return_inverse=True, return_counts=True)
    return counts[np.ravel(inverse)]


def symbolic_window_counts(symbols: np.ndarray, left: int, right: int) -> np.ndarray:
    """Counts of points agreeing on coordinates left..right (inclusive).

    Agreement on -j..j is membership in the same ball of radius 2^(-j);
    asymmetric windows cover Bowen and bilateral queries.
    """
    w = (symbols.shape[1] - 1) // 2
    if left < -w or right > w:
        raise InsufficientWindowError(
            f"window {left}..{right} outside stored radius {w}"
        )
    return row_group_counts(symbols[:, left + w : right + w + 1])
