"""Pure numpy fallback for the fixed-radius neighbor-count kernels.

Same contract as the compiled dynadim._hashgrid: given a prebuilt uniform
grid (cell size >= eps) and cell-sorted coordinate copies, fill per-center
counts of points within closed wrap-around max-norm distance eps.
Distances use the exact same float operations as the naive reference, so
integer counts agree bit-for-bit across backends.
"""

from __future__ import annotations

import numpy as np


def count_range_1d(x, xs, eps, cell_start, offsets, ncells, cell_of, lo, hi, out):
    # Process cell by cell; vectorized block compare per cell.
    sel = np.arange(lo, hi)
    for c in np.unique(cell_of[lo:hi]):
        members = sel[cell_of[lo:hi] == c]
        cand = np.concatenate(
            [xs[cell_start[cc] : cell_start[cc + 1]] for cc in (c + offsets) % ncells]
        )
        dx = np.abs(x[members][:, None] - cand[None, :])
        dx = np.minimum(dx, 1.0 - dx)
        out[members] = (dx <= eps).sum(axis=1)


def count_range_2d(x, y, xs, ys, eps, cell_start, offsets, ncells, cell_of, lo, hi, out):
    sel = np.arange(lo, hi)
    for c in np.unique(cell_of[lo:hi]):
        members = sel[cell_of[lo:hi] == c]
        cx, cy = divmod(int(c), int(ncells))
        ccells = [
            ((cx + ox) % ncells) * ncells + ((cy + oy) % ncells)
            for ox in offsets
            for oy in offsets
        ]
        candx = np.concatenate([xs[cell_start[cc] : cell_start[cc + 1]] for cc in ccells])
        candy = np.concatenate([ys[cell_start[cc] : cell_start[cc + 1]] for cc in ccells])
        dx = np.abs(x[members][:, None] - candx[None, :])
        dx = np.minimum(dx, 1.0 - dx)
        dy = np.abs(y[members][:, None] - candy[None, :])
        dy = np.minimum(dy, 1.0 - dy)
        d = np.maximum(dx, dy)
        out[members] = (d <= eps).sum(axis=1)
