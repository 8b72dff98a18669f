# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled fixed-radius neighbor-count kernels (uniform grid, torus metric).

Counts use the closed condition d <= eps with d the wrap-around max-norm
distance, computed with the same float operations as the naive numpy
reference so integer counts agree exactly.  Candidate coordinates arrive
pre-sorted by grid cell (xs/ys), so the inner loops scan contiguous
memory.  The center range [lo, hi) lets callers split work across
threads; the loops release the GIL.
"""

import numpy as np

cimport numpy as cnp


def count_range_1d(double[::1] x, double[::1] xs, double eps,
                   cnp.int64_t[::1] cell_start,
                   cnp.int64_t[::1] offsets, cnp.int64_t ncells,
                   cnp.int64_t[::1] cell_of,
                   cnp.int64_t lo, cnp.int64_t hi, cnp.int64_t[::1] out):
    cdef cnp.int64_t i, c, cc, a, ptr, stop, cnt
    cdef cnp.int64_t noff = offsets.shape[0]
    cdef double xi, dx
    with nogil:
        for i in range(lo, hi):
            xi = x[i]
            c = cell_of[i]
            cnt = 0
            for a in range(noff):
                cc = c + offsets[a]
                if cc >= ncells:
                    cc -= ncells
                stop = cell_start[cc + 1]
                for ptr in range(cell_start[cc], stop):
                    dx = xi - xs[ptr]
                    if dx < 0:
                        dx = -dx
                    if dx > 0.5:
                        dx = 1.0 - dx
                    if dx <= eps:
                        cnt += 1
            out[i] = cnt


def count_range_2d(double[::1] x, double[::1] y,
                   double[::1] xs, double[::1] ys, double eps,
                   cnp.int64_t[::1] cell_start,
                   cnp.int64_t[::1] offsets, cnp.int64_t ncells,
                   cnp.int64_t[::1] cell_of,
                   cnp.int64_t lo, cnp.int64_t hi, cnp.int64_t[::1] out):
    cdef cnp.int64_t i, cx, cy, ccx, ccy, a, b, cc, ptr, stop, cnt
    cdef cnp.int64_t noff = offsets.shape[0]
    cdef double xi, yi, dx, dy
    with nogil:
        for i in range(lo, hi):
            xi = x[i]
            yi = y[i]
            cx = cell_of[i] / ncells
            cy = cell_of[i] - cx * ncells
            cnt = 0
            for a in range(noff):
                ccx = cx + offsets[a]
                if ccx >= ncells:
                    ccx -= ncells
                for b in range(noff):
                    ccy = cy + offsets[b]
                    if ccy >= ncells:
                        ccy -= ncells
                    cc = ccx * ncells + ccy
                    stop = cell_start[cc + 1]
                    for ptr in range(cell_start[cc], stop):
                        dx = xi - xs[ptr]
                        if dx < 0:
                            dx = -dx
                        if dx > 0.5:
                            dx = 1.0 - dx
                        if dx > eps:
                            continue
                        dy = yi - ys[ptr]
                        if dy < 0:
                            dy = -dy
                        if dy > 0.5:
                            dy = 1.0 - dy
                        if dy <= eps:
                            cnt += 1
                    # ends candidate loop for this cell
            out[i] = cnt
