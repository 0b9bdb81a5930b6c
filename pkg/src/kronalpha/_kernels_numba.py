"""Jitted scouting kernels.

Same contracts as ``_kernels_numpy``; the arithmetic follows that module's
expression order exactly (including np.rint's half-even rounding) so both
backends return bitwise-identical floats.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def oracle_sweep(nvec, targets, xs):
    T = targets.shape[0]
    J = nvec.shape[0]
    X = xs.shape[0]
    out = np.empty(T, dtype=np.float64)
    for k in range(T):
        g = np.inf
        for i in range(X):
            mx = 0.0
            for j in range(J):
                q = xs[i] * nvec[j] - targets[k, j]
                d = abs(q - np.rint(q))
                if d > mx:
                    mx = d
            if mx < g:
                g = mx
        out[k] = g
    return out


@njit(cache=True)
def cover_grid_max(n1, n2, n3, m, r, depth):
    G = 1 << depth
    w23 = n2 + n3
    w13 = abs(n1) + n3
    w12 = abs(n1) + n2
    best = -1.0
    best_ia = 0
    best_ib = 0
    for ia in range(G):
        a = (2.0 * ia + 1.0) / (2.0 * G)
        for ib in range(G):
            b = (2.0 * ib + 1.0) / (2.0 * G)
            x = a / m + b * (r / n3)
            y = b * (m / n3)
            t0 = np.rint(y * (n3 / m))
            gmin = np.inf
            for dt in range(-3, 4):
                t = t0 + dt
                v = y - t * (m / n3)
                base = x - t * (r / n3)
                s0 = np.rint(base * m)
                c23 = n3 * abs(v) / w23
                for ds in range(-3, 4):
                    s = s0 + ds
                    u = base - s / m
                    c13 = n3 * abs(u) / w13
                    c12 = abs(n2 * u - n1 * v) / w12
                    g = c23
                    if c13 > g:
                        g = c13
                    if c12 > g:
                        g = c12
                    if g < gmin:
                        gmin = g
            if gmin > best:
                best = gmin
                best_ia = ia
                best_ib = ib
    return best, best_ia, best_ib
