"""Pure-numpy scouting kernels.

Float-precision sweeps that suggest where the exact searches should look
first.  Soundness never depends on these values: callers re-evaluate every
suggestion with exact arithmetic.  Expression order here is mirrored line
by line in the numba module so the two backends return bitwise-identical
floats.
"""

import numpy as np


def oracle_sweep(nvec, targets, xs):
    """For each target row, min over xs of max_j dist(nvec[j]*x - t_j).

    dist is the distance to the nearest integer.  Returns one float per
    target row.
    """
    nvec = np.asarray(nvec, dtype=np.float64)
    targets = np.asarray(targets, dtype=np.float64)
    xs = np.asarray(xs, dtype=np.float64)
    prod = xs[:, None] * nvec[None, :]
    out = np.empty(targets.shape[0], dtype=np.float64)
    for k in range(targets.shape[0]):
        q = prod - targets[k][None, :]
        d = np.abs(q - np.rint(q))
        out[k] = d.max(axis=1).min()
    return out


def cover_grid_max(n1, n2, n3, m, r, depth):
    """Windowed min-max field on the depth-d dyadic grid of cell centers.

    The (s, t) search is a fixed +-3 block around the nearest lattice
    point, so values can overshoot the true field where a minimizer lies
    outside the window; that only makes the suggestion weaker, never the
    caller unsound.  Returns (value, ia, ib) with the first (row-major)
    argmax.
    """
    G = 1 << depth
    idx = (2.0 * np.arange(G) + 1.0) / (2.0 * G)
    a = idx[:, None]
    b = idx[None, :]
    x = a / m + b * (r / n3)
    y = b * (m / n3)
    w23 = n2 + n3
    w13 = abs(n1) + n3
    w12 = abs(n1) + n2
    t0 = np.rint(y * (n3 / m))
    gmin = np.full((G, G), np.inf)
    for dt in range(-3, 4):
        t = t0 + dt
        v = y - t * (m / n3)
        base = x - t * (r / n3)
        s0 = np.rint(base * m)
        c23 = n3 * np.abs(v) / w23
        for ds in range(-3, 4):
            s = s0 + ds
            u = base - s / m
            c13 = n3 * np.abs(u) / w13
            c12 = np.abs(n2 * u - n1 * v) / w12
            g = np.maximum(np.maximum(c23, c13), c12)
            np.minimum(gmin, g, out=gmin)
    flat = int(np.argmax(gmin))
    ia, ib = divmod(flat, G)
    return float(gmin[ia, ib]), ia, ib
