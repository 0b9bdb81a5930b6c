"""Brute-force estimates of the angular constant straight from the definition.

    alpha(S) = sup over targets tau of inf over x of max_j ||n_j*x - tau_j||

with ||u|| the distance from u to the nearest integer.  Shifting x by c
translates every target by (n_1*c, ..., n_J*c), so the target sup may fix
the last coordinate to 0 and sweep only the remaining ones (a transversal of
the shift orbits).

This module deliberately shares no code with the lattice formulation: it is
the anti-circularity cross-check.  The returned enclosure is heuristic on
the low side (the sup is searched, not certified) and rigorous on the high
side up to the target-grid Lipschitz bound: the objective moves by at most
the sup-norm target displacement, so

    alpha <= max over the target grid of ghat + h/2,

where ghat >= g is the x-sampled inner value and h the grid spacing.  The
low end is always an exactly evaluated inner infimum at some concrete
target, never a float sample: sampling x overestimates an infimum, so "best
float found" is not a valid lower bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence, Union

import numpy as np

from ._backend import get_kernels
from .covering import AlphaInterval

__all__ = ["OracleConfig", "oracle_alpha", "oracle_distance"]

_RatLike = Union[int, float, Fraction]

# How many of the best coarse-grid targets get refined and exactly evaluated.
_TOP_M = 8

# Absorbs the float->Fraction conversion at the upper end.
_FLOAT_GUARD = Fraction(1, 10**12)


@dataclass(frozen=True)
class OracleConfig:
    """Grid sizes for the target sweep and the inner x sampling.

    x_grid = 0 switches ``oracle_distance`` to exact breakpoint enumeration;
    ``oracle_alpha`` always needs a positive x_grid for its sweeps (its final
    lower end is exact regardless).  ``shrink`` is the per-round contraction
    of the local target refinement window.
    """

    target_grid: int = 128
    x_grid: int = 2048
    refine_rounds: int = 3
    shrink: Fraction = Fraction(1, 4)
    backend: Optional[str] = None

    def __post_init__(self):
        if self.target_grid < 8:
            raise ValueError(f"target_grid must be >= 8, got {self.target_grid}")
        if self.x_grid != 0 and self.x_grid < 8:
            raise ValueError(f"x_grid must be 0 (exact) or >= 8, got {self.x_grid}")
        if self.refine_rounds < 0:
            raise ValueError(f"refine_rounds must be >= 0, got {self.refine_rounds}")
        shrink = Fraction(self.shrink)
        if not 0 < shrink < 1:
            raise ValueError(f"shrink must lie in (0, 1), got {self.shrink}")
        object.__setattr__(self, "shrink", shrink)


def _validated(entries: Sequence[int], min_len: int) -> tuple[int, ...]:
    vals = tuple(int(v) for v in entries)
    if not min_len <= len(vals) <= 3:
        raise ValueError(
            f"oracle supports sets of {min_len}..3 elements, got {len(vals)}"
        )
    if any(v == 0 for v in vals):
        raise ValueError(f"set entries must be nonzero: {vals}")
    return vals


def _dist(q: Fraction) -> Fraction:
    frac = q - math.floor(q)
    return min(frac, 1 - frac)


def _exact_inner(nvec: Sequence[int], tau: Sequence[Fraction]) -> Fraction:
    """Exact inf over x in [0, 1] of max_j ||n_j*x - tau_j||.

    The objective is piecewise linear with slopes +-n_j; its minimum sits at
    an endpoint, at a kink of one component (n_j*x - tau_j crossing an
    integer or half-integer), or at a crossing of two components,
    (n_i*x - tau_i - k) = +-(n_j*x - tau_j - l).  All candidates are
    enumerated and evaluated in rational arithmetic.
    """
    cands: set[Fraction] = {Fraction(0), Fraction(1)}

    def k_range(n: int, t: Fraction) -> range:
        lo = min(-t, n - t)
        hi = max(-t, n - t)
        return range(math.floor(lo) - 1, math.ceil(hi) + 2)

    for n, t in zip(nvec, tau):
        for k in k_range(n, t):
            for num in (t + k, t + k + Fraction(1, 2)):
                x = num / n
                if 0 <= x <= 1:
                    cands.add(x)
    for i in range(len(nvec)):
        ni, ti = nvec[i], tau[i]
        for j in range(i + 1, len(nvec)):
            nj, tj = nvec[j], tau[j]
            for sigma in (1, -1):
                den = ni - sigma * nj
                if den == 0:
                    continue
                for k in k_range(ni, ti):
                    for l in k_range(nj, tj):
                        x = ((ti + k) - sigma * (tj + l)) / den
                        if 0 <= x <= 1:
                            cands.add(x)

    best = None
    for x in cands:
        val = max(_dist(n * x - t) for n, t in zip(nvec, tau))
        if best is None or val < best:
            best = val
    return best


def oracle_distance(
    entries: Sequence[int],
    targets: Sequence[_RatLike],
    cfg: Optional[OracleConfig] = None,
) -> Fraction:
    """Inner problem: inf over x of max_j ||n_j*x - t_j|| for one target.

    With cfg.x_grid = 0 the value is exact (breakpoint enumeration);
    otherwise it is the minimum over an x_grid sample, an upper estimate
    within max|n_j| / (2*x_grid) of the true infimum.
    """
    nvec = _validated(entries, min_len=1)
    tau = tuple(Fraction(t) for t in targets)
    if len(tau) != len(nvec):
        raise ValueError(
            f"got {len(tau)} targets for {len(nvec)} set elements"
        )
    cfg = cfg or OracleConfig()
    if cfg.x_grid == 0:
        return _exact_inner(nvec, tau)
    ker = get_kernels(cfg.backend)
    xs = np.arange(cfg.x_grid, dtype=np.float64) / cfg.x_grid
    tarr = np.array([[float(t) for t in tau]], dtype=np.float64)
    g = ker.oracle_sweep(np.array(nvec, dtype=np.float64), tarr, xs)
    return Fraction(float(g[0]))


def _sweep(ker, nvec, frac_targets: list[tuple[Fraction, ...]], xs) -> np.ndarray:
    tarr = np.array(
        [[float(c) for c in t] + [0.0] for t in frac_targets], dtype=np.float64
    )
    return ker.oracle_sweep(np.array(nvec, dtype=np.float64), tarr, xs)


def oracle_alpha(
    entries: Sequence[int], cfg: Optional[OracleConfig] = None
) -> AlphaInterval:
    """Heuristic enclosure of alpha(S) by target-grid search.

    Coarse sweep over the free target coordinates (last coordinate 0 by the
    transversal reduction), local refinement around the best cells, then an
    exact inner evaluation at the best concrete targets for the lower end.
    The upper end is the coarse sweep maximum plus the grid resolution bound
    (Lipschitz constant 1 per target coordinate, sup-norm radius h/2).
    """
    nvec = _validated(entries, min_len=1)
    cfg = cfg or OracleConfig()
    if cfg.x_grid == 0:
        raise ValueError("oracle_alpha needs x_grid > 0 for its sweeps")
    ker = get_kernels(cfg.backend)
    G = cfg.target_grid
    free = len(nvec) - 1
    xs = np.arange(cfg.x_grid, dtype=np.float64) / cfg.x_grid

    axis = [Fraction(i, G) for i in range(G)]
    coarse: list[tuple[Fraction, ...]] = list(product(axis, repeat=free))
    ghat = _sweep(ker, nvec, coarse, xs)

    gmax = float(ghat.max()) if len(coarse) else 0.0
    hi = Fraction(gmax) + Fraction(1, 2 * G) + _FLOAT_GUARD

    order = np.argsort(ghat, kind="stable")[::-1][:_TOP_M]
    lo = Fraction(0)
    for idx in order:
        center = coarse[int(idx)]
        width = Fraction(1, 2 * G)
        for _ in range(cfg.refine_rounds):
            if free == 0:
                break
            offs = [Fraction(i, 4) * width for i in range(-4, 5)]
            local = [
                tuple(c + o for c, o in zip(center, combo))
                for combo in product(offs, repeat=free)
            ]
            vals = _sweep(ker, nvec, local, xs)
            center = local[int(np.argmax(vals))]
            width *= cfg.shrink
        exact = _exact_inner(nvec, tuple(center) + (Fraction(0),))
        if exact > lo:
            lo = exact
    if lo > hi:
        hi = lo
    return AlphaInterval(lo=lo, hi=hi, method="oracle")
