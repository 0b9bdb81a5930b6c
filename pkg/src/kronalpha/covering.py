"""Min-max constraint field over a fundamental lattice cell.

For a canonical triple (n1, n2, n3) with shear parameters (m, r), define

    u = x - s/m - t*r/n3        v = y - t*m/n3
    c23 = n3*|v| / (n2 + n3)
    c13 = n3*|u| / (|n1| + n3)
    c12 = |n2*u - n1*v| / (|n1| + n2)

    F(x, y) = min over integers (s, t) of max(c23, c13, c12).

F is periodic under the lattice K generated by (1/m, 0) and (r/n3, m/n3)
(shifting by the generators re-indexes s resp. t), and the angular constant
of the set is the maximum of F over a fundamental cell.  This module
evaluates F exactly at rational points, maximizes it with a certified
branch-and-bound (exact rational arithmetic throughout; the tolerance only
stops the subdivision), and optionally resolves the maximum exactly via
vertex enumeration of F's piecewise-linear structure.

Scaled arithmetic: a rational point with common denominator L is handled
with the integers X = x*D, Y = y*D for D = n3*L.  Since m | n3, the (s, t)
offsets stay integral: s shifts X by L*n3p, t shifts (X, Y) by (L*r, L*m).
Constraint values are integer pairs compared by cross-multiplication, so the
hot path never touches floats or Fraction normalization.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .numbers import (
    CanonicalTriple,
    NonDistinctError,
    canonicalize,
    lattice_params,
)

__all__ = [
    "CoveringInstance",
    "EvalPoint",
    "AlphaInterval",
    "OverlapLengths",
    "eval_F",
    "candidate_window",
    "certified_alpha",
    "exact_alpha",
    "overlap_lengths",
    "overlap_center_budget",
]

_RatLike = Union[int, Fraction]


@dataclass(frozen=True)
class EvalPoint:
    """A rational point (x, y) in the plane of the covering problem."""

    x: Fraction
    y: Fraction

    def __init__(self, x: _RatLike, y: _RatLike):
        object.__setattr__(self, "x", Fraction(x))
        object.__setattr__(self, "y", Fraction(y))


@dataclass(frozen=True)
class AlphaInterval:
    """Certified enclosure [lo, hi] of an angular Kronecker constant.

    ``exact`` is set when the exact rational value is known; it then lies
    inside [lo, hi].  ``method`` tags the producer ("covering", "exact",
    "oracle").
    """

    lo: Fraction
    hi: Fraction
    exact: Optional[Fraction] = None
    method: str = "covering"

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"invalid interval: lo={self.lo} > hi={self.hi}")
        if self.exact is not None and not self.lo <= self.exact <= self.hi:
            raise ValueError(
                f"exact value {self.exact} outside [{self.lo}, {self.hi}]"
            )

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2


class CoveringInstance:
    """Constraint-field coefficients for one distinct-absolute-value triple.

    The instance pins n1's sign to the r >= 0 convention, so r = lp.r >= 0;
    r = 0 is the rectangular case (still solvable, only the shear bounds are
    unavailable).
    """

    __slots__ = (
        "n1", "n2", "n3", "lp", "m", "r", "n2p", "n3p", "n1a",
        "w23d", "w13d", "w12d", "w23", "w13",
    )

    def __init__(self, ct: CanonicalTriple):
        if not ct.distinct_abs:
            raise NonDistinctError(
                f"covering formulation needs distinct absolute values: {ct.entries}"
            )
        lp = lattice_params(ct)
        n1 = -ct.n1 if lp.n1_flipped else ct.n1
        self.n1 = n1
        self.n2 = ct.n2
        self.n3 = ct.n3
        self.lp = lp
        self.m = lp.m
        self.r = lp.r
        self.n2p = lp.n2p
        self.n3p = lp.n3p
        self.n1a = abs(n1)
        self.w23d = ct.n2 + ct.n3
        self.w13d = self.n1a + ct.n3
        self.w12d = self.n1a + ct.n2
        self.w23 = Fraction(ct.n3, self.w23d)
        self.w13 = Fraction(ct.n3, self.w13d)

    @classmethod
    def from_set(cls, entries: Sequence[int]) -> "CoveringInstance":
        return cls(canonicalize(entries))

    def beta(self, p: EvalPoint) -> Fraction:
        """The proof coordinate beta = x - r*y/m."""
        return p.x - Fraction(self.r, self.m) * p.y

    def delta_t(self, p: EvalPoint, t: int) -> Fraction:
        """The proof coordinate Delta_t = y - t*m/n3."""
        return p.y - Fraction(t * self.m, self.n3)

    def point_from_cell(self, a: _RatLike, b: _RatLike) -> EvalPoint:
        """Map cell coordinates (a, b) in [0,1]^2 through the generator matrix."""
        a = Fraction(a)
        b = Fraction(b)
        return EvalPoint(a / self.m + b * Fraction(self.r, self.n3), b * Fraction(self.m, self.n3))

    def __repr__(self):
        return (
            f"CoveringInstance(({self.n1}, {self.n2}, {self.n3}), "
            f"m={self.m}, r={self.r})"
        )


def _min_g_scaled(inst: CoveringInstance, X: int, Y: int, L: int) -> tuple[int, int]:
    """min over (s, t) of the max constraint at the point (X/D, Y/D), D = n3*L.

    Returns (num, wden) with value num / (wden * D).  Enumerates t outward
    from the nearest lattice row and s outward from the nearest column,
    breaking a direction as soon as the coercive constraint (c23 in t, c13
    in s) alone matches the incumbent; every skipped pair provably cannot
    improve the minimum.
    """
    n1, n2, n3 = inst.n1, inst.n2, inst.n3
    r, n3p = inst.r, inst.n3p
    w23d, w13d, w12d = inst.w23d, inst.w13d, inst.w12d
    mP = inst.m * L
    sden = n3p * L
    rL = r * L

    t0 = (2 * Y + mP) // (2 * mP)
    base0 = X - t0 * rL
    s00 = (2 * base0 + sden) // (2 * sden)

    U = base0 - s00 * sden
    V = Y - t0 * mP
    bn = n3 * (V if V >= 0 else -V)
    bd = w23d
    n13 = n3 * (U if U >= 0 else -U)
    if n13 * bd > bn * w13d:
        bn, bd = n13, w13d
    w = n2 * U - n1 * V
    n12 = w if w >= 0 else -w
    if n12 * bd > bn * w12d:
        bn, bd = n12, w12d
    if bn == 0:
        return 0, 1
    best_n, best_d = bn, bd

    def scan_row(t: int) -> bool:
        nonlocal best_n, best_d
        V = Y - t * mP
        n23 = n3 * (V if V >= 0 else -V)
        if n23 * best_d >= best_n * w23d:
            return False
        base = X - t * rL
        s0 = (2 * base + sden) // (2 * sden)
        for start, step in ((s0, 1), (s0 - 1, -1)):
            s = start
            while True:
                U = base - s * sden
                n13 = n3 * (U if U >= 0 else -U)
                if n13 * best_d >= best_n * w13d:
                    break
                w = n2 * U - n1 * V
                n12 = w if w >= 0 else -w
                gn, gd = n23, w23d
                if n13 * gd > gn * w13d:
                    gn, gd = n13, w13d
                if n12 * gd > gn * w12d:
                    gn, gd = n12, w12d
                if gn * best_d < best_n * gd:
                    best_n, best_d = gn, gd
                    if best_n == 0:
                        return False
                s += step
        return True

    if scan_row(t0):
        t = t0 + 1
        while scan_row(t):
            t += 1
        t = t0 - 1
        while scan_row(t):
            t -= 1
    return best_n, best_d


def _eval_scaled(inst: CoveringInstance, X: int, Y: int, L: int) -> Fraction:
    num, wden = _min_g_scaled(inst, X, Y, L)
    return Fraction(num, wden * inst.n3 * L)


def eval_F(inst: CoveringInstance, p: EvalPoint) -> Fraction:
    """Exact value of the constraint field F at a rational point."""
    L = p.x.denominator * p.y.denominator // math.gcd(
        p.x.denominator, p.y.denominator
    )
    D = inst.n3 * L
    X = p.x.numerator * (D // p.x.denominator)
    Y = p.y.numerator * (D // p.y.denominator)
    return _eval_scaled(inst, X, Y, L)


def _eval_cell(inst: CoveringInstance, a: Fraction, b: Fraction) -> Fraction:
    return eval_F(inst, inst.point_from_cell(a, b))


def candidate_window(
    inst: CoveringInstance, p: EvalPoint, cap: Fraction
) -> list[tuple[int, int]]:
    """All (s, t) that can realize max(c23, c13, c12) <= cap at p.

    Soundness: c23 <= cap bounds t (c23 is coercive in t), and for each such
    t, c13 <= cap bounds s.  Any minimizer of F(p) with value <= cap lies in
    the returned list; widening cap can only add pairs that lose the min.
    """
    cap = Fraction(cap)
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    n3 = inst.n3
    c23_slack = cap * inst.w23d / n3
    c13_slack = cap * inst.w13d / n3
    t_lo = math.ceil((p.y - c23_slack) * n3 / inst.m)
    t_hi = math.floor((p.y + c23_slack) * n3 / inst.m)
    out: list[tuple[int, int]] = []
    for t in range(t_lo, t_hi + 1):
        mid = p.x - Fraction(t * inst.r, n3)
        s_lo = math.ceil((mid - c13_slack) * inst.m)
        s_hi = math.floor((mid + c13_slack) * inst.m)
        for s in range(s_lo, s_hi + 1):
            out.append((s, t))
    return out


def _lip_budget(inst: CoveringInstance, k: int) -> Fraction:
    """Bound on |F(p) - F(center)| over a depth-k cell (half-side 2^-(k+1)).

    Each constraint is affine in (x, y) with gradient (<= w13 or n2/(|n1|+n2)
    in x, <= w23 or |n1|/(|n1|+n2) in y), and min/max preserve the bound, so
    |dF| <= max(w23*dy, w13*dx, (n2*dx + |n1|*dy)/(|n1|+n2)) with dx, dy the
    cell half-extent mapped through the generator matrix.
    """
    h = Fraction(1, 2 ** (k + 1))
    dx = h * (Fraction(1, inst.m) + Fraction(inst.r, inst.n3))
    dy = h * Fraction(inst.m, inst.n3)
    return max(
        inst.w23 * dy,
        inst.w13 * dx,
        (inst.n2 * dx + inst.n1a * dy) / inst.w12d,
    )


def _center_ints(inst: CoveringInstance, k: int, ia: int, ib: int) -> tuple[int, int, int]:
    """Scaled integers (X, Y, L) for the center of cell (k, ia, ib)."""
    pa = 2 * ia + 1
    pb = 2 * ib + 1
    L = 2 ** (k + 1)
    return pa * inst.n3p + pb * inst.r, pb * inst.m, L


def _seed_points(inst: CoveringInstance) -> list[tuple[int, int, int]]:
    """Cells whose centers are exactly evaluated before the search starts.

    The float kernel scans a depth-6 grid and suggests the best cell; it is
    only a suggestion, and the value used is the exact re-evaluation.  Falls
    back to a coarse exact grid if the kernel backend cannot load.
    """
    try:
        from ._backend import get_kernels

        ker = get_kernels()
        _, ia, ib = ker.cover_grid_max(
            inst.n1, inst.n2, inst.n3, inst.m, inst.r, 6
        )
        return [(6, int(ia), int(ib))]
    except Exception:
        return [(4, ia, ib) for ia in range(16) for ib in range(16)]


def certified_alpha(
    inst: CoveringInstance,
    tol: _RatLike,
    *,
    stop_hi_at: Optional[_RatLike] = None,
    max_depth: int = 64,
) -> AlphaInterval:
    """Certified enclosure of max F over the fundamental cell (= alpha(S)).

    Branch-and-bound over (a, b) in [0, 1]^2 mapped through the generator
    matrix.  Every cell's upper bound is exact-F(center) + Lipschitz budget;
    cells are split best-upper-bound-first (lexicographic tie-break) until
    hi - lo <= tol, or until hi <= stop_hi_at when an early certification
    target is given.  All arithmetic is exact; tol only stops subdivision.
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    stop = None if stop_hi_at is None else Fraction(stop_hi_at)

    lo = Fraction(0)
    for k, ia, ib in _seed_points(inst):
        X, Y, L = _center_ints(inst, k, ia, ib)
        fc = _eval_scaled(inst, X, Y, L)
        if fc > lo:
            lo = fc

    lip_cache: dict[int, Fraction] = {}

    def lip(k: int) -> Fraction:
        v = lip_cache.get(k)
        if v is None:
            v = lip_cache[k] = _lip_budget(inst, k)
        return v

    X, Y, L = _center_ints(inst, 0, 0, 0)
    f0 = _eval_scaled(inst, X, Y, L)
    if f0 > lo:
        lo = f0
    ub0 = f0 + lip(0)
    # heap keyed by float for speed; exact Fractions ride along and every
    # termination decision re-checks the exact values.
    heap: list[tuple[float, int, int, int, Fraction]] = [(-float(ub0), 0, 0, 0, ub0)]

    while heap:
        _, k, ia, ib, ub = heapq.heappop(heap)
        if ub <= lo:
            continue
        if (stop is not None and ub <= stop) or ub - lo <= tol:
            hi = ub
            for entry in heap:
                if entry[4] > hi:
                    hi = entry[4]
            if hi < lo:
                hi = lo
            if (stop is not None and hi <= stop) or hi - lo <= tol:
                return AlphaInterval(lo=lo, hi=hi, method="covering")
            # this node only looked terminal because of float key ordering;
            # split it and keep going.
        if k >= max_depth:
            raise RuntimeError(
                f"branch-and-bound exceeded depth {max_depth} on {inst!r}"
            )
        k1 = k + 1
        lip1 = lip(k1)
        for ja in (2 * ia, 2 * ia + 1):
            for jb in (2 * ib, 2 * ib + 1):
                X, Y, L = _center_ints(inst, k1, ja, jb)
                fc = _eval_scaled(inst, X, Y, L)
                if fc > lo:
                    lo = fc
                ub_c = fc + lip1
                if ub_c > ub:
                    ub_c = ub
                if ub_c > lo:
                    heapq.heappush(heap, (-float(ub_c), k1, ja, jb, ub_c))
    return AlphaInterval(lo=lo, hi=lo, method="covering")


def _affine_forms(
    inst: CoveringInstance, pool: Iterable[tuple[int, int]]
) -> list[tuple[Fraction, Fraction, Fraction]]:
    """Weighted affine arguments (value = |ca*a + cb*b + c0|) of all three
    constraints for each (s, t), in cell coordinates."""
    m, r, n3 = inst.m, inst.r, inst.n3
    n1, n2, n1a = inst.n1, inst.n2, inst.n1a
    forms = []
    for s, t in pool:
        c23 = Fraction(m, inst.w23d)
        forms.append((Fraction(0), c23, -t * c23))
        ca = Fraction(inst.n3p, inst.w13d)
        cb = Fraction(r, inst.w13d)
        forms.append((ca, cb, -s * ca - t * cb))
        ca = Fraction(n2, m * inst.w12d)
        cb = Fraction(n2 * r - n1 * m, n3 * inst.w12d)
        forms.append((ca, cb, -s * ca - t * cb))
    return forms


def _max_over_box_exact(
    inst: CoveringInstance, k: int, ia: int, ib: int, fc: Fraction,
    force: bool = False,
) -> Optional[tuple[Fraction, tuple[Fraction, Fraction]]]:
    """Exact maximum of F over the closed cell (k, ia, ib), with witness.

    F is piecewise linear, so its maximum over the box is attained at a box
    corner, at an intersection of a kink/equality line with a box edge, or
    at an intersection of two such lines.  The relevant (s, t) pool is the
    provable candidate window at the center with cap = F(center) + 2*budget
    (any minimizer anywhere in the box satisfies the window inequalities at
    the center after a Lipschitz shift).  Returns None when the line
    arrangement is dense and ``force`` is off; the caller subdivides first,
    which shrinks the pool.  With ``force`` the enumeration always runs (it
    is correct at any density, just slower).
    """
    two = 1 << k
    a0, a1 = Fraction(ia, two), Fraction(ia + 1, two)
    b0, b1 = Fraction(ib, two), Fraction(ib + 1, two)
    budget = _lip_budget(inst, k)
    center = (Fraction(2 * ia + 1, 2 * two), Fraction(2 * ib + 1, 2 * two))
    pool = candidate_window(
        inst, inst.point_from_cell(*center), fc + 2 * budget
    )
    corners = [(a0, b0), (a0, b1), (a1, b0), (a1, b1)]

    # Interval filter: drop (s, t) whose constraint max over the box is
    # everywhere at least someone else's; they never realize the min.
    ranges: list[tuple[Fraction, Fraction]] = []
    for st in pool:
        lo_g = Fraction(0)
        hi_g = Fraction(0)
        for ca, cb, c0 in _affine_forms(inst, [st]):
            vals = [ca * a + cb * b + c0 for a, b in corners]
            vmax = max(abs(v) for v in vals)
            vmin = Fraction(0) if min(vals) <= 0 <= max(vals) else min(abs(v) for v in vals)
            if vmin > lo_g:
                lo_g = vmin
            if vmax > hi_g:
                hi_g = vmax
        ranges.append((lo_g, hi_g))
    cutoff = min(hi_g for _, hi_g in ranges)
    pool = [st for st, (lo_g, _) in zip(pool, ranges) if lo_g <= cutoff]

    forms = _affine_forms(inst, pool)
    lines: set[tuple[Fraction, Fraction, Fraction]] = set()

    def add_line(A: Fraction, B: Fraction, C: Fraction):
        if A != 0:
            lines.add((Fraction(1), B / A, C / A))
        elif B != 0:
            lines.add((Fraction(0), Fraction(1), C / B))

    for ca, cb, c0 in forms:
        add_line(ca, cb, -c0)
    for i in range(len(forms)):
        fa, fb, f0 = forms[i]
        for j in range(i + 1, len(forms)):
            ga, gb, g0 = forms[j]
            add_line(fa - ga, fb - gb, -(f0 - g0))
            add_line(fa + ga, fb + gb, -(f0 + g0))
    if len(lines) > 220 and not force:
        return None

    pts: set[tuple[Fraction, Fraction]] = set(corners)
    pts.add(center)
    clipped: list[tuple[Fraction, Fraction, Fraction]] = []
    for A, B, C in lines:
        hit = False
        # intersections with the four edges
        if B != 0:
            for a in (a0, a1):
                b = (C - A * a) / B
                if b0 <= b <= b1:
                    pts.add((a, b))
                    hit = True
        if A != 0:
            for b in (b0, b1):
                a = (C - B * b) / A
                if a0 <= a <= a1:
                    pts.add((a, b))
                    hit = True
        if hit:
            clipped.append((A, B, C))
    for i in range(len(clipped)):
        A1, B1, C1 = clipped[i]
        for j in range(i + 1, len(clipped)):
            A2, B2, C2 = clipped[j]
            det = A1 * B2 - A2 * B1
            if det == 0:
                continue
            a = (C1 * B2 - C2 * B1) / det
            if not a0 <= a <= a1:
                continue
            b = (A1 * C2 - A2 * C1) / det
            if b0 <= b <= b1:
                pts.add((a, b))
    if len(pts) > 4000 and not force:
        return None

    best = Fraction(-1)
    best_pt = corners[0]
    for a, b in sorted(pts):
        v = _eval_cell(inst, a, b)
        if v > best:
            best = v
            best_pt = (a, b)
    return best, best_pt


def exact_alpha(inst: CoveringInstance, *, resolve_depth: int = 6) -> Fraction:
    """Exact rational value of max F over the fundamental cell.

    Branch-and-bound with the certified upper bounds, but small boxes are
    resolved exactly by piecewise-linear vertex enumeration instead of being
    subdivided forever (a box containing the true maximum can never satisfy
    UB <= incumbent, so plain subdivision cannot terminate on its own).  The
    returned value is evaluated, never guessed.
    """
    best = Fraction(-1)
    for k, ia, ib in _seed_points(inst):
        X, Y, L = _center_ints(inst, k, ia, ib)
        fc = _eval_scaled(inst, X, Y, L)
        if fc > best:
            best = fc

    lip_cache: dict[int, Fraction] = {}

    def lip(k: int) -> Fraction:
        v = lip_cache.get(k)
        if v is None:
            v = lip_cache[k] = _lip_budget(inst, k)
        return v

    X, Y, L = _center_ints(inst, 0, 0, 0)
    f0 = _eval_scaled(inst, X, Y, L)
    if f0 > best:
        best = f0
    heap: list[tuple[float, int, int, int, Fraction, Fraction]] = [
        (-float(f0 + lip(0)), 0, 0, 0, f0 + lip(0), f0)
    ]

    while heap:
        _, k, ia, ib, ub, fc = heapq.heappop(heap)
        if ub <= best:
            continue
        if k >= resolve_depth:
            # force past the density guards well before the depth limit:
            # ties between many (s, t) can persist at every scale.
            resolved = _max_over_box_exact(
                inst, k, ia, ib, fc, force=k >= resolve_depth + 8
            )
            if resolved is not None:
                val, _ = resolved
                if val > best:
                    best = val
                continue
            if k > 40:
                raise RuntimeError(f"exact resolution failed to converge on {inst!r}")
        k1 = k + 1
        lip1 = lip(k1)
        for ja in (2 * ia, 2 * ia + 1):
            for jb in (2 * ib, 2 * ib + 1):
                X, Y, L = _center_ints(inst, k1, ja, jb)
                f_child = _eval_scaled(inst, X, Y, L)
                if f_child > best:
                    best = f_child
                ub_c = f_child + lip1
                if ub_c > ub:
                    ub_c = ub
                if ub_c > best:
                    heapq.heappush(
                        heap, (-float(ub_c), k1, ja, jb, ub_c, f_child)
                    )
    return best


@dataclass(frozen=True)
class OverlapLengths:
    """Exact overlap of the two admissibility intervals at level E.

    J1 = [-A, A] is where constraint (2,3) admits Delta_t; J2 = [c-B, c+B]
    is where constraint (1,3) does, after the change of variable through
    beta.  ``case`` is "j1_in_j2", "j2_in_j1", or "partial" (which includes
    an empty overlap of length 0).
    """

    case: str
    length: Fraction
    j1: tuple[Fraction, Fraction]
    j2: tuple[Fraction, Fraction]


def overlap_lengths(
    inst: CoveringInstance, E: _RatLike, s: int, beta: _RatLike
) -> OverlapLengths:
    """Overlap of J1(E) and J2(s, E) at the given beta (requires r > 0)."""
    E = Fraction(E)
    beta = Fraction(beta)
    if E <= 0:
        raise ValueError(f"E must be positive, got {E}")
    if inst.r == 0:
        raise NonDistinctError(
            f"overlap intervals need r > 0, instance {inst!r} is rectangular"
        )
    A = E * inst.w23d / inst.n3
    B = Fraction(inst.m, inst.r) * E * inst.w13d / inst.n3
    c = Fraction(inst.m, inst.r) * (Fraction(s, inst.m) - beta)
    j1 = (-A, A)
    j2 = (c - B, c + B)
    if j2[0] <= j1[0] and j1[1] <= j2[1]:
        return OverlapLengths("j1_in_j2", 2 * A, j1, j2)
    if j1[0] <= j2[0] and j2[1] <= j1[1]:
        return OverlapLengths("j2_in_j1", 2 * B, j1, j2)
    length = min(j1[1], j2[1]) - max(j1[0], j2[0])
    if length < 0:
        length = Fraction(0)
    return OverlapLengths("partial", length, j1, j2)


def overlap_center_budget(inst: CoveringInstance, E: _RatLike) -> Fraction:
    """Largest |s/m - beta| for which J1 and J2 can still intersect:
    c(E) = (E/n3) * (r(n2+n3)/m + |n1| + n3)."""
    E = Fraction(E)
    return (E / inst.n3) * (
        Fraction(inst.r * inst.w23d, inst.m) + inst.n1a + inst.n3
    )
