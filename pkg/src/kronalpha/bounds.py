"""Closed-form bounds and predicates for 2- and 3-element sets.

All quantities are exact ``Fraction`` values: the size-based trivial bound,
the lattice lower bound E0, the quantity E1, the derived upper bound, the
two-element closed form, and the inequality predicates used by the 5/16
case analysis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .numbers import (
    CanonicalTriple,
    LatticeParams,
    NonDistinctError,
    lattice_params,
)

__all__ = [
    "RectangularUnsupported",
    "BoundReport",
    "trivial_upper_bound",
    "theorem1_lower",
    "compute_e1",
    "theorem1_upper",
    "alpha_pair",
    "lemma1_i",
    "lemma1_ii",
    "lemma1_iii",
    "lemma4_check",
    "bound_report",
    "FIVE_SIXTEENTHS",
]

FIVE_SIXTEENTHS = Fraction(5, 16)


class RectangularUnsupported(ValueError):
    """r = 0: the shear-lattice bound formulas assume r > 0."""


@dataclass(frozen=True)
class BoundReport:
    """Exact bound summary for one set.

    ``lower``/``e1``/``upper``/``lam`` are None in the rectangular case
    (r = 0) and for non-distinct absolute values, where only the trivial
    bound applies.  ``lam`` = e1 - lower.
    """

    trivial: Fraction
    lower: Optional[Fraction]
    e1: Optional[Fraction]
    upper: Optional[Fraction]
    lam: Optional[Fraction]
    rectangular: bool


def trivial_upper_bound(d: int) -> Fraction:
    """Size-based bound 1/2 - 1/(2d) for a d-element set."""
    if d < 1:
        raise ValueError(f"set size must be >= 1, got {d}")
    return Fraction(1, 2) - Fraction(1, 2 * d)


def _check_shear(ct: CanonicalTriple, lp: LatticeParams) -> tuple[int, int, int, int, int]:
    if not ct.distinct_abs:
        raise NonDistinctError(f"bounds need distinct absolute values: {ct.entries}")
    if lp.r == 0:
        raise RectangularUnsupported(f"r = 0 for {ct.entries}; shear bounds need r > 0")
    return abs(ct.n1), ct.n2, ct.n3, lp.r, lp.m


def theorem1_lower(ct: CanonicalTriple, lp: LatticeParams) -> Fraction:
    """Lower bound E0 = n3 / (2(r(n2+n3) + m(|n1|+n3)))."""
    n1a, n2, n3, r, m = _check_shear(ct, lp)
    return Fraction(n3, 2 * (r * (n2 + n3) + m * (n1a + n3)))


def compute_e1(ct: CanonicalTriple, lp: LatticeParams) -> Fraction:
    """E1 = max of m/(2(n2+n3)), r/(2(|n1|+n3)), (n3+2rm)/(2(r(n2+n3)+m(|n1|+n3)))."""
    n1a, n2, n3, r, m = _check_shear(ct, lp)
    return max(
        Fraction(m, 2 * (n2 + n3)),
        Fraction(r, 2 * (n1a + n3)),
        Fraction(n3 + 2 * r * m, 2 * (r * (n2 + n3) + m * (n1a + n3))),
    )


def theorem1_upper(ct: CanonicalTriple, lp: LatticeParams) -> Fraction:
    """Upper bound E1 * (2|n1|n2 + n3(|n1|+n2)) / (n3(|n1|+n2))."""
    n1a, n2, n3, _, _ = _check_shear(ct, lp)
    e1 = compute_e1(ct, lp)
    return e1 * Fraction(2 * n1a * n2 + n3 * (n1a + n2), n3 * (n1a + n2))


def alpha_pair(a: int, b: int) -> Fraction:
    """Two-element closed form: alpha({a, b}) = gcd(|a|, |b|) / (2(|a| + |b|)).

    a = -b is allowed (gives 1/4, the sharp case); a = b collapses the set to
    a singleton and is rejected.
    """
    if a == 0 or b == 0:
        raise ValueError("pair entries must be nonzero")
    if a == b:
        raise ValueError(f"{{{a}, {b}}} is a singleton, not a pair")
    return Fraction(math.gcd(abs(a), abs(b)), 2 * (abs(a) + abs(b)))


def _check_ordering(n1: int, n2: int, n3: int) -> int:
    n1a = abs(n1)
    if not 0 < n1a < n2 < n3:
        raise ValueError(f"need 0 < |n1| < n2 < n3, got ({n1}, {n2}, {n3})")
    return n1a


def lemma1_i(n1: int, n2: int, n3: int, e1: Fraction) -> bool:
    """Whether E1*(2|n1|n2 + n3(|n1|+n2)) / (n3(|n1|+n2)) <= 5/16.

    Guaranteed true whenever E1 <= n3 / (4(|n1|+n3)).
    """
    n1a = _check_ordering(n1, n2, n3)
    value = e1 * Fraction(2 * n1a * n2 + n3 * (n1a + n2), n3 * (n1a + n2))
    return value <= FIVE_SIXTEENTHS


def lemma1_ii(n1: int, n2: int, n3: int, r: int, m: int) -> bool:
    """Whether (2|n1|n2 + n3(|n1|+n2)) / ((|n1|+n2)(r(n2+n3) + m(|n1|+n3))) <= 5/16.

    Guaranteed true whenever r + m >= 5.
    """
    n1a = _check_ordering(n1, n2, n3)
    if r < 1 or m < 1:
        raise ValueError(f"need r, m >= 1, got r={r}, m={m}")
    value = Fraction(
        2 * n1a * n2 + n3 * (n1a + n2),
        (n1a + n2) * (r * (n2 + n3) + m * (n1a + n3)),
    )
    return value <= FIVE_SIXTEENTHS


def lemma1_iii(n1: int, n2: int, n3: int, r: int, m: int) -> bool:
    """Whether (2|n1|n2 + n3(|n1|+n2))(2 + min(r, m)) /
    (4(|n1|+n2)(r(n2+n3) + m(|n1|+n3))) <= 5/16.

    Guaranteed true whenever (r, m) != (1, 1).
    """
    n1a = _check_ordering(n1, n2, n3)
    if r < 1 or m < 1:
        raise ValueError(f"need r, m >= 1, got r={r}, m={m}")
    value = Fraction(
        (2 * n1a * n2 + n3 * (n1a + n2)) * (2 + min(r, m)),
        4 * (n1a + n2) * (r * (n2 + n3) + m * (n1a + n3)),
    )
    return value <= FIVE_SIXTEENTHS


def lemma4_check(ct: CanonicalTriple, lp: LatticeParams) -> bool:
    """r = m = 1 forces n1 < 0 and n3 = |n1| + n2; vacuously true otherwise."""
    if not ct.distinct_abs:
        raise NonDistinctError(f"lemma check needs distinct absolute values: {ct.entries}")
    if (lp.r, lp.m) != (1, 1):
        return True
    n1 = -abs(ct.n1) if lp.n1_flipped else ct.n1
    return n1 < 0 and ct.n3 == abs(ct.n1) + ct.n2


def bound_report(ct: CanonicalTriple) -> BoundReport:
    """Assemble all bounds for one canonical triple.

    Non-distinct sets get the trivial bound only; rectangular sets (r = 0)
    additionally carry the flag but no shear-bound fields.
    """
    d = len(set(ct.entries))
    trivial = trivial_upper_bound(d)
    if not ct.distinct_abs:
        return BoundReport(
            trivial=trivial, lower=None, e1=None, upper=None, lam=None, rectangular=False
        )
    lp = lattice_params(ct)
    if lp.r == 0:
        return BoundReport(
            trivial=trivial, lower=None, e1=None, upper=None, lam=None, rectangular=True
        )
    lower = theorem1_lower(ct, lp)
    e1 = compute_e1(ct, lp)
    upper = theorem1_upper(ct, lp)
    return BoundReport(
        trivial=trivial,
        lower=lower,
        e1=e1,
        upper=upper,
        lam=e1 - lower,
        rectangular=False,
    )
