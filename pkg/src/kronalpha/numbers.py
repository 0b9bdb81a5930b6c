"""Exact number-theoretic primitives and set canonicalization.

Everything here is pure integer / rational arithmetic: extended gcd, modular
inverse, the canonical form of a 3-element integer set, and the lattice
parameters (m, r) that drive the covering formulation.  No floats except in
``kappa_from_alpha``, which is the only trigonometric conversion in the
package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

Rational = Fraction

__all__ = [
    "Rational",
    "ZeroElementError",
    "NonDistinctError",
    "CanonicalTriple",
    "LatticeParams",
    "egcd",
    "mod_inverse",
    "canonicalize",
    "lattice_params",
    "kappa_from_alpha",
]


class ZeroElementError(ValueError):
    """An input element is zero; the constants are defined for nonzero integers."""


class NonDistinctError(ValueError):
    """Absolute values are not pairwise distinct, so the lattice formulation
    does not apply (the brute-force oracle still does)."""


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: return ``(g, u, v)`` with ``u*a + v*b = g = gcd(|a|, |b|) > 0``.

    Raises ValueError for (0, 0), where the gcd is undefined.
    """
    if a == 0 and b == 0:
        raise ValueError("egcd(0, 0) is undefined")
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def mod_inverse(a: int, n: int) -> int:
    """Inverse of ``a`` modulo ``n`` (n >= 2), returned in [1, n-1].

    Requires gcd(a, n) = 1.
    """
    if n < 2:
        raise ValueError(f"modulus must be >= 2, got {n}")
    g, u, _ = egcd(a, n)
    if g != 1:
        raise ValueError(f"{a} is not invertible modulo {n} (gcd = {g})")
    return u % n


@dataclass(frozen=True)
class CanonicalTriple:
    """A gcd-reduced, sign-normalized representative of a 3-element set.

    Invariants: gcd(n1, n2, n3) = 1; n2, n3 > 0; if ``distinct_abs`` then
    0 < |n1| < n2 < n3 and the sign of n1 is the one making the lattice shear
    parameter r nonnegative.  ``scale`` is the gcd removed from the raw input,
    ``raw`` the input itself, and ``sign_flips_applied`` the positions (in
    canonical order) whose sign differs from the scaled, sorted input.
    """

    n1: int
    n2: int
    n3: int
    scale: int
    distinct_abs: bool
    sign_flips_applied: tuple[int, ...]
    raw: tuple[int, int, int]

    @property
    def entries(self) -> tuple[int, int, int]:
        return (self.n1, self.n2, self.n3)

    def class_key(self) -> tuple[int, int, int]:
        """Identity of the alpha-equivalence class this triple represents."""
        return (self.n1, self.n2, self.n3)


@dataclass(frozen=True)
class LatticeParams:
    """Parameters of the lattice K generated by (1/m, 0) and (r/n3, m/n3).

    m = gcd(n2, n3), n2p = n2/m, n3p = n3/m (coprime), and r is the reduced
    representative of n1 * (n2p)^-1 modulo n3p in (-n3p/2, n3p/2], negated
    together with n1 when that representative is negative.  ``n1_flipped``
    records whether such a flip was needed for the triple the params were
    computed from; canonical triples always yield ``n1_flipped = False``.
    """

    m: int
    n2p: int
    n3p: int
    r: int
    n1_flipped: bool = False


def _shear(n1: int, n2: int, n3: int) -> tuple[int, int, int, int]:
    """(m, n2p, n3p, r) for the given signs, with r reduced to (-n3p/2, n3p/2]."""
    m = math.gcd(n2, n3)
    n2p = n2 // m
    n3p = n3 // m
    # n2 < n3 forces n3p >= 2, so the inverse below is well defined.
    inv = mod_inverse(n2p % n3p, n3p)
    r = (n1 * inv) % n3p
    if 2 * r > n3p:
        r -= n3p
    return m, n2p, n3p, r


def canonicalize(t: Sequence[int]) -> CanonicalTriple:
    """Reduce a raw 3-element input to its canonical representative.

    Divides out gcd, sorts by absolute value, makes n2 and n3 positive, and
    picks the sign of n1 so that ``lattice_params`` yields r >= 0 (ties go to
    n1 > 0).  Sets ``distinct_abs`` and records scale and sign flips so the
    result can be mapped back to the raw input.
    """
    vals = tuple(int(v) for v in t)
    if len(vals) != 3:
        raise ValueError(f"expected 3 entries, got {len(vals)}")
    if any(v == 0 for v in vals):
        raise ZeroElementError(f"set entries must be nonzero: {vals}")
    g = math.gcd(math.gcd(abs(vals[0]), abs(vals[1])), abs(vals[2]))
    reduced = sorted((v // g for v in vals), key=lambda v: (abs(v), v))
    a1, a2, a3 = (abs(v) for v in reduced)
    distinct = a1 < a2 < a3

    if distinct:
        # Sign of n1 is fixed by the r >= 0 rule; n2, n3 positive.
        _, _, _, r_pos = _shear(a1, a2, a3)
        n1 = a1 if r_pos >= 0 else -a1
        canonical = (n1, a2, a3)
    else:
        # Keep a (-v, +v) pair when both signs of an absolute value occur;
        # everything else becomes positive.
        by_abs: dict[int, set[int]] = {}
        for v in reduced:
            by_abs.setdefault(abs(v), set()).add(v)
        out = []
        for v in reduced:
            if len(by_abs[abs(v)]) == 2:
                out.append(v)
            else:
                out.append(abs(v))
        canonical = tuple(sorted(out, key=lambda v: (abs(v), v)))

    flips = tuple(
        i for i, (c, o) in enumerate(zip(canonical, reduced)) if (c > 0) != (o > 0)
    )
    return CanonicalTriple(
        n1=canonical[0],
        n2=canonical[1],
        n3=canonical[2],
        scale=g,
        distinct_abs=distinct,
        sign_flips_applied=flips,
        raw=vals,
    )


def lattice_params(ct: CanonicalTriple) -> LatticeParams:
    """Lattice parameters (m, n2p, n3p, r) of a distinct-absolute-value triple.

    If the reduced residue for the triple's n1 sign is negative, the returned
    params correspond to the triple with n1 negated (``n1_flipped = True``)
    and r negated back into [0, n3p/2].  r = 0 is the rectangular case.
    """
    if not ct.distinct_abs:
        raise NonDistinctError(
            f"lattice parameters need distinct absolute values: {ct.entries}"
        )
    m, n2p, n3p, r = _shear(ct.n1, ct.n2, ct.n3)
    if r < 0:
        return LatticeParams(m=m, n2p=n2p, n3p=n3p, r=-r, n1_flipped=True)
    return LatticeParams(m=m, n2p=n2p, n3p=n3p, r=r, n1_flipped=False)


def kappa_from_alpha(alpha: Union[float, Fraction]) -> float:
    """Chord length |e^(2*pi*i*alpha) - 1| = 2*sin(pi*alpha) for alpha in [0, 1/2]."""
    a = float(alpha)
    if not 0.0 <= a <= 0.5:
        raise ValueError(f"alpha must lie in [0, 1/2], got {alpha}")
    return 2.0 * math.sin(math.pi * a)
