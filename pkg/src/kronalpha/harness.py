"""Class enumeration, batch verification, and report emission.

The scan walks every alpha-equivalence class of 3-element sets with distinct
absolute values up to a ceiling on n3, attaches the closed-form bounds and a
certified solver enclosure to each, and can verify the two global claims:
every class stays at or below 5/16, and the maximum over classes is 1/4,
attained only by the {1,2,3} class.

Verification routing per class: if the closed-form upper bound already sits
at or below the claimed bound the class is certified without running the
solver; otherwise the solver runs with an early stop once its upper end
drops below the bound minus the equality window.  Classes whose upper end
stays inside the window are equality candidates and get the exact solver,
collapsing their interval to a point.  The tolerance policy separates solver
termination error from the mathematical assertion: a claim "alpha <= B"
passes iff every certified upper end is <= B + 1e-6, and equality detection
(window 1e-4) is always confirmed exactly.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Optional, Sequence, Union

from .bounds import FIVE_SIXTEENTHS, bound_report
from .covering import CoveringInstance, certified_alpha, exact_alpha
from .numbers import CanonicalTriple, canonicalize, lattice_params

__all__ = [
    "ScanRecord",
    "VerifyOutcome",
    "enumerate_canonical",
    "scan",
    "verify_five_sixteenths",
    "verify_quarter_conjecture",
    "emit_report",
    "parse_json_report",
    "MAX_N3_LIMIT",
]

# Safety ceiling: class count grows roughly cubically in max_n3.
MAX_N3_LIMIT = 200

_PASS_TOL = Fraction(1, 10**6)
_EQ_WINDOW = Fraction(1, 10**4)

_CSV_COLUMNS = [
    "n1", "n2", "n3", "m", "r", "rectangular", "trivial", "lower", "e1",
    "upper", "alpha_lo", "alpha_hi", "alpha_exact", "sumset", "time_ms",
]


@dataclass(frozen=True)
class ScanRecord:
    """One scanned class: canonical identity, bounds, and solver enclosure.

    The sandwich invariant (lower <= alpha_hi, alpha_lo <= upper when the
    shear bounds exist) is enforced at construction.
    """

    raw: tuple[int, int, int]
    n1: int
    n2: int
    n3: int
    m: int
    r: int
    rectangular: bool
    trivial: Fraction
    lower: Optional[Fraction]
    e1: Optional[Fraction]
    upper: Optional[Fraction]
    alpha_lo: Fraction
    alpha_hi: Fraction
    alpha_exact: Optional[Fraction]
    sumset: bool
    time_ms: int

    def __post_init__(self):
        if self.alpha_lo > self.alpha_hi:
            raise ValueError(
                f"alpha_lo {self.alpha_lo} > alpha_hi {self.alpha_hi}"
            )
        if self.lower is not None and self.lower > self.alpha_hi:
            raise ValueError(
                f"sandwich violated: lower {self.lower} > alpha_hi {self.alpha_hi}"
            )
        if self.upper is not None and self.alpha_lo > self.upper:
            raise ValueError(
                f"sandwich violated: alpha_lo {self.alpha_lo} > upper {self.upper}"
            )


@dataclass(frozen=True)
class VerifyOutcome:
    """Result of checking one global claim over all scanned classes."""

    claim_id: str
    bound: Fraction
    worst_set: tuple[int, int, int]
    worst_lo: Fraction
    worst_hi: Fraction
    passed: bool
    checked: int


def enumerate_canonical(
    max_n3: int, include_negative_n1: bool = True
) -> Iterator[CanonicalTriple]:
    """One canonical representative per class with 0 < |n1| < n2 < n3 <= max_n3.

    Emits in lexicographic (n3, n2, |n1|) order.  With include_negative_n1
    both sign variants of each |n1| are canonicalized and checked to land in
    the same class; the scan then provably covers every sign choice.
    """
    if max_n3 < 3:
        raise ValueError(f"max_n3 must be >= 3, got {max_n3}")
    for n3 in range(3, max_n3 + 1):
        for n2 in range(2, n3):
            for a in range(1, n2):
                if math.gcd(math.gcd(a, n2), n3) != 1:
                    continue
                ct = canonicalize((a, n2, n3))
                if include_negative_n1:
                    ct_neg = canonicalize((-a, n2, n3))
                    if ct_neg.class_key() != ct.class_key():
                        raise RuntimeError(
                            f"sign variants of ({a}, {n2}, {n3}) canonicalize "
                            f"differently: {ct.class_key()} vs {ct_neg.class_key()}"
                        )
                yield ct


def _scan_one(args: tuple) -> ScanRecord:
    ct, tol, exact, timing = args
    start = time.perf_counter()
    rep = bound_report(ct)
    lp = lattice_params(ct)
    inst = CoveringInstance(ct)
    iv = certified_alpha(inst, tol)
    exact_val = exact_alpha(inst) if exact else None
    if exact_val is not None and not iv.lo <= exact_val <= iv.hi:
        raise RuntimeError(
            f"exact value {exact_val} outside certified [{iv.lo}, {iv.hi}] "
            f"for {ct.entries}"
        )
    elapsed = int(round((time.perf_counter() - start) * 1000)) if timing else 0
    return ScanRecord(
        raw=ct.raw,
        n1=ct.n1,
        n2=ct.n2,
        n3=ct.n3,
        m=lp.m,
        r=lp.r,
        rectangular=rep.rectangular,
        trivial=rep.trivial,
        lower=rep.lower,
        e1=rep.e1,
        upper=rep.upper,
        alpha_lo=iv.lo,
        alpha_hi=iv.hi,
        alpha_exact=exact_val,
        sumset=ct.n3 == abs(ct.n1) + ct.n2,
        time_ms=elapsed,
    )


def _map_jobs(fn, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def scan(
    max_n3: int,
    tol: Union[Fraction, float, str] = Fraction(1, 1000),
    jobs: int = 1,
    exact: bool = False,
    timing: bool = False,
) -> list[ScanRecord]:
    """Bounds plus certified enclosure for every class with n3 <= max_n3.

    Output order is the enumeration order regardless of job count, and with
    timing off (the default) reruns are byte-identical after serialization.
    """
    if max_n3 > MAX_N3_LIMIT:
        raise ValueError(f"max_n3 {max_n3} exceeds safety limit {MAX_N3_LIMIT}")
    tol = Fraction(tol)
    work = [(ct, tol, exact, timing) for ct in enumerate_canonical(max_n3)]
    return _map_jobs(_scan_one, work, jobs)


def _verify_one(args: tuple) -> tuple[CanonicalTriple, Fraction, Fraction, Optional[Fraction]]:
    """(class, lo, hi, exact) with the routing described in the module docstring."""
    ct, bound = args
    rep = bound_report(ct)
    if rep.upper is not None and rep.upper <= bound:
        lo, hi = rep.lower, rep.upper
    else:
        inst = CoveringInstance(ct)
        iv = certified_alpha(inst, _EQ_WINDOW, stop_hi_at=bound - _EQ_WINDOW)
        lo, hi = iv.lo, iv.hi
    exact_val = None
    if hi >= bound - _EQ_WINDOW:
        exact_val = exact_alpha(CoveringInstance(ct))
        lo = hi = exact_val
    return ct, lo, hi, exact_val


def _assess_claim(
    claim_id: str,
    bound: Fraction,
    results: Sequence[tuple[CanonicalTriple, Fraction, Fraction, Optional[Fraction]]],
    unique_key: Optional[tuple[int, int, int]] = None,
) -> VerifyOutcome:
    """Fold per-class enclosures into a pass/fail verdict.

    Pass requires every certified upper end <= bound + 1e-6; with
    ``unique_key`` it additionally requires the set of exactly-confirmed
    equality classes to be precisely that one class.  The worst set is the
    one with the largest upper end (ties broken by lower end, then scan
    order), so pass <=> worst_hi <= bound + tolerance.
    """
    if not results:
        raise ValueError("no classes to assess")
    worst = max(results, key=lambda rec: (rec[2], rec[1]))
    all_ok = all(hi <= bound + _PASS_TOL for _, _, hi, _ in results)
    passed = all_ok
    if unique_key is not None:
        eq_keys = {
            ct.class_key()
            for ct, _, _, exact_val in results
            if exact_val is not None and exact_val == bound
        }
        passed = all_ok and eq_keys == {unique_key}
    return VerifyOutcome(
        claim_id=claim_id,
        bound=bound,
        worst_set=worst[0].entries,
        worst_lo=worst[1],
        worst_hi=worst[2],
        passed=passed,
        checked=len(results),
    )


def verify_five_sixteenths(max_n3: int, jobs: int = 1) -> VerifyOutcome:
    """Check alpha(S) <= 5/16 for every class with n3 <= max_n3."""
    if max_n3 > MAX_N3_LIMIT:
        raise ValueError(f"max_n3 {max_n3} exceeds safety limit {MAX_N3_LIMIT}")
    work = [(ct, FIVE_SIXTEENTHS) for ct in enumerate_canonical(max_n3)]
    results = _map_jobs(_verify_one, work, jobs)
    return _assess_claim("five-sixteenths", FIVE_SIXTEENTHS, results)


def verify_quarter_conjecture(max_n3: int, jobs: int = 1) -> VerifyOutcome:
    """Check alpha(S) <= 1/4 with equality exactly at the {1,2,3} class."""
    if max_n3 > MAX_N3_LIMIT:
        raise ValueError(f"max_n3 {max_n3} exceeds safety limit {MAX_N3_LIMIT}")
    quarter = Fraction(1, 4)
    work = [(ct, quarter) for ct in enumerate_canonical(max_n3)]
    results = _map_jobs(_verify_one, work, jobs)
    return _assess_claim("quarter-conjecture", quarter, results, unique_key=(-1, 2, 3))


def _rat_str(x: Optional[Fraction]) -> str:
    return "" if x is None else f"{x.numerator}/{x.denominator}"


def _real_str(x: Fraction) -> str:
    return format(float(x), ".12g")


def _bool_str(b: bool) -> str:
    return "true" if b else "false"


def _csv_row(rec: ScanRecord) -> list[str]:
    return [
        str(rec.n1), str(rec.n2), str(rec.n3), str(rec.m), str(rec.r),
        _bool_str(rec.rectangular), _rat_str(rec.trivial), _rat_str(rec.lower),
        _rat_str(rec.e1), _rat_str(rec.upper), _real_str(rec.alpha_lo),
        _real_str(rec.alpha_hi), _rat_str(rec.alpha_exact),
        _bool_str(rec.sumset), str(rec.time_ms),
    ]


def _json_obj(rec: ScanRecord) -> dict:
    # Rationals stay "p/q" here (alpha_lo/hi included) so the JSON report
    # round-trips to identical records.
    return {
        "raw": list(rec.raw),
        "n1": rec.n1,
        "n2": rec.n2,
        "n3": rec.n3,
        "m": rec.m,
        "r": rec.r,
        "rectangular": rec.rectangular,
        "trivial": _rat_str(rec.trivial),
        "lower": _rat_str(rec.lower) or None,
        "e1": _rat_str(rec.e1) or None,
        "upper": _rat_str(rec.upper) or None,
        "alpha_lo": _rat_str(rec.alpha_lo),
        "alpha_hi": _rat_str(rec.alpha_hi),
        "alpha_exact": _rat_str(rec.alpha_exact) or None,
        "sumset": rec.sumset,
        "time_ms": rec.time_ms,
    }


def emit_report(
    records: Sequence[ScanRecord],
    format: str = "csv",
    path: Optional[Union[str, Path]] = None,
) -> str:
    """Serialize records (CSV with the fixed column set, or JSON).

    Returns the text; also writes it to ``path`` when given.
    """
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(_CSV_COLUMNS)
        for rec in records:
            writer.writerow(_csv_row(rec))
        text = buf.getvalue()
    elif format == "json":
        text = json.dumps([_json_obj(rec) for rec in records], indent=2) + "\n"
    else:
        raise ValueError(f"unknown report format {format!r}")
    if path is not None:
        Path(path).write_text(text)
    return text


def _frac_or_none(s: Optional[str]) -> Optional[Fraction]:
    return None if s is None else Fraction(s)


def parse_json_report(text: str) -> list[ScanRecord]:
    """Inverse of emit_report(..., format="json")."""
    out = []
    for obj in json.loads(text):
        out.append(
            ScanRecord(
                raw=tuple(obj["raw"]),
                n1=obj["n1"],
                n2=obj["n2"],
                n3=obj["n3"],
                m=obj["m"],
                r=obj["r"],
                rectangular=obj["rectangular"],
                trivial=Fraction(obj["trivial"]),
                lower=_frac_or_none(obj["lower"]),
                e1=_frac_or_none(obj["e1"]),
                upper=_frac_or_none(obj["upper"]),
                alpha_lo=Fraction(obj["alpha_lo"]),
                alpha_hi=Fraction(obj["alpha_hi"]),
                alpha_exact=_frac_or_none(obj["alpha_exact"]),
                sumset=obj["sumset"],
                time_ms=obj["time_ms"],
            )
        )
    return out
