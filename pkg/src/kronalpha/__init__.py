"""Angular Kronecker constants of 2- and 3-element integer sets.

Exact lattice-covering solver with certified enclosures, closed-form
bounds, a definition-level brute-force oracle, and a verification harness
for the global 5/16 and 1/4 claims.
"""

from .bounds import (
    FIVE_SIXTEENTHS,
    BoundReport,
    RectangularUnsupported,
    alpha_pair,
    bound_report,
    compute_e1,
    lemma1_i,
    lemma1_ii,
    lemma1_iii,
    lemma4_check,
    theorem1_lower,
    theorem1_upper,
    trivial_upper_bound,
)
from .covering import (
    AlphaInterval,
    CoveringInstance,
    EvalPoint,
    OverlapLengths,
    candidate_window,
    certified_alpha,
    eval_F,
    exact_alpha,
    overlap_center_budget,
    overlap_lengths,
)
from .harness import (
    ScanRecord,
    VerifyOutcome,
    emit_report,
    enumerate_canonical,
    parse_json_report,
    scan,
    verify_five_sixteenths,
    verify_quarter_conjecture,
)
from .numbers import (
    CanonicalTriple,
    LatticeParams,
    NonDistinctError,
    Rational,
    ZeroElementError,
    canonicalize,
    egcd,
    kappa_from_alpha,
    lattice_params,
    mod_inverse,
)
from .oracle import OracleConfig, oracle_alpha, oracle_distance

__version__ = "0.1.0"

__all__ = [
    "__version__",
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
    "RectangularUnsupported",
    "BoundReport",
    "FIVE_SIXTEENTHS",
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
    "OracleConfig",
    "oracle_alpha",
    "oracle_distance",
    "ScanRecord",
    "VerifyOutcome",
    "enumerate_canonical",
    "scan",
    "verify_five_sixteenths",
    "verify_quarter_conjecture",
    "emit_report",
    "parse_json_report",
]
