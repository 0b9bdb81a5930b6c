"""Acceptance gate: one test per shipped claim, at the stated tolerances.

Each test is self-contained and named for the claim it gates, so a verbose
pytest run reads as a one-line pass/fail per criterion.  Wall-clock budgets
are asserted where the claim carries one; the kernel pre-warm fixture in
conftest keeps jit compilation out of the measurements.
"""

import json
import math
import random
import time
from fractions import Fraction

from kronalpha.bounds import (
    alpha_pair,
    compute_e1,
    lemma1_i,
    lemma1_ii,
    lemma1_iii,
    lemma4_check,
    theorem1_lower,
)
from kronalpha.cli import main
from kronalpha.covering import (
    CoveringInstance,
    EvalPoint,
    candidate_window,
    certified_alpha,
    eval_F,
    overlap_center_budget,
    overlap_lengths,
)
from kronalpha.harness import enumerate_canonical, scan
from kronalpha.numbers import canonicalize, lattice_params
from kronalpha.oracle import oracle_alpha


def _cli_json(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    assert code == 0
    return json.loads(out)


def test_ac1_exact_quarter_and_certified_enclosure(capsys):
    start = time.perf_counter()

    payload = _cli_json(capsys, "alpha", "-1", "2", "3", "--method", "exact", "--json")
    assert payload["alpha_exact"] == "1/4"

    payload = _cli_json(
        capsys, "alpha", "-1", "2", "3", "--method", "covering", "--tol", "1e-4", "--json"
    )
    lo, hi = Fraction(payload["alpha_lo"]), Fraction(payload["alpha_hi"])
    assert hi - lo <= Fraction(1, 10**4)
    assert lo <= Fraction(1, 4) <= hi

    assert time.perf_counter() - start < 5.0


def test_ac2_oracle_on_excluded_family(capsys):
    start = time.perf_counter()

    payload = _cli_json(capsys, "alpha", "-1", "1", "2", "--method", "oracle", "--json")
    mid = (Fraction(payload["alpha_lo"]) + Fraction(payload["alpha_hi"])) / 2
    assert abs(mid - Fraction(1, 3)) <= Fraction(5, 1000)

    assert time.perf_counter() - start < 60.0


def test_ac3_theorem1_sandwich_to_20():
    start = time.perf_counter()

    records = scan(20)
    sheared = [rec for rec in records if rec.r > 0]
    assert len(sheared) > 900
    for rec in sheared:
        assert rec.lower is not None and rec.upper is not None
        assert rec.lower <= rec.alpha_hi, (rec.n1, rec.n2, rec.n3)
        assert rec.alpha_lo <= rec.upper, (rec.n1, rec.n2, rec.n3)

    assert time.perf_counter() - start < 120.0


def test_ac4_verify_claims_via_cli(capsys):
    start = time.perf_counter()

    code = main(["verify", "--max-n3", "30", "--five-sixteenths"])
    out = capsys.readouterr().out
    assert code == 0
    assert "result: PASS" in out

    code = main(["verify", "--max-n3", "50", "--conjecture"])
    out = capsys.readouterr().out
    assert code == 0
    assert "result: PASS" in out
    assert "worst set: (-1, 2, 3)" in out

    assert time.perf_counter() - start < 600.0


def test_ac5_lemma_suite():
    rng = random.Random(516)

    def triple():
        n1a, n2, n3 = sorted(rng.sample(range(1, 500), 3))
        return rng.choice([-1, 1]) * n1a, n2, n3

    for _ in range(10**4):
        n1, n2, n3 = triple()
        ceiling = Fraction(n3, 4 * (abs(n1) + n3))
        e1 = Fraction(rng.randint(1, 64), 64) * ceiling
        assert lemma1_i(n1, n2, n3, e1)

    for _ in range(10**4):
        n1, n2, n3 = triple()
        r, m = rng.randint(1, 60), rng.randint(1, 60)
        while r + m < 5:
            r, m = rng.randint(1, 60), rng.randint(1, 60)
        assert lemma1_ii(n1, n2, n3, r, m)

    for _ in range(10**4):
        n1, n2, n3 = triple()
        r, m = rng.randint(1, 60), rng.randint(1, 60)
        while (r, m) == (1, 1):
            r, m = rng.randint(1, 60), rng.randint(1, 60)
        assert lemma1_iii(n1, n2, n3, r, m)

    # exhaustive unit-shear check: r = m = 1 forces the sum-set shape
    unit_shear = 0
    for ct in enumerate_canonical(50):
        lp = lattice_params(ct)
        assert lemma4_check(ct, lp)
        if (lp.r, lp.m) == (1, 1):
            unit_shear += 1
            assert ct.n1 < 0
            assert ct.n3 == abs(ct.n1) + ct.n2
    assert unit_shear > 0


def test_ac6_oracle_versus_covering():
    rng = random.Random(2008)
    classes = rng.sample(list(enumerate_canonical(15)), 20)
    for ct in classes:
        cov = certified_alpha(CoveringInstance(ct), Fraction(1, 10**4))
        orc = oracle_alpha(ct.entries)
        assert abs(cov.midpoint - orc.midpoint) <= Fraction(6, 1000), ct.entries


def test_ac7_pair_formula():
    assert alpha_pair(-5, 5) == Fraction(1, 4)

    rng = random.Random(2009)
    checked = 0
    while checked < 50:
        a = rng.choice([-1, 1]) * rng.randint(1, 20)
        b = rng.choice([-1, 1]) * rng.randint(1, 20)
        if a == b:
            continue
        formula = Fraction(math.gcd(a, b), 2 * (abs(a) + abs(b)))
        assert alpha_pair(a, b) == formula
        iv = oracle_alpha((a, b))
        assert abs(iv.midpoint - formula) <= Fraction(5, 1000), (a, b)
        checked += 1


def test_ac8_solver_property_suite():
    rng = random.Random(2010)
    instances = [
        CoveringInstance(canonicalize(e)) for e in [(1, 2, 3), (-2, 3, 5), (1, 2, 4)]
    ]

    def rand_point(denom=240):
        return EvalPoint(
            Fraction(rng.randint(-2 * denom, 2 * denom), denom),
            Fraction(rng.randint(-2 * denom, 2 * denom), denom),
        )

    def constraint_values(inst, p, s, t):
        u = p.x - Fraction(s, inst.m) - Fraction(t * inst.r, inst.n3)
        v = p.y - Fraction(t * inst.m, inst.n3)
        return (
            Fraction(inst.n3, inst.w23d) * abs(v),
            Fraction(inst.n3, inst.w13d) * abs(u),
            abs(inst.n2 * u - inst.n1 * v) / inst.w12d,
        )

    # K-periodicity and point symmetry
    for inst in instances:
        gens = [
            (Fraction(1, inst.m), Fraction(0)),
            (Fraction(inst.r, inst.n3), Fraction(inst.m, inst.n3)),
        ]
        for _ in range(40):
            p = rand_point()
            base = eval_F(inst, p)
            for gx, gy in gens:
                assert eval_F(inst, EvalPoint(p.x + gx, p.y + gy)) == base
            assert eval_F(inst, EvalPoint(-p.x, -p.y)) == base

    # Lipschitz certificate, per constraint and for the assembled field
    for inst in instances:
        for _ in range(25):
            p, q = rand_point(), rand_point()
            budget = abs(p.x - q.x) + abs(p.y - q.y)
            s, t = rng.randint(-3, 3), rng.randint(-3, 3)
            for cp, cq in zip(
                constraint_values(inst, p, s, t), constraint_values(inst, q, s, t)
            ):
                assert abs(cp - cq) <= budget
            assert abs(eval_F(inst, p) - eval_F(inst, q)) <= budget

    # window-widening stability
    for inst in instances:
        for _ in range(15):
            p = rand_point(denom=96)
            val = eval_F(inst, p)
            for cap in (val, 2 * val + Fraction(1, 9)):
                window = candidate_window(inst, p, cap)
                assert min(
                    max(constraint_values(inst, p, s, t)) for s, t in window
                ) == val

    # overlap-length formulas: containment cases match the two closed forms,
    # the partial case matches the interval arithmetic
    inst123 = instances[0]
    e = Fraction(1, 10)
    ol = overlap_lengths(inst123, e, 0, Fraction(0))
    assert ol.case == "j2_in_j1"
    assert ol.length == 2 * e * Fraction(abs(inst123.n1) + inst123.n3, inst123.n3)
    inst124 = instances[2]
    ol = overlap_lengths(inst124, e, 0, Fraction(0))
    assert ol.case == "j1_in_j2"
    assert ol.length == 2 * e * Fraction(inst124.n2 + inst124.n3, inst124.n3)
    ol = overlap_lengths(inst123, Fraction(1, 4), 1, Fraction(11, 20))
    assert ol.case == "partial"
    assert ol.length == min(ol.j1[1], ol.j2[1]) - max(ol.j1[0], ol.j2[0])
    assert ol.length == Fraction(3, 10)

    # at E = E1 the best-shift overlap always spans one t-candidate spacing
    for entries in [(1, 2, 3), (1, 2, 4)]:
        ct = canonicalize(entries)
        lp = lattice_params(ct)
        inst = CoveringInstance(ct)
        e1 = compute_e1(ct, lp)
        for _ in range(20):
            beta = Fraction(rng.randint(0, 10**4), 10**4 + 1)
            floor_s = (beta * lp.m).__floor__()
            best = max(
                overlap_lengths(inst, e1, s, beta).length
                for s in (floor_s, floor_s + 1)
            )
            assert best >= Fraction(lp.m, ct.n3)

    # necessity: just below theorem1_lower, beta = 1/(2m) is out of reach
    # of every shift s
    for ct in enumerate_canonical(10):
        lp = lattice_params(ct)
        if lp.r == 0:
            continue
        inst = CoveringInstance(ct)
        e = theorem1_lower(ct, lp) * Fraction(99, 100)
        budget = overlap_center_budget(inst, e)
        half = Fraction(1, 2 * lp.m)
        assert budget < half
        beta = half
        for s in range(-4, 5):
            assert abs(Fraction(s, lp.m) - beta) >= half > budget
