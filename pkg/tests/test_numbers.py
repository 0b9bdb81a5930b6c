import math
import random
from fractions import Fraction

import pytest

from kronalpha.harness import enumerate_canonical
from kronalpha.numbers import (
    CanonicalTriple,
    NonDistinctError,
    ZeroElementError,
    canonicalize,
    egcd,
    kappa_from_alpha,
    lattice_params,
    mod_inverse,
)


class TestEgcd:
    def test_known_pairs(self):
        assert egcd(2, 3)[0] == 1
        assert egcd(6, 9)[0] == 3
        assert egcd(0, 5)[0] == 5

    def test_bezout_identity_random(self):
        rng = random.Random(101)
        for _ in range(500):
            a = rng.randint(-10**6, 10**6)
            b = rng.randint(-10**6, 10**6)
            if (a, b) == (0, 0):
                continue
            g, u, v = egcd(a, b)
            assert g == math.gcd(a, b) > 0
            assert u * a + v * b == g

    def test_both_zero_rejected(self):
        with pytest.raises(ValueError):
            egcd(0, 0)


class TestModInverse:
    def test_known_values(self):
        assert mod_inverse(2, 3) == 2
        assert mod_inverse(3, 5) == 2
        assert mod_inverse(4, 5) == 4

    def test_inverse_property_random(self):
        rng = random.Random(102)
        for _ in range(300):
            n = rng.randint(2, 10**5)
            a = rng.randint(-10**5, 10**5)
            if math.gcd(a, n) != 1:
                continue
            inv = mod_inverse(a, n)
            assert 1 <= inv <= n - 1
            assert (a * inv) % n == 1

    def test_non_coprime_rejected(self):
        with pytest.raises(ValueError):
            mod_inverse(6, 9)


class TestCanonicalize:
    def test_gcd_reduction_and_sign_flip(self):
        ct = canonicalize((2, 4, 6))
        assert ct.entries == (-1, 2, 3)
        assert ct.scale == 2
        assert ct.distinct_abs
        assert ct.raw == (2, 4, 6)

    def test_global_sign_and_scale_invariance(self):
        assert canonicalize((-3, -6, -9)).class_key() == canonicalize(
            (1, 2, 3)
        ).class_key()

    def test_non_distinct_marked(self):
        ct = canonicalize((2, -2, 4))
        assert not ct.distinct_abs
        assert ct.entries == (-1, 1, 2)
        assert ct.scale == 2

    def test_zero_entry_rejected(self):
        with pytest.raises(ZeroElementError):
            canonicalize((0, 2, 3))

    def test_wrong_length_rejected(self):
        with pytest.raises(ValueError):
            canonicalize((1, 2))

    def test_all_transforms_land_in_one_class(self):
        # Single-element sign flips, global negation, scaling, permutations.
        rng = random.Random(103)
        for _ in range(60):
            vals = rng.sample(range(1, 40), 3)
            base = canonicalize(vals).class_key()
            for i in range(3):
                flipped = list(vals)
                flipped[i] = -flipped[i]
                assert canonicalize(flipped).class_key() == base
            assert canonicalize([-v for v in vals]).class_key() == base
            c = rng.randint(2, 5)
            assert canonicalize([c * v for v in vals]).class_key() == base
            perm = list(vals)
            rng.shuffle(perm)
            assert canonicalize(perm).class_key() == base


class TestLatticeParams:
    def test_known_params(self):
        cases = {
            (1, 2, 3): (1, 1),     # canonical (-1,2,3)
            (-2, 3, 5): (1, 1),
            (3, 4, 6): (2, 0),
            (1, 2, 4): (2, 1),
            (-1, 2, 5): (1, 2),
            (3, 4, 5): (1, 2),
        }
        for entries, (m, r) in cases.items():
            lp = lattice_params(canonicalize(entries))
            assert (lp.m, lp.r) == (m, r), entries

    def test_spec_shapes(self):
        lp = lattice_params(canonicalize((3, 4, 6)))
        assert (lp.m, lp.n2p, lp.n3p, lp.r) == (2, 2, 3, 0)
        lp = lattice_params(canonicalize((1, 2, 4)))
        assert (lp.m, lp.n2p, lp.n3p, lp.r) == (2, 1, 2, 1)

    def test_lemma4_consistency_on_unit_shear(self):
        # r = m = 1 forces a negative n1 and the sum-set shape.
        for ct in enumerate_canonical(25):
            lp = lattice_params(ct)
            if (lp.r, lp.m) == (1, 1):
                assert ct.n1 < 0
                assert ct.n3 == abs(ct.n1) + ct.n2

    def test_structural_invariants(self):
        for ct in enumerate_canonical(25):
            lp = lattice_params(ct)
            assert lp.m == math.gcd(ct.n2, ct.n3)
            assert lp.m * lp.n2p == ct.n2
            assert lp.m * lp.n3p == ct.n3
            assert math.gcd(lp.n2p, lp.n3p) == 1
            assert 0 <= lp.r <= Fraction(ct.n3, 2 * lp.m)
            assert not lp.n1_flipped
            # idempotent: recomputing on the canonical triple changes nothing
            again = lattice_params(ct)
            assert (again.m, again.r) == (lp.m, lp.r)

    def test_congruence_defines_r(self):
        for ct in enumerate_canonical(20):
            lp = lattice_params(ct)
            if lp.n3p == 1:
                assert lp.r == 0
                continue
            assert (lp.r * ct.n2 - ct.n1 * lp.m) % ct.n3 == 0

    def test_non_distinct_rejected(self):
        with pytest.raises(NonDistinctError):
            lattice_params(canonicalize((2, -2, 4)))


class TestKappa:
    def test_endpoints_and_quarter(self):
        assert kappa_from_alpha(0) == 0.0
        assert kappa_from_alpha(Fraction(1, 2)) == pytest.approx(2.0, abs=1e-12)
        assert kappa_from_alpha(Fraction(1, 4)) == pytest.approx(
            math.sqrt(2), abs=1e-12
        )

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            kappa_from_alpha(Fraction(3, 5))
        with pytest.raises(ValueError):
            kappa_from_alpha(-0.01)

    def test_monotone_on_grid(self):
        vals = [kappa_from_alpha(Fraction(i, 40)) for i in range(21)]
        assert vals == sorted(vals)
