import math
import random
from fractions import Fraction

import numpy as np
import pytest

from kronalpha._backend import VALID_BACKENDS, get_kernels
from kronalpha.covering import CoveringInstance, eval_F
from kronalpha.numbers import canonicalize, lattice_params


def _random_sweep_inputs(rng, n_elems):
    nvec = np.array(
        [rng.choice([-1, 1]) * rng.randint(1, 9) for _ in range(n_elems)],
        dtype=np.float64,
    )
    targets = np.array(
        [[rng.random() for _ in range(n_elems)] for _ in range(17)],
        dtype=np.float64,
    )
    xs = np.arange(400, dtype=np.float64) / 400.0
    return nvec, targets, xs


class TestSelection:
    def test_default_is_valid(self):
        assert get_kernels().name in VALID_BACKENDS

    def test_explicit_names(self):
        for name in VALID_BACKENDS:
            assert get_kernels(name).name == name

    def test_unknown_rejected(self):
        with pytest.raises(ValueError):
            get_kernels("fortran")

    def test_env_variable_selects(self, monkeypatch):
        monkeypatch.setenv("KRONALPHA_BACKEND", "numpy")
        assert get_kernels().name == "numpy"
        monkeypatch.setenv("KRONALPHA_BACKEND", "cuda")
        with pytest.raises(ValueError):
            get_kernels()


class TestBackendAgreement:
    def test_oracle_sweep_bitwise_equal(self):
        rng = random.Random(401)
        numba_k = get_kernels("numba")
        numpy_k = get_kernels("numpy")
        for n_elems in (1, 2, 3):
            for _ in range(5):
                nvec, targets, xs = _random_sweep_inputs(rng, n_elems)
                a = numba_k.oracle_sweep(nvec, targets, xs)
                b = numpy_k.oracle_sweep(nvec, targets, xs)
                assert np.array_equal(a, b)

    def test_cover_grid_max_bitwise_equal(self):
        numba_k = get_kernels("numba")
        numpy_k = get_kernels("numpy")
        cases = [
            (-1, 2, 3, 1, 1, 6),
            (-2, 3, 5, 1, 1, 6),
            (1, 2, 4, 2, 1, 5),
            (-2, 3, 7, 1, 3, 6),
            (3, 4, 6, 2, 0, 5),
        ]
        for args in cases:
            assert numba_k.cover_grid_max(*args) == numpy_k.cover_grid_max(*args)

    def test_frozen_grid_max(self):
        val, ia, ib = get_kernels("numpy").cover_grid_max(-2, 3, 7, 1, 3, 6)
        assert (ia, ib) == (19, 53)
        assert val == pytest.approx(0.1822916666666667, abs=1e-15)


class TestKernelSemantics:
    def test_oracle_sweep_matches_reference(self):
        def reference(nvec, targets, xs):
            out = []
            for t in targets:
                best = math.inf
                for x in xs:
                    worst = 0.0
                    for n, tj in zip(nvec, t):
                        q = n * x - tj
                        d = abs(q - round(q))
                        worst = max(worst, d)
                    best = min(best, worst)
                out.append(best)
            return out

        rng = random.Random(402)
        for name in VALID_BACKENDS:
            ker = get_kernels(name)
            nvec, targets, xs = _random_sweep_inputs(rng, 3)
            got = ker.oracle_sweep(nvec, targets, xs[:64])
            want = reference(nvec, targets, xs[:64])
            assert np.allclose(got, want, atol=1e-12)

    def test_grid_max_value_matches_exact_field(self):
        # the kernel reports F at the cell-center it suggests; with small
        # moduli its fixed (s, t) scan window covers the true minimizer
        depth = 5
        for entries in [(1, 2, 3), (-2, 3, 5), (1, 2, 4)]:
            ct = canonicalize(entries)
            lp = lattice_params(ct)
            inst = CoveringInstance(ct)
            for name in VALID_BACKENDS:
                val, ia, ib = get_kernels(name).cover_grid_max(
                    ct.n1, ct.n2, ct.n3, lp.m, lp.r, depth
                )
                denom = 1 << (depth + 1)
                center = inst.point_from_cell(
                    Fraction(2 * ia + 1, denom), Fraction(2 * ib + 1, denom)
                )
                assert val == pytest.approx(float(eval_F(inst, center)), abs=1e-12)

    def test_grid_max_never_undershoots_field(self):
        # with a larger modulus the window may clip the true minimizer, so
        # the kernel value can only sit at or above the exact field value
        ct = canonicalize((-3, 7, 19))
        lp = lattice_params(ct)
        inst = CoveringInstance(ct)
        val, ia, ib = get_kernels("numpy").cover_grid_max(
            ct.n1, ct.n2, ct.n3, lp.m, lp.r, 5
        )
        center = inst.point_from_cell(Fraction(2 * ia + 1, 64), Fraction(2 * ib + 1, 64))
        assert val >= float(eval_F(inst, center)) - 1e-12
