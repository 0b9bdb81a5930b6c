"""Shared fixtures.

The jitted kernels compile on first call (into numba's on-disk cache).  The
session fixture below pays that cost before any test runs, so the acceptance
tests' wall-clock assertions measure the algorithms rather than LLVM.
"""

import numpy as np
import pytest

from kronalpha._backend import VALID_BACKENDS, get_kernels


@pytest.fixture(scope="session", autouse=True)
def prewarm_kernels():
    nvec = np.array([1.0, 2.0, 3.0])
    targets = np.array([[0.25, 0.5, 0.0]])
    xs = np.linspace(0.0, 1.0, 16, endpoint=False)
    for name in VALID_BACKENDS:
        ker = get_kernels(name)
        ker.oracle_sweep(nvec, targets, xs)
        ker.cover_grid_max(-1, 2, 3, 1, 1, 4)
