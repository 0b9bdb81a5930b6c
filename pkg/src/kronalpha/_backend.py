"""Kernel backend selection.

The scouting kernels exist in two interchangeable builds: a jitted one
(numba) and a pure-numpy one.  ``get_kernels`` picks by explicit name, by
the KRONALPHA_BACKEND environment variable, or by availability (numba when
it imports, numpy otherwise).  Exact-arithmetic code never depends on which
backend answered; the benchmark script compares their speed.
"""

import os
from types import SimpleNamespace

VALID_BACKENDS = ("numba", "numpy")

_CACHE: dict = {}


def _numba_usable() -> bool:
    try:
        import numba  # noqa: F401
    except Exception:
        return False
    return True


def get_kernels(name=None):
    """Return a namespace with .name, .oracle_sweep, .cover_grid_max."""
    if name is None:
        env = os.environ.get("KRONALPHA_BACKEND", "").strip().lower()
        if env:
            name = env
        else:
            name = "numba" if _numba_usable() else "numpy"
    if name not in VALID_BACKENDS:
        raise ValueError(
            f"unknown kernel backend {name!r}, expected one of {VALID_BACKENDS}"
        )
    mod = _CACHE.get(name)
    if mod is None:
        if name == "numba":
            from . import _kernels_numba as impl
        else:
            from . import _kernels_numpy as impl
        mod = SimpleNamespace(
            name=name,
            oracle_sweep=impl.oracle_sweep,
            cover_grid_max=impl.cover_grid_max,
        )
        _CACHE[name] = mod
    return mod
