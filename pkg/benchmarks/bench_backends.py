"""Compare the jitted and pure-numpy builds of the two scouting kernels.

Run:  python3 benchmarks/bench_backends.py

Both builds are exercised on the oracle target sweep (the oracle's hot path)
and the covering grid scout (the solver's incumbent seeding), after a warmup
call that pays numba's compile cost.  Outputs agree exactly by construction;
the script asserts that before reporting timings.
"""

import time

import numpy as np

from kronalpha._backend import get_kernels


def best_of(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def sweep_workload():
    # the shape oracle_alpha uses for a 3-element set at default config
    rng = np.random.default_rng(7)
    nvec = np.array([-2.0, 3.0, 7.0])
    targets = rng.random((128 * 128, 3))
    targets[:, 2] = 0.0
    xs = np.arange(2048, dtype=np.float64) / 2048.0
    return nvec, targets, xs


def main():
    numba_k = get_kernels("numba")
    numpy_k = get_kernels("numpy")

    nvec, targets, xs = sweep_workload()
    grid_args = (-2, 3, 7, 1, 3, 9)

    # warmup (numba compiles here on a cold cache) and agreement check
    a = numba_k.oracle_sweep(nvec, targets[:64], xs)
    b = numpy_k.oracle_sweep(nvec, targets[:64], xs)
    assert np.array_equal(a, b), "backends disagree on oracle_sweep"
    assert numba_k.cover_grid_max(*grid_args) == numpy_k.cover_grid_max(
        *grid_args
    ), "backends disagree on cover_grid_max"

    rows = [("kernel", "workload", "numba", "numpy", "speedup")]
    t_nb = best_of(lambda: numba_k.oracle_sweep(nvec, targets, xs))
    t_np = best_of(lambda: numpy_k.oracle_sweep(nvec, targets, xs))
    rows.append(
        (
            "oracle_sweep",
            f"{targets.shape[0]} targets x {xs.size} xs",
            f"{t_nb * 1e3:9.1f} ms",
            f"{t_np * 1e3:9.1f} ms",
            f"{t_np / t_nb:5.1f}x",
        )
    )
    t_nb = best_of(lambda: numba_k.cover_grid_max(*grid_args))
    t_np = best_of(lambda: numpy_k.cover_grid_max(*grid_args))
    rows.append(
        (
            "cover_grid_max",
            f"depth 9 ({(1 << 9) ** 2} cells)",
            f"{t_nb * 1e3:9.1f} ms",
            f"{t_np * 1e3:9.1f} ms",
            f"{t_np / t_nb:5.1f}x",
        )
    )

    widths = [max(len(row[i]) for row in rows) for i in range(5)]
    for row in rows:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)))


if __name__ == "__main__":
    main()
