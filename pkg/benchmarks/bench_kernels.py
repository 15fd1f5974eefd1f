"""Benchmark the compiled kernel against the numpy fallback.

Times the full correlation-map synthesis (a handful of columns) and the raw
row-block kernel on both backends, then prints a small table.  Run after an
editable install:

    python benchmarks/bench_kernels.py [--spectral-points 1024] [--columns 5]
"""

import argparse
import time

import numpy as np

from t2x import build_grid, default_config, resolve
from t2x import core
from t2x.correlate import _column_fast


def time_columns(grid, backend, columns):
    impl = core.available_backends()[backend]
    saved = core._impl, core._name
    core._impl, core._name = impl, backend
    try:
        qs = np.linspace(grid.q_center - 0.5 * grid.q_halfwidth,
                         grid.q_center + 0.5 * grid.q_halfwidth, columns)
        t0 = time.perf_counter()
        for q in qs:
            _column_fast(grid, float(q))
        return (time.perf_counter() - t0) / columns
    finally:
        core._impl, core._name = saved


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--spectral-points", type=int, default=1024)
    ap.add_argument("--columns", type=int, default=5)
    args = ap.parse_args()

    setup = resolve(default_config())
    kwargs = dict(setup.grid_kwargs)
    kwargs["spectral_points"] = args.spectral_points
    grid = build_grid(setup.disp, setup.pump, setup.filt, **kwargs)

    backends = core.available_backends()
    print(f"lattice: {grid.lattice_points} steps per axis, "
          f"{grid.time_points} time samples")
    print(f"available backends: {', '.join(sorted(backends))}")
    results = {}
    for name in sorted(backends):
        per_col = time_columns(grid, name, args.columns)
        results[name] = per_col
        print(f"  {name:>8s}: {per_col * 1e3:9.1f} ms per column")
    if len(results) == 2:
        ratio = results["python"] / results["compiled"]
        print(f"  speedup : {ratio:9.2f}x (compiled over python)")


if __name__ == "__main__":
    main()
