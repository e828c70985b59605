"""Timing comparison of the compiled kernels against the numpy reference.

Usage: python3 benchmarks/bench_kernels.py [--repeat 5] [--grid 100000]
"""

import argparse
import time

import numpy as np

from ordercalc._kernels import BACKEND, _ref

try:
    from ordercalc._kernels import _fast
except ImportError:
    _fast = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--grid", type=int, default=100_000)
    ap.add_argument("--coords", type=int, default=8)
    ap.add_argument("--terms", type=int, default=2_000)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    x = rng.uniform(-10, 10, args.coords)
    y = rng.uniform(-10, 10, args.coords)
    coeffs = (rng.normal(size=(args.terms, args.coords))
              + 1j * rng.normal(size=(args.terms, args.coords)))
    w = 0.5 * np.exp(2j * np.pi * rng.uniform(size=args.coords))

    print(f"backend selected at import: {BACKEND}")
    rows = [("square_mean_max",
             lambda impl: impl.square_mean_max(x, y, args.grid),
             f"{args.coords} coords, {args.grid} angles"),
            ("series_eval",
             lambda impl: impl.series_eval(coeffs, w),
             f"{args.terms} terms x {args.coords} coords")]

    for name, call, size in rows:
        t_ref = best_of(lambda: call(_ref), args.repeat)
        line = f"{name:16s} {size:28s} reference {t_ref * 1e3:8.3f} ms"
        if _fast is not None:
            got = np.asarray(call(_fast))
            ref = np.asarray(call(_ref))
            assert np.allclose(got, ref, rtol=1e-12, atol=1e-12)
            t_fast = best_of(lambda: call(_fast), args.repeat)
            line += f"   compiled {t_fast * 1e3:8.3f} ms   speedup {t_ref / t_fast:5.2f}x"
        else:
            line += "   compiled extension not built"
        print(line)


if __name__ == "__main__":
    main()
