"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_core.py [--repeat N]

Both backends are imported directly, so no environment switch is needed.
"""
import argparse
import timeit

import numpy as np

from rankin_cohen import _fallback

try:
    from rankin_cohen import _speedups
except ImportError:
    _speedups = None


def cases():
    rng = np.random.default_rng(0)
    v = np.cos(np.pi * (np.arange(256) + 0.5) / 256)
    x_small = rng.uniform(-8, 8, 2048) + 1j * rng.uniform(-8, 8, 2048)
    return {
        "jacobi_table l=12, 256 nodes": lambda m: m.jacobi_table(12, 1.5, 2.0, v),
        "kummer_series 2048 points |x|<=11": lambda m: m.kummer_series(3.5 + 0j, 9.0 + 0j, x_small),
    }


def main(argv=None):
    p = argparse.ArgumentParser()
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    if _speedups is None:
        print("compiled extension not built; only the fallback is timed")
    print(f"{'case':40s} {'python [ms]':>12s} {'compiled [ms]':>14s} {'speedup':>8s}")
    for name, fn in cases().items():
        t_py = min(timeit.repeat(lambda: fn(_fallback), number=3, repeat=args.repeat)) / 3
        if _speedups is None:
            print(f"{name:40s} {1e3 * t_py:12.3f} {'-':>14s} {'-':>8s}")
            continue
        t_c = min(timeit.repeat(lambda: fn(_speedups), number=3, repeat=args.repeat)) / 3
        # the two paths must agree before their timings mean anything
        a, b = fn(_fallback), fn(_speedups)
        a, b = (a[0], b[0]) if isinstance(a, tuple) else (a, b)
        gap = float(np.max(np.abs(np.asarray(a) - np.asarray(b)) / np.maximum(np.abs(np.asarray(a)), 1e-300)))
        print(f"{name:40s} {1e3 * t_py:12.3f} {1e3 * t_c:14.3f} {t_py / t_c:7.1f}x   (max rel gap {gap:.1e})")


if __name__ == "__main__":
    main()
