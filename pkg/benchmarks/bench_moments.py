"""Compare the compiled and pure-numpy moment kernels.

Usage: python benchmarks/bench_moments.py [--points N] [--dim n] [--order P]
"""

import argparse
import time

import numpy as np

from geoinv import _accel
from geoinv.multiindex import enumerate_up_to


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, nargs="+", default=[1_000, 10_000, 100_000])
    ap.add_argument("--dim", type=int, default=3)
    ap.add_argument("--order", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    exps = np.array(enumerate_up_to(args.dim, args.order), dtype=np.int64)
    print(f"# seed={args.seed} dim={args.dim} order={args.order} moments={len(exps)}")
    if not _accel.HAVE_NUMBA:
        print("# numba unavailable or disabled; timing numpy only")
    else:
        # compile outside the timed region
        _accel.moment_sums_numba(rng.normal(size=(4, args.dim)), np.ones(4), exps)
    print(f"{'points':>8} {'compensated':>11} {'numpy_s':>10} {'numba_s':>10} {'speedup':>8} {'max_rel_diff':>12}")
    for npts in args.points:
        x = rng.normal(size=(npts, args.dim))
        w = rng.uniform(0.5, 1.5, size=npts)
        for comp in (False, True):
            t_np, ref = best_of(lambda: _accel.moment_sums_numpy(x, w, exps, comp), args.repeat)
            if _accel.HAVE_NUMBA:
                t_nb, got = best_of(lambda: _accel.moment_sums_numba(x, w, exps, comp), args.repeat)
                diff = float(np.max(np.abs(got - ref) / np.maximum(np.abs(ref), 1e-300)))
                print(f"{npts:>8} {str(comp):>11} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>8.1f} {diff:>12.1e}")
            else:
                print(f"{npts:>8} {str(comp):>11} {t_np:>10.4f} {'-':>10} {'-':>8} {'-':>12}")


if __name__ == "__main__":
    main()
