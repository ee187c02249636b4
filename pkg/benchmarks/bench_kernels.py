"""Time the numba and numpy row reductions over GF(p), then one full resolution per backend.

    python3 benchmarks/bench_kernels.py [--sizes 64 128 256] [--repeat 3]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from burchres import _kernels

P = 32003

RESOLUTION_SNIPPET = """
import time
from burchres import Ring, Ideal, PresentedModule, resolve, _kernels
R = Ring(("x", "y", "z"))
I = Ideal(R, ["x^2*y", "y^2*z", "z^2*x"])
N = Ideal(R, ["x^2", "y^2", "z^2"])
resolve(I, PresentedModule.of_ideal(N), steps=3)  # warm-up (jit compile)
t = time.perf_counter()
resolve(I, PresentedModule.of_ideal(N), steps=7)
print(_kernels.backend(), time.perf_counter() - t)
"""


def best_of(fn, M, repeat):
    times = []
    for _ in range(repeat):
        A = M.copy()
        t = time.perf_counter()
        fn(A, P)
        times.append(time.perf_counter() - t)
    return min(times)


def bench_rref(sizes, repeat, density):
    rng = np.random.default_rng(0)
    print(f"{'rows x cols':>12} {'numpy (s)':>11} {'numba (s)':>11} {'speedup':>8}")
    for n in sizes:
        M = rng.integers(0, P, size=(n, 2 * n), dtype=np.int64)
        M[rng.random(M.shape) > density] = 0
        t_np = best_of(_kernels.rref_numpy, M, repeat)
        if _kernels.HAVE_NUMBA:
            _kernels.rref_numba(M[:4, :8].copy(), P)  # compile outside the timing
            assert np.array_equal(_kernels.rref_numba(M.copy(), P), _kernels.rref_numpy(M.copy(), P))
            t_nb = best_of(_kernels.rref_numba, M, repeat)
            print(f"{n:>5} x {2 * n:<5} {t_np:11.4f} {t_nb:11.4f} {t_np / t_nb:8.1f}")
        else:
            print(f"{n:>5} x {2 * n:<5} {t_np:11.4f} {'-':>11} {'-':>8}")


def bench_resolution():
    for flag in ("0", "1"):
        env = dict(os.environ, BURCHRES_NO_NUMBA=flag)
        out = subprocess.run([sys.executable, "-c", RESOLUTION_SNIPPET], env=env,
                             capture_output=True, text=True, check=True)
        name, secs = out.stdout.split()
        print(f"resolution (7 steps, three-cycle example) backend={name:<6} {float(secs):.3f} s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 128, 256, 512])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--density", type=float, default=0.1)
    ap.add_argument("--skip-resolution", action="store_true")
    args = ap.parse_args()
    bench_rref(args.sizes, args.repeat, args.density)
    if not args.skip_resolution:
        bench_resolution()
