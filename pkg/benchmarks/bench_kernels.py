"""Compare the numba and pure-numpy kernel backends.

Usage::

    python benchmarks/bench_kernels.py [--size 200000] [--repeat 5] [--no-end-to-end]

Kernel timings are the best of ``--repeat`` runs after one warm-up call (so
numba compilation is excluded). The end-to-end part runs the default table in
fresh interpreters with ``MORSENT_NUMBA=1`` and ``MORSENT_NUMBA=0``.
"""

import argparse
import math
import os
import subprocess
import sys
import timeit

import numpy as np

from morsent import _kernels
from morsent.momentum import _series_terms
from morsent.morse import MorseParams, eigenstate

END_TO_END = (
    "import time; from morsent.entropy import TABLE1_CELLS, scan_table; "
    "from morsent.morse import MorseParams; t = time.perf_counter(); "
    "scan_table(MorseParams(1.0), TABLE1_CELLS.keys(), TABLE1_CELLS, threads=1); "
    "print(time.perf_counter() - t)"
)


def kernel_cases(size):
    params = MorseParams(6.0)
    state = eigenstate(params, 3)
    log_2lam = math.log(2.0 * params.lam)
    log_abs_c, sign_c = _series_terms(state)
    x = np.linspace(-3.0, 12.0, size)
    q = np.linspace(-40.0, 40.0, size)
    z = 0.5 + 1j * q
    t = np.abs(np.sin(x)) + 1e-320
    xi = np.linspace(0.0, 30.0, size)
    return {
        "laguerre": lambda k: k(state.n, state.s, xi),
        "lgamma_complex": lambda k: k(z),
        "psi_envelope": lambda k: k(x, log_2lam, params.alpha, state.s, state.n, state.log_norm),
        "phi_series": lambda k: k(q, log_2lam, state.s, log_abs_c, sign_c, state.log_norm),
        "neg_xlogx": lambda k: k(t),
    }


def bench_kernels(size, repeat):
    rows = []
    for name, call in kernel_cases(size).items():
        best = {}
        outs = {}
        for backend in ("numpy", "numba"):
            fn = _kernels.BACKENDS[backend][name]
            outs[backend] = call(fn)
            best[backend] = min(timeit.repeat(lambda: call(fn), number=1, repeat=repeat))
        diff = np.max(np.abs(outs["numba"] - outs["numpy"]))
        scale = max(np.max(np.abs(outs["numpy"])), 1e-300)
        rows.append((name, best["numpy"], best["numba"], diff / scale))
    return rows


def bench_end_to_end():
    out = {}
    for flag in ("1", "0"):
        env = dict(os.environ, MORSENT_NUMBA=flag)
        # first run warms the numba cache
        for _ in range(2):
            proc = subprocess.run([sys.executable, "-c", END_TO_END], env=env,
                                  capture_output=True, text=True, check=True)
        out[flag] = float(proc.stdout.strip())
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--no-end-to-end", action="store_true")
    args = ap.parse_args(argv)

    print(f"kernels on {args.size} points, best of {args.repeat}")
    print(f"{'kernel':<16}{'numpy ms':>10}{'numba ms':>10}{'speedup':>9}{'max rel diff':>14}")
    for name, t_np, t_nb, rel in bench_kernels(args.size, args.repeat):
        print(f"{name:<16}{1e3 * t_np:>10.2f}{1e3 * t_nb:>10.2f}{t_np / t_nb:>8.1f}x{rel:>14.1e}")

    if not args.no_end_to_end:
        e2e = bench_end_to_end()
        print("\n16-cell table, one thread")
        print(f"  numba  {e2e['1']:.3f} s")
        print(f"  numpy  {e2e['0']:.3f} s  ({e2e['0'] / e2e['1']:.2f}x)")


if __name__ == "__main__":
    main()
