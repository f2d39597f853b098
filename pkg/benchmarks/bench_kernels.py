"""Time the numba kernels against their numpy twins.

Usage: python3 benchmarks/bench_kernels.py [--n 20000] [--repeat 5]

Both flavours are importable side by side regardless of
PIEZOINV_DISABLE_NUMBA, so one process measures both. The first numba call
is excluded (compilation or cache load).
"""

import argparse
import timeit

import numpy as np

from piezoinv import _accel, kernels
from piezoinv.decomposition import decompose_batch
from piezoinv.intermediates import group_batch
from piezoinv.invariants import PROGRAM, _stack_group


def _inputs(n, seed=0):
    rng = np.random.default_rng(seed)
    P = rng.standard_normal((n, 3, 3, 3))
    P = 0.5 * (P + P.transpose(0, 1, 3, 2))
    g = np.linalg.qr(rng.standard_normal((n, 3, 3)))[0]
    A, u, D, v = decompose_batch(P)
    mats, vecs = _stack_group(group_batch(A, u, v, D))
    return {
        "rotate3": ((g, P),),
        "group_batch": ((A, u, v, D),),
        "invariants_batch": ((A, mats, vecs, *PROGRAM),),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=20000, help="batch size")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not installed")
    print(f"batch {args.n}, best of {args.repeat}")
    print(f"{'kernel':<18}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}")
    for name, (call_args,) in _inputs(args.n).items():
        f_np = getattr(kernels, f"{name}_numpy")
        f_nb = getattr(kernels, f"{name}_numba")
        f_nb(*call_args)  # warm up
        t_np = min(timeit.repeat(lambda: f_np(*call_args), number=1, repeat=args.repeat))
        t_nb = min(timeit.repeat(lambda: f_nb(*call_args), number=1, repeat=args.repeat))
        print(f"{name:<18}{t_np * 1e3:>12.2f}{t_nb * 1e3:>12.2f}{t_np / t_nb:>10.1f}x")


if __name__ == "__main__":
    main()
