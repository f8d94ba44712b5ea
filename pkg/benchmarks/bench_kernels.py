"""Time the numba kernels against their numpy fallbacks.

    python benchmarks/bench_kernels.py [--primes 5 7 11] [--repeat 3]
"""

import argparse
import timeit

import numpy as np

from projline import _kernels
from projline.abstract_line import build_coordinate_model
from projline.moebius import Matrix2, induced_projectivity


def bench(fn, args, repeat):
    fn(*args)  # warm-up (JIT compilation for numba)
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=[5, 7, 11])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        print("numba is not installed; only the numpy timings are meaningful")

    print(f"{'kernel':<22}{'p':>4}{'numba s':>12}{'numpy s':>12}{'speedup':>10}")
    for p in args.primes:
        line = build_coordinate_model(p)
        # a genuine projectivity, so the functor and cross-ratio sweeps run to the end
        phi = induced_projectivity(Matrix2.of(line.ctx, 1, 1, 0, 1), line)
        pmap = np.asarray(phi.pmap, dtype=np.int64)
        cr = line.cross_ratio_table
        cases = [
            ("associativity", _kernels.associativity_violations_nb, _kernels.associativity_violations_np, (line.comp, 1)),
            ("functor", _kernels.functor_violation_nb, _kernels.functor_violation_np, (line.comp, line.comp, pmap, phi.relabel)),
            ("cross-ratio preserved", _kernels.cross_ratio_preserved_nb, _kernels.cross_ratio_preserved_np, (cr, cr, pmap)),
        ]
        for name, nb, np_fn, fargs in cases:
            t_nb = bench(nb, fargs, args.repeat)
            t_np = bench(np_fn, fargs, args.repeat)
            print(f"{name:<22}{p:>4}{t_nb:>12.6f}{t_np:>12.6f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
