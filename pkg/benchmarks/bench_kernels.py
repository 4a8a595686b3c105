"""Time the compiled kernels against the pure-Python twins.

Every case is run on each available backend; results must agree before a
timing is reported.

    python3 benchmarks/bench_kernels.py --repeat 3
"""

from __future__ import annotations

import argparse
import sys
import timeit

from dtpt import kernels
from dtpt.hallfq.field import gf
from dtpt.hallfq.modules import FqModule, Partition, _npows
from dtpt.partitions import LegConfig


def _order_ideals(n, legs):
    mask = LegConfig.standard(legs).mask
    return lambda k: k.count_order_ideals(n, mask, n + 1)


def _subspaces(parts, q):
    lam = Partition.of(*parts)
    f = gf(q)
    npows = _npows(lam, q)
    args = (lam.size, q, list(f.add), list(f.mul), list(f.neg), list(f.inv), npows)
    return lambda k: k.subspace_type_counts(*args)


def _intertwiners(src, tgt, q):
    f = gf(q)
    a = FqModule.from_partition(Partition.of(*src), q).matrix
    b = FqModule.from_partition(Partition.of(*tgt), q).matrix
    m, n = len(b), len(a)
    eqs = []
    for i in range(m):
        for j in range(n):
            row = {}
            for k in range(n):
                if a[k][j]:
                    row[i * n + k] = f.add[row.get(i * n + k, 0) * q + a[k][j]]
            for k in range(m):
                if b[i][k]:
                    row[k * n + j] = f.add[row.get(k * n + j, 0) * q + f.neg[b[i][k]]]
            eqs.append(sorted((v, c) for v, c in row.items() if c))
    return lambda k: k.count_linear_solutions(m * n, q, list(f.add), list(f.mul), eqs)


CASES = {
    "order-ideals n=10 no legs": _order_ideals(10, 0),
    "order-ideals n=9 three legs": _order_ideals(9, 3),
    "subspace types (2,1,1,1) q=3": _subspaces((2, 1, 1, 1), 3),
    "subspace types (3,2,1) q=2": _subspaces((3, 2, 1), 2),
    "intertwiners (2,1,1)->(2,2) q=3": _intertwiners((2, 1, 1), (2, 2), 3),
}


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--case", action="append", choices=sorted(CASES), help="run only this case")
    args = p.parse_args(argv)

    names = sorted(kernels.BACKENDS)
    if len(names) == 1:
        print("compiled extension not built; timing the Python backend only")
    print(f"{'case':<34}" + "".join(f"{n:>12}" for n in names) + f"{'speedup':>10}")
    for case in args.case or CASES:
        fn = CASES[case]
        results = {n: fn(kernels.BACKENDS[n]) for n in names}
        ref = results[names[0]]
        if any(r != ref for r in results.values()):
            print(f"{case}: backends disagree", file=sys.stderr)
            return 1
        times = {n: min(timeit.repeat(lambda n=n: fn(kernels.BACKENDS[n]), number=1,
                                      repeat=args.repeat)) for n in names}
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{case:<34}" + "".join(f"{times[n]:>11.4f}s" for n in names) + f"{speed:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
