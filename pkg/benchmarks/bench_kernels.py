"""Compare the compiled and pure-Python kernels on family-sized inputs.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from nilaut import _pykernels, groupkit

try:
    from nilaut import _ckernels
except ImportError:
    _ckernels = None


def cases():
    G7 = groupkit.build_G2(7)
    Gp = groupkit.build_Gp(5, 3)
    C = groupkit.cyclic(25)

    def enum_args(G, h, periods):
        cands = [np.arange(G.size, dtype=np.int64)] * (2 * h)
        cands += [np.flatnonzero(G.orders == m).astype(np.int64) for m in periods[:-1]]
        return (G.table, G.inverse, G.identity, h, cands, G.orders == periods[-1])

    gens = [Gp.gen("a"), Gp.gen("b")]
    return [
        ("element_orders G2(7)", "element_orders", (G7.table, G7.identity)),
        ("closure G2(7)", "closure", (G7.table, [G7.gen("r"), G7.gen("a")], G7.identity)),
        ("enumerate (0;2,2,2,4) G2(7)", "enumerate_tuples", enum_args(G7, 0, (2, 2, 2, 4))),
        ("enumerate (1;5) Gp(5,3)", "enumerate_tuples", enum_args(Gp, 1, (5,))),
        ("extend_hom Gp(5,3) -> C25", "extend_hom", (Gp.table, C.table, gens, [1, 5], Gp.identity, C.identity)),
    ]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    print(f"{'case':32} " + " ".join(f"{name:>10}" for name, _ in backends) + ("   speedup" if _ckernels else ""))
    for label, fn, fargs in cases():
        times = []
        for _, mod in backends:
            f = getattr(mod, fn)
            times.append(min(timeit.repeat(lambda: f(*fargs), number=1, repeat=args.repeat)))
        row = f"{label:32} " + " ".join(f"{t * 1e3:9.1f}ms" for t in times)
        if len(times) == 2:
            row += f"  {times[0] / times[1]:8.1f}x"
        print(row)
    if _ckernels is None:
        print("compiled extension not built; only the Python fallback was timed")


if __name__ == "__main__":
    main()
