"""Compare the numba and numpy enumeration backends.

    python benchmarks/bench_enumeration.py --atoms 8 10 12 --repeat 5

Each row times one full pass over n**m interpretations for a fixed premise
program over m atoms.  The first numba call is reported separately since
it includes compilation (or loading from the on-disk cache).
"""

import argparse
import time

import numpy as np

from mvlogic import load_system
from mvlogic._accel import HAVE_NUMBA
from mvlogic._kernels import compile_premises, evaluate
from mvlogic.formula import parse_premise_expr


def chain(op, names):
    text = names[0]
    for name in names[1:]:
        text = f"({text} {op} {name})"
    return text


def build(system, m):
    atoms = [f"p{i}" for i in range(m)]
    half = max(1, m // 2)
    left = chain("and", [f"not {a}" if i % 3 == 0 else a for i, a in enumerate(atoms[:half])])
    right = chain("then", atoms[half:] or atoms[:1])
    premises = [
        parse_premise_expr(f"v(V({left}), f) = F", system),
        parse_premise_expr(f"any(v(V({right}), t) = T, v(I(p0), U) = T)", system),
    ]
    return compile_premises(premises, system, atoms)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--atoms", type=int, nargs="+", default=[6, 8, 10, 12])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    system = load_system("svl")
    if HAVE_NUMBA:
        start = time.perf_counter()
        evaluate(build(system, 2), "numba")
        print(f"numba first call: {time.perf_counter() - start:.3f}s")
    else:
        print("numba is not installed; timing numpy only")

    print(f"{'atoms':>5} {'interps':>9} {'instrs':>6} {'numpy s':>9} {'numba s':>9} {'speedup':>8}")
    for m in args.atoms:
        prog = build(system, m)
        t_np = best_of(lambda: evaluate(prog, "numpy"), args.repeat)
        if HAVE_NUMBA:
            assert np.array_equal(evaluate(prog, "numba"), evaluate(prog, "numpy"))
            t_nb = best_of(lambda: evaluate(prog, "numba"), args.repeat)
            cols = f"{t_nb:9.4f} {t_np / t_nb:7.1f}x"
        else:
            cols = f"{'-':>9} {'-':>8}"
        print(f"{m:5d} {prog.size:9d} {len(prog.code):6d} {t_np:9.4f} {cols}")


if __name__ == "__main__":
    main()
