"""Time the compiled and pure-Python G3 kernels on the same enumeration.

    python3 benchmarks/bench_kernel.py [--atoms 10] [--repeat 3]
"""
import argparse
import random
import time

from aspu import _kernel_py
from aspu._bytecode import compile_theory
from aspu.g3 import VALUES
from aspu.syntax import And, Implies, Lit, Not, Or

try:
    from aspu import _kernel
except ImportError:
    _kernel = None


def random_formula(rng, atoms, depth):
    if depth == 0:
        return Lit(rng.choice(atoms))
    a = random_formula(rng, atoms, depth - 1)
    b = random_formula(rng, atoms, depth - 1)
    return rng.choice([And(a, b), Or(a, b), Implies(a, b), Not(a)])


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t)
    return min(times), result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--atoms", type=int, default=10)
    ap.add_argument("--formulas", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    atoms = [f"p{k}" for k in range(args.atoms)]
    theory = [random_formula(rng, atoms, 3) for _ in range(args.formulas)]
    index = {a: k for k, a in enumerate(atoms)}
    groups = [((k,), [(v,) for v in VALUES]) for k in range(len(atoms))]
    compiled = compile_theory(theory, None, index)

    print(f"{3 ** args.atoms} interpretations, {args.formulas} formulas")
    t_py, models_py = best_of(lambda: _kernel_py.find_models(compiled, groups), args.repeat)
    print(f"python  {t_py:9.4f} s  {len(models_py)} models")
    if _kernel is None:
        print("cython  not built")
        return
    t_cy, models_cy = best_of(lambda: _kernel.find_models(compiled, groups), args.repeat)
    assert models_cy == models_py, "kernels disagree"
    print(f"cython  {t_cy:9.4f} s  {len(models_cy)} models  ({t_py / t_cy:.1f}x)")


if __name__ == "__main__":
    main()
