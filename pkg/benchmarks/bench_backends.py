"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_backends.py [--repeat 3]
"""

import argparse
import random
import time

from bmst import speedups
from bmst.core import Form, ObjectiveSpec, Scope, Tie, load_fixture, parse_instance
from bmst.generators import gen_random, parse_stf
from bmst.kernels import SteinerSolver
from bmst.solvers import solve_bruteforce

BN_BN_PESS = ObjectiveSpec(Form.BOTTLENECK, Form.BOTTLENECK, Scope.OWN, Tie.PESSIMISTIC)


def brute_force_case():
    inst = gen_random(11, 11, 22, 8)
    return "brute force, 22 leader edges", lambda: solve_bruteforce(inst)


def bottleneck_case():
    inst = gen_random(5, 8, 14, 6)
    return "brute force bn/bn pess, 14 leader edges", lambda: solve_bruteforce(inst, BN_BN_PESS)


def dreyfus_wagner_case():
    src = parse_stf(load_fixture("fig7.stf"))
    universe = random.Random(0).sample(range(src.n), 12)
    return "Dreyfus-Wagner, 12 terminals", lambda: SteinerSolver(src.graph, src.lengths, universe)


def fig1_case():
    inst = parse_instance(load_fixture("fig1.bmst"))
    return "fig1 x200", lambda: [solve_bruteforce(inst) for _ in range(200)]


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = speedups.available_backends()
    if "native" not in backends:
        print("compiled kernels not built; only the pure backend is timed")
    print(f"{'case':44} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for make in (brute_force_case, bottleneck_case, dreyfus_wagner_case, fig1_case):
        name, fn = make()
        times = {}
        for b in backends:
            with speedups.use_backend(b):
                times[b] = timed(fn, args.repeat)
        row = f"{name:44} " + " ".join(f"{times[b]:9.4f}s" for b in backends)
        if "native" in times:
            row += f"   {times['pure'] / times['native']:6.1f}x"
        print(row)


if __name__ == "__main__":
    main()
