"""Compare the pure-Python and compiled counting kernels.

Usage::

    python3 benchmarks/bench_kernel.py --genus 22 --repeat 3

Each kernel counts the whole tree (or a fixed-multiplicity subtree) up to
the given genus; the best wall time over the repeats is reported together
with the speedup.  The outputs of both kernels are checked for equality.
"""

import argparse
import sys
import time

from numsg import kernel
from numsg.core import NumericalSemigroup
from numsg.tree import multiplicity_subtree_root


def best_time(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--genus", type=int, default=20)
    ap.add_argument("--multiplicity", type=int, default=0, help="0 means the whole tree")
    ap.add_argument("--chain-only", action="store_true")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    if args.multiplicity:
        root = multiplicity_subtree_root(args.multiplicity)
    else:
        root = NumericalSemigroup.natural()
    call = (root.bits, root.conductor, root.multiplicity, root.genus, args.genus,
            args.chain_only, args.multiplicity)

    backends = kernel.available_backends()
    if "cython" not in backends:
        print("compiled kernel not built; only the Python kernel is available", file=sys.stderr)

    results = {}
    print(f"{'backend':<8} {'seconds':>10} {'nodes':>12} {'nodes/s':>12}")
    for name, mod in backends.items():
        secs, out = best_time(lambda: mod.count_subtree(*call), args.repeat)
        nodes = sum(out[0])
        results[name] = (secs, out)
        print(f"{name:<8} {secs:>10.4f} {nodes:>12} {nodes / secs:>12.0f}")

    if len(results) == 2:
        (tp, op), (tc, oc) = results["python"], results["cython"]
        if op != oc:
            print("kernels disagree", file=sys.stderr)
            return 1
        print(f"speedup: {tp / tc:.1f}x (outputs identical)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
