"""
Compare the compiled and pure-Python kernels on the oracle's hot paths.

    python benchmarks/bench_kernels.py [--n 5] [--repeat 3]
"""

import argparse
import time

from eqpieri import kernels, oracle
from eqpieri.perm import all_permutations, longest_element, special_cycle


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        oracle._memo.clear()
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def workloads(n):
    w0 = longest_element(n)
    perms = list(all_permutations(n))
    cycle = special_cycle(1, 2, n)
    return {
        f"top class, n={n}": lambda cls: oracle._seed(n, cls, classical=False),
        f"all S_w, n={n}": lambda cls: [oracle._schubert_packed(w, cls) for w in perms],
        f"S_w0 * S_w0 expansion, n={n - 1}": lambda cls: oracle._expand_packed(
            longest_element(n - 1), longest_element(n - 1), cls, False),
        f"Pieri products, n={n}, 20 w": lambda cls: [
            oracle._expand_packed(w, cycle, cls, False) for w in perms[:: max(1, len(perms) // 20)]],
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=5)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    found = kernels.backends()
    if "compiled" not in found:
        print("compiled kernels unavailable; only the Python fallback is timed")
    print(f"{'workload':40s}" + "".join(f"{name:>12s}" for name in found) + "     speedup")
    for label, job in workloads(args.n).items():
        row = {name: best_of(args.repeat, lambda: job(cls)) for name, cls in found.items()}
        speedup = row["python"] / row["compiled"] if "compiled" in row else float("nan")
        print(f"{label:40s}" + "".join(f"{row[name]:11.4f}s" for name in found) + f"  {speedup:9.1f}x")


if __name__ == "__main__":
    main()
