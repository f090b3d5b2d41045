"""Compare the compiled and pure-Python kernels on Jaro-Winkler and DFA scanning.

    python3 benchmarks/bench_kernels.py [--pairs N] [--tags K]
"""

import argparse
import random
import timeit

from termweaver import kernels
from termweaver.extract import SYMBOLS, compile_pattern


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--pairs", type=int, default=50_000)
    ap.add_argument("--tags", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rng = random.Random(0)
    words = ["".join(rng.choice("abcdefghijklmnop") for _ in range(rng.randint(3, 14))) for _ in range(2 * args.pairs)]
    pairs = list(zip(words[::2], words[1::2]))
    pattern = compile_pattern()
    codes = bytes(SYMBOLS[t] for t in rng.choices(["NN", "JJ", "IN", "DT", "VB"], [5, 3, 1, 1, 1], k=args.tags))

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled extension not built; timing the Python fallback only")
    results = {}
    for name, mod in sorted(backends.items()):
        jw = min(timeit.repeat(lambda: [mod.jaro_winkler(a, b, 0.1, 4) for a, b in pairs],
                               number=1, repeat=args.repeat))
        scan = min(timeit.repeat(lambda: mod.dfa_scan(codes, pattern.table, pattern.accept, pattern.n_symbols),
                                 number=1, repeat=args.repeat))
        results[name] = (jw, scan)
        print(f"{name:7s} jaro_winkler {args.pairs} pairs: {jw:.3f}s   dfa_scan {args.tags} tags: {scan:.3f}s")
    if len(results) == 2:
        (pj, ps), (cj, cs) = results["python"], results["cython"]
        print(f"speedup  jaro_winkler x{pj / cj:.1f}   dfa_scan x{ps / cs:.1f}")


if __name__ == "__main__":
    main()
