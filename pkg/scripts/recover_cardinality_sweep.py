"""Sweep the cardinality-recovery pipeline over small subsets of naturals.

For every W in the chosen universe with |W| <= max-size, runs
compress -> tower oracle -> recover_cardinality and reports mismatches.
"""

import argparse
import itertools
import time

from fpw.harness import compress_stream, recover_cardinality, tower_oracle


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--universe", type=int, default=10, help="subsets of 0..universe-1")
    parser.add_argument("--max-size", type=int, default=3)
    parser.add_argument("--k-max", type=int, default=4)
    args = parser.parse_args()

    t0 = time.time()
    checked = 0
    bad = []
    for size in range(args.max_size + 1):
        for subset in itertools.combinations(range(args.universe), size):
            k = sum(1 for _ in compress_stream(subset))
            got = recover_cardinality(tower_oracle(k), args.k_max)
            checked += 1
            if got != len(subset):
                bad.append((subset, got))
    print(f"checked {checked} subsets in {time.time() - t0:.1f}s")
    if bad:
        for subset, got in bad:
            print(f"MISMATCH: W={subset} recovered {got}")
    else:
        print("all cardinalities recovered correctly")


if __name__ == "__main__":
    main()
