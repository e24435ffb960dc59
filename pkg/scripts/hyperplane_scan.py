#!/usr/bin/env python3
"""Scan codimension-one subspaces of se(3) for bracket closure.

Every hyperplane is the kernel of a covector; it is a subalgebra exactly
when the 2-form lam([.,.]) vanishes on it.  The scan walks a deterministic
integer grid plus seeded random directions and prints the smallest closure
residual seen (a closed hyperplane would show up as a residual near zero).

Usage: python scripts/hyperplane_scan.py [--samples N] [--seed S]
"""

import argparse
import time

from se3sym.optimal import hyperplane_scan


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=100000)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    start = time.time()
    scan = hyperplane_scan(args.samples, args.seed)
    elapsed = time.time() - start
    print(f"grid covectors       {scan.grid_points}")
    print(f"random covectors     {scan.random_samples}")
    print(f"min closure residual {scan.min_residual:.6f}")
    print(f"closed hyperplane    {'FOUND' if scan.found else 'none'}")
    print(f"elapsed              {elapsed:.2f}s")
    if scan.found is not None:
        for generator in scan.found.generators:
            print(" ", generator)


if __name__ == "__main__":
    main()
