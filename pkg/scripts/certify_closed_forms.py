#!/usr/bin/env python3
"""Run the full closed-form-vs-oracle certification grid and print a table."""

import argparse
import sys
import time

from seqdisc.oracle import GridSpec, certify


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tolerance", type=float, default=1e-6)
    parser.add_argument("--quantity", help="comma-separated subset, default all")
    args = parser.parse_args()
    quantities = args.quantity.split(",") if args.quantity else None
    start = time.perf_counter()
    rows = certify(quantities=quantities, spec=GridSpec(tolerance=args.tolerance))
    elapsed = time.perf_counter() - start
    failed = False
    for row in rows:
        status = "PASS" if row.passed else "FAIL"
        failed = failed or not row.passed
        print(
            f"{row.quantity:<18} worst gap {row.worst_gap:.3e} "
            f"at (s={row.worst_scenario[0]:g}, p1={row.worst_scenario[1]:g})  {status}"
        )
    print(f"certification finished in {elapsed:.1f}s")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
