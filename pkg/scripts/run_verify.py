#!/usr/bin/env python3
"""Run the full property-check harness and print one line per check."""

import argparse
import sys

from supneg.cli import run_verify


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--tol", type=float, default=1e-9)
    args = ap.parse_args()

    summary, checks = run_verify(args.samples, args.seed, args.tol)
    for check in checks:
        status = "PASS" if check.passed else "FAIL"
        print(
            f"[{status}] {check.name}: samples={check.samples} "
            f"max_violation={check.max_violation:.3e}"
        )
    return 0 if all(c.passed for c in checks) else 1


if __name__ == "__main__":
    sys.exit(main())
