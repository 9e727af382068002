"""Run the golden-value suite and print one line per check; exit status 1 if any check fails."""

import argparse
import sys

from resint.reproduce import run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--only", action="append")
    args = ap.parse_args()
    results = run_suite(only=args.only)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name}" + (f"  ({r.note})" if r.note else ""))
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
