#!/usr/bin/env python3
"""Re-run every named reference example and print one line per result."""
import argparse
import sys

from interlab.catalog import EXAMPLE_NAMES, run_example


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("names", nargs="*", default=[], help="examples to run (default: all)")
    parser.add_argument("--details", action="store_true", help="dump the detail dicts")
    args = parser.parse_args()
    names = args.names or list(EXAMPLE_NAMES)
    ok = True
    for name in names:
        report = run_example(name)
        ok &= report.reproduced
        print(f"{name:32s} {'reproduced' if report.reproduced else 'FAILED'}")
        if args.details:
            for k, v in report.details.items():
                print(f"    {k}: {v}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
