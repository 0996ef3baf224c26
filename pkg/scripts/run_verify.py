#!/usr/bin/env python3
"""Run the seeded identity/inequality battery and print a margin table.

Example:
    python scripts/run_verify.py --seed 1 --out report.csv
    python scripts/run_verify.py --suite pitt --seed 7
"""
import argparse

from nslct import SUITE_NAMES, run_suite
from nslct.io import write_report


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--suite", choices=("all",) + SUITE_NAMES, default="all")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--out", help="write the full record CSV here")
    ap.add_argument("--failures-only", action="store_true")
    args = ap.parse_args()

    records, floors = run_suite(args.suite, seed=args.seed)
    if args.out:
        write_report(args.out, records, floors)

    width = max(len(r.name) for r in records)
    shown = 0
    for r in records:
        if args.failures_only and r.passed:
            continue
        flag = "ok  " if r.passed else "FAIL"
        print(f"{flag} {r.suite:<10s} {r.name:<{width}s} "
              f"lhs={r.lhs:+.6e} rhs={r.rhs:+.6e} margin={r.margin:+.3e}")
        shown += 1
    if args.failures_only and shown == 0:
        print("no failures")

    print()
    print(f"{'suite':<12s} {'records':>7s} {'min margin / scale':>20s}")
    for suite in sorted(floors):
        count = sum(1 for r in records if r.suite == suite)
        print(f"{suite:<12s} {count:>7d} {floors[suite]:>20.3e}")
    return 0 if all(r.passed for r in records) else 1


if __name__ == "__main__":
    raise SystemExit(main())
