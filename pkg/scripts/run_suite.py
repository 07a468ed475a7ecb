"""Run every harness check and print a one-line verdict per check."""

import argparse
import collections
import sys

from zxzw.harness import HarnessConfig, all_passed, dumps, suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tol", type=float, default=1e-9)
    ap.add_argument("--out", help="write the JSON-lines records here")
    args = ap.parse_args()

    cfg = HarnessConfig.from_env(tolerance=args.tol, seed=args.seed)
    records = suite(cfg)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps(records))

    by_check = collections.OrderedDict()
    for r in records:
        n, bad, worst = by_check.get(r["check"], (0, 0, 0.0))
        by_check[r["check"]] = (n + 1, bad + (r["status"] != "pass"), max(worst, r["max_deviation"] or 0.0))
    for check, (n, bad, worst) in by_check.items():
        print(f"{check:22s} {n:6d} records  {bad:4d} failing  max_dev={worst:.2e}")
    ok = all_passed(records)
    print("ALL PASS" if ok else "FAILURES PRESENT")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
