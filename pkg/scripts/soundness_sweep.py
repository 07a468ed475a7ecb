"""Soundness and mutation sweep over both rule catalogs.

Prints each rule's worst deviation on the grid next to the deviation of its
mutated copy, so the gap between float noise and a real error is visible.
"""

import argparse
import json
import sys

from zxzw.rules import DEFAULT_GRID, Grid, catalog, check_rule_soundness, mutate


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid-file", help="JSON with 'angles' and 'scalars'")
    ap.add_argument("--tol", type=float, default=1e-9)
    args = ap.parse_args()
    grid = DEFAULT_GRID
    if args.grid_file:
        with open(args.grid_file, encoding="utf-8") as fh:
            grid = Grid.from_json(json.load(fh))

    failed = 0
    print(f"{'rule':8s} {'calc':4s} {'bindings':>8s} {'max_dev':>10s} {'mutant_dev':>11s}")
    for calc in ("ZX", "ZW"):
        for rule in catalog(calc):
            rep = check_rule_soundness(rule, grid, args.tol)
            mut = check_rule_soundness(mutate(rule), grid, args.tol)
            bad = (not rep.passed) or mut.passed
            failed += bad
            flag = "  <-- check" if bad else ""
            print(f"{rule.name:8s} {calc:4s} {len(rep.records):8d} {rep.max_deviation:10.2e} {mut.max_deviation:11.2e}{flag}")
    print(f"{failed} rules need attention")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
