"""Size and accuracy of the lambda-box-free gadget for diag(1, lambda)."""

import argparse

import numpy as np

from zxzw.rules import decompose_lambda
from zxzw.semantics import interpret, max_deviation


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("values", nargs="*", type=float, default=[0, 0.5, 0.999, 1, 2, 2.5, 7.25, 10, 100, 1000, 1e6])
    args = ap.parse_args()
    print(f"{'lambda':>12s} {'generators':>10s} {'max_dev':>10s}")
    for lam in args.values:
        d = decompose_lambda(lam)
        dev = max_deviation(interpret(d), np.diag([1, lam]).astype(complex))
        print(f"{lam:12g} {d.size:10d} {dev:10.2e}")


if __name__ == "__main__":
    main()
