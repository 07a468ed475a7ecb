"""Translate random diagrams across calculi and back; report deviations and blow-up."""

import argparse

import numpy as np

from zxzw.random_terms import TermShape, random_terms
from zxzw.semantics import interpret, max_deviation
from zxzw.translate import roundtrip_zx, to_zw, to_zx


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--max-generators", type=int, default=20)
    args = ap.parse_args()
    shape = TermShape(max_generators=args.max_generators)

    zx = random_terms(args.seed, args.count, "ZX", shape)
    zw = random_terms(args.seed, args.count, "ZW", shape)
    dev_xw = [max_deviation(interpret(d), interpret(to_zw(d))) for d in zx]
    dev_wx = [max_deviation(interpret(d), interpret(to_zx(d))) for d in zw]
    reps = [roundtrip_zx(d)[1] for d in zx]
    growth = [to_zw(d).size / max(d.size, 1) for d in zx]

    print(f"ZX -> ZW   max_dev={max(dev_xw):.2e}  median size ratio={np.median(growth):.2f}")
    print(f"ZW -> ZX   max_dev={max(dev_wx):.2e}")
    print(f"round trip max_dev={max(r.max_deviation for r in reps):.2e}")
    print(f"syntactic: {sum(r.syntactic for r in reps)}/{len(reps)}  after unit-lambda removal: {sum(r.syntactic_after_l3 for r in reps)}/{len(reps)}")


if __name__ == "__main__":
    main()
