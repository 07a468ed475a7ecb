"""Command line entry point.

Exit status: 0 when every check passes, 1 on check failures, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .diagram import ZW, ZX
from .harness import HarnessConfig, all_passed, dumps
from .phase import DomainError
from .rules import Grid

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load(path: str):
    from .serialize import ParseError, deserialize

    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        return deserialize(text)
    except (ParseError, DomainError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _config(args) -> HarnessConfig:
    grid = Grid()
    if getattr(args, "grid_file", None):
        try:
            with open(args.grid_file, encoding="utf-8") as fh:
                grid = Grid.from_json(json.load(fh))
        except (OSError, ValueError) as exc:
            raise InputError(f"{args.grid_file}: {exc}") from exc
    if not args.tol > 0:
        raise InputError("--tol must be positive")
    return HarnessConfig.from_env(tolerance=args.tol, grid=grid, seed=args.seed, out=args.out)


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _summary(records: list[dict]) -> None:
    rows: dict = {}
    for r in records:
        key = (r["check"], r.get("rule") or r.get("step") or r.get("generator") or "")
        ok, dev = rows.get(key, (True, 0.0))
        d = r.get("max_deviation") or 0.0
        rows[key] = (ok and r["status"] == "pass", max(dev, d))
    width = max((len(f"{c} {n}") for c, n in rows), default=10)
    for (check, name), (ok, dev) in rows.items():
        label = f"{check} {name}".ljust(width)
        print(f"{label}  {'PASS' if ok else 'FAIL'}  max_dev={dev:.2e}", file=sys.stderr)


def _finish(args, records: list[dict]) -> int:
    _emit(args, dumps(records))
    if args.summary:
        _summary(records)
    return EXIT_OK if all_passed(records) else EXIT_FAIL


# subcommands


def cmd_interpret(args) -> int:
    from .semantics import interpret, matrix_to_json

    d = _load(args.file)
    _emit(args, json.dumps(matrix_to_json(interpret(d)), sort_keys=True) + "\n")
    return EXIT_OK


def cmd_check_rules(args) -> int:
    from .harness import check_rules, check_translated_rules

    cfg = _config(args)
    calcs = {"zx": [ZX], "zw": [ZW], "all": [ZX, ZW]}[args.calculus]
    records = []
    for c in calcs:
        records += check_rules(c, cfg)
    if args.translated:
        records += check_translated_rules(cfg)
    return _finish(args, records)


def cmd_verify_equiv(args) -> int:
    from .harness import verify_equiv

    cfg = _config(args)
    d1, d2 = _load(args.file1), _load(args.file2)
    try:
        rec = verify_equiv(d1, d2, cfg)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return _finish(args, [rec])


def cmd_pipeline(args) -> int:
    from .harness import pipeline

    cfg = _config(args)
    d1, d2 = _load(args.file1), _load(args.file2)
    try:
        records = pipeline(d1, d2, cfg)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return _finish(args, records)


def cmd_translate(args) -> int:
    from .serialize import serialize
    from .translate import to_zw, to_zx

    d = _load(args.file)
    want = args.to.upper()
    src = d.calculus
    if src == want:
        raise InputError(f"diagram is already {want}")
    out = to_zw(d) if want == ZW else to_zx(d)
    _emit(args, serialize(out) + "\n")
    return EXIT_OK


def cmd_decompose(args) -> int:
    from .rules import decompose_lambda
    from .serialize import serialize

    try:
        d = decompose_lambda(args.value)
    except DomainError as exc:
        raise InputError(str(exc)) from exc
    _emit(args, serialize(d) + "\n")
    return EXIT_OK


def cmd_replay(args) -> int:
    from .harness import record
    from .rewrite import Derivation, replay

    try:
        with open(args.script, encoding="utf-8") as fh:
            doc = json.load(fh)
        deriv = Derivation.from_json(doc)
    except (OSError, ValueError, DomainError) as exc:
        raise InputError(f"{args.script}: {exc}") from exc
    rep = replay(deriv)
    rec = record("replay", rep.success, rep.semantic_deviation, **{k: v for k, v in rep.to_json().items() if k != "semantic_deviation"})
    return _finish(args, [rec])


def cmd_roundtrip(args) -> int:
    from .harness import record
    from .translate import roundtrip_zx

    cfg = _config(args)
    d = _load(args.file)
    if d.calculus == ZW:
        raise InputError("roundtrip expects a ZX diagram")
    _, rep = roundtrip_zx(d)
    rec = record("roundtrip", rep.max_deviation <= cfg.tolerance, rep.max_deviation, **{k: v for k, v in rep.to_json().items() if k != "max_deviation"})
    return _finish(args, [rec])


def cmd_suite(args) -> int:
    from .harness import suite

    cfg = _config(args)
    return _finish(args, suite(cfg))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9, help="comparison tolerance (default 1e-9)")
    common.add_argument("--seed", type=int, default=0, help="random seed; ZXZW_SEED overrides it")
    common.add_argument("--grid-file", help="JSON file with 'angles' and 'scalars' lists")
    common.add_argument("--out", help="write the output here instead of stdout")
    common.add_argument("--summary", action="store_true", help="print a table to stderr")

    p = argparse.ArgumentParser(prog="zxzw", description="ZX/ZW diagrams: semantics, rules, translation, rewriting.")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("interpret", parents=[common], help="print the matrix of a diagram")
    s.add_argument("file")
    s.set_defaults(fn=cmd_interpret)

    s = sub.add_parser("check-rules", parents=[common], help="soundness sweep over a rule catalog")
    s.add_argument("calculus", nargs="?", default="all", choices=["zx", "zw", "all"])
    s.add_argument("--translated", action="store_true", help="also check ZW rules after translation to ZX")
    s.set_defaults(fn=cmd_check_rules)

    s = sub.add_parser("verify-equiv", parents=[common], help="compare the matrices of two diagrams")
    s.add_argument("file1")
    s.add_argument("file2")
    s.set_defaults(fn=cmd_verify_equiv)

    s = sub.add_parser("pipeline", parents=[common], help="translate, compare and round-trip two ZX diagrams")
    s.add_argument("file1")
    s.add_argument("file2")
    s.set_defaults(fn=cmd_pipeline)

    s = sub.add_parser("translate", parents=[common], help="translate a diagram to the other calculus")
    s.add_argument("file")
    s.add_argument("--to", required=True, choices=["zw", "zx"])
    s.set_defaults(fn=cmd_translate)

    s = sub.add_parser("decompose", parents=[common], help="lambda-box-free diagram for diag(1, lambda)")
    s.add_argument("value", type=float)
    s.set_defaults(fn=cmd_decompose)

    s = sub.add_parser("replay", parents=[common], help="check a derivation script")
    s.add_argument("script")
    s.set_defaults(fn=cmd_replay)

    s = sub.add_parser("roundtrip", parents=[common], help="translate a ZX diagram to ZW and back")
    s.add_argument("file")
    s.set_defaults(fn=cmd_roundtrip)

    s = sub.add_parser("suite", parents=[common], help="run every harness check")
    s.set_defaults(fn=cmd_suite)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
