"""JSON documents for diagrams.

A term is ``{"seq": [T, T]}``, ``{"par": [T, T]}`` or ``{"gen": name, ...}``.
Phases are ``{"pi_rational": [p, q]}`` or ``{"radians": x}``.
"""

from __future__ import annotations

import json

from .diagram import (
    ALL_KINDS,
    Gen,
    Par,
    Seq,
    Term,
    black_pi,
    black_w,
    cap,
    crossing,
    cup,
    empty,
    hadamard,
    identity,
    lambda_box,
    phase_gate,
    rgate,
    swap,
    triangle,
    wspider,
    zspider,
)
from .phase import DomainError, Phase, Var


class ParseError(ValueError):
    """Malformed document; ``where`` is a character offset or a JSON path."""

    def __init__(self, msg: str, where=None):
        super().__init__(f"{msg} at {where}" if where is not None else msg)
        self.where = where


class UnknownGeneratorError(ParseError):
    pass


def _phase_json(p) -> dict:
    if isinstance(p, Var):
        raise ValueError(f"cannot serialize metavariable {p!r}")
    return p.to_json()


def term_to_json(d: Term) -> dict:
    if isinstance(d, Seq):
        return {"seq": [term_to_json(d.upper), term_to_json(d.lower)]}
    if isinstance(d, Par):
        return {"par": [term_to_json(d.left), term_to_json(d.right)]}
    g = d.gen
    out: dict = {"gen": g.kind}
    if g.kind in ("zspider", "wspider"):
        out["n"], out["m"] = g.n, g.m
    if g.kind == "zspider" and not g.phase.is_zero():
        out["phase"] = _phase_json(g.phase)
    elif g.kind == "phase":
        out["phase"] = _phase_json(g.phase)
    elif g.kind == "lambda":
        if isinstance(g.lam, Var):
            raise ValueError(f"cannot serialize metavariable {g.lam!r}")
        out["lambda"] = g.lam
    elif g.kind == "rgate":
        if isinstance(g.r, Var):
            raise ValueError(f"cannot serialize metavariable {g.r!r}")
        out["re"], out["im"] = g.r.real, g.r.imag
    return out


def serialize(d: Term, indent: int | None = None) -> str:
    return json.dumps(term_to_json(d), indent=indent, sort_keys=True)


def _nat(doc: dict, key: str, path: str) -> int:
    v = doc.get(key)
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise ParseError(f"field {key!r} must be a natural number", path)
    return v


def _number(doc: dict, key: str, path: str, default=None) -> float:
    if key not in doc and default is not None:
        return default
    v = doc.get(key)
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"field {key!r} must be a number", path)
    return v


def _phase(doc: dict, path: str, required: bool) -> Phase:
    if "phase" not in doc:
        if required:
            raise ParseError("missing field 'phase'", path)
        return Phase.zero()
    try:
        return Phase.from_json(doc["phase"])
    except DomainError:
        raise
    except (ValueError, TypeError) as exc:
        raise ParseError(str(exc), path + ".phase") from exc


_NULLARY = {
    "h": hadamard,
    "triangle": triangle,
    "id": identity,
    "swap": swap,
    "cap": cap,
    "cup": cup,
    "empty": empty,
    "cross": crossing,
    "bpi": black_pi,
    "bw": black_w,
}


def term_from_json(doc, path: str = "$") -> Term:
    if not isinstance(doc, dict):
        raise ParseError("a term must be an object", path)
    keys = set(doc)
    for comb, ctor in (("seq", Seq), ("par", Par)):
        if comb in keys:
            if keys != {comb}:
                raise ParseError(f"'{comb}' takes no other fields", path)
            parts = doc[comb]
            if not isinstance(parts, list) or len(parts) != 2:
                raise ParseError(f"'{comb}' needs a list of two terms", path)
            a = term_from_json(parts[0], f"{path}.{comb}[0]")
            b = term_from_json(parts[1], f"{path}.{comb}[1]")
            try:
                return ctor(a, b)
            except ValueError as exc:
                raise ParseError(str(exc), path) from exc
    if "gen" not in keys:
        raise ParseError("expected 'seq', 'par' or 'gen'", path)
    kind = doc["gen"]
    if not isinstance(kind, str) or kind not in ALL_KINDS:
        raise UnknownGeneratorError(f"unknown generator kind {kind!r}", path)
    if kind in _NULLARY:
        return _NULLARY[kind]()
    if kind == "zspider":
        return zspider(_nat(doc, "n", path), _nat(doc, "m", path), _phase(doc, path, required=False))
    if kind == "wspider":
        return wspider(_nat(doc, "n", path), _nat(doc, "m", path))
    if kind == "phase":
        return phase_gate(_phase(doc, path, required=True))
    if kind == "lambda":
        return lambda_box(_number(doc, "lambda", path))
    if kind == "rgate":
        return rgate(complex(_number(doc, "re", path), _number(doc, "im", path, default=0.0)))
    raise UnknownGeneratorError(f"unknown generator kind {kind!r}", path)  # pragma: no cover


def deserialize(text: str) -> Term:
    """Parse a diagram document; errors carry a character offset or JSON path."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})", exc.pos) from exc
    return term_from_json(doc)


def load(path: str) -> Term:
    with open(path, encoding="utf-8") as fh:
        return deserialize(fh.read())


__all__ = ["serialize", "deserialize", "term_to_json", "term_from_json", "load", "ParseError", "UnknownGeneratorError"]
