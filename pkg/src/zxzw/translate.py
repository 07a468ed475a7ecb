"""Translations between the two calculi, generator by generator.

Each table maps a generator kind to a builder of its image. Tables are checked
against the matrix semantics once, before first use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .diagram import (
    STRUCTURAL_KINDS,
    ZW,
    ZX,
    Gen,
    Generator,
    Par,
    Seq,
    Term,
    black_pi,
    black_w,
    compose,
    crossing,
    hadamard,
    lambda_box,
    phase_gate,
    rgate,
    triangle,
    wspider,
    xspider,
    zspider,
)
from .gadgets import zw_hadamard, zw_triangle, zx_black_w, zx_crossing
from .phase import PI, Phase
from .rules import DEFAULT_GRID, check_rule_soundness, catalog, polar_pair

Table = Mapping[str, Callable[[Generator], Term]]


class TableError(AssertionError):
    pass


def polar(r: complex) -> tuple[float, Phase]:
    """``(lam, alpha)`` with ``r = lam e^{i alpha}``; ``r = 0`` gives ``(0, 0)``."""
    return polar_pair(complex(r))


def _self(g: Generator) -> Term:
    return Gen(g)


def _zspider_to_zw(g: Generator) -> Term:
    if g.phase.is_zero():
        return wspider(g.n, g.m)
    return compose(wspider(g.n, 1), rgate(g.phase.exp()), wspider(1, g.m))


def _rgate_to_zx(g: Generator) -> Term:
    lam, alpha = polar(g.r)
    return lambda_box(lam) >> phase_gate(alpha)


XW_TABLE: dict[str, Callable[[Generator], Term]] = {
    "zspider": _zspider_to_zw,
    "phase": lambda g: rgate(g.phase.exp()),
    "lambda": lambda g: rgate(g.lam),
    "h": lambda g: zw_hadamard(),
    "triangle": lambda g: zw_triangle(),
    **{k: _self for k in STRUCTURAL_KINDS},
}

WX_TABLE: dict[str, Callable[[Generator], Term]] = {
    "wspider": lambda g: zspider(g.n, g.m),
    "rgate": _rgate_to_zx,
    "bpi": lambda g: xspider(1, 1, PI),
    "cross": lambda g: zx_crossing(),
    "bw": lambda g: zx_black_w(),
    **{k: _self for k in STRUCTURAL_KINDS},
}


# samples used to validate the tables: every kind, several arities and params


def _samples(calculus: str) -> list[Generator]:
    from .diagram import cap, cup, empty, identity, swap

    structural = [t.gen for t in (identity(), swap(), cap(), cup(), empty())]
    spiders = [(n, m) for n in range(3) for m in range(3)]
    if calculus == ZX:
        out = [zspider(n, m, a).gen for n, m in spiders for a in (Phase.zero(), PI, Phase.pi(1, 4), Phase.real(2.1))]
        out += [phase_gate(a).gen for a in DEFAULT_GRID.angles]
        out += [lambda_box(x).gen for x in DEFAULT_GRID.scalars]
        out += [hadamard().gen, triangle().gen]
    else:
        out = [wspider(n, m).gen for n, m in spiders]
        out += [rgate(r).gen for r in DEFAULT_GRID.complexes]
        out += [crossing().gen, black_pi().gen, black_w().gen]
    return out + structural


def validate_table(table: Table, calculus: str, tol: float = 1e-12) -> list[dict]:
    """Entries whose image disagrees with the source generator, as records."""
    from .semantics import generator_matrix, interpret

    bad = []
    for g in _samples(calculus):
        build = table.get(g.kind)
        if build is None:
            bad.append({"kind": g.kind, "generator": repr(g), "error": "missing entry"})
            continue
        img = build(g)
        if img.arity != (g.n, g.m):
            bad.append({"kind": g.kind, "generator": repr(g), "error": f"arity {img.arity}"})
            continue
        a, b = interpret(img), generator_matrix(g)
        dev = float(np.max(np.abs(a - b), initial=0.0))
        if dev > tol:
            bad.append({"kind": g.kind, "generator": repr(g), "max_deviation": dev})
    return bad


_validated: set[str] = set()


def _ensure_valid(calculus: str) -> None:
    if calculus in _validated:
        return
    table = XW_TABLE if calculus == ZX else WX_TABLE
    bad = validate_table(table, calculus)
    if bad:
        raise TableError(f"translation table for {calculus} is wrong: {bad}")
    _validated.add(calculus)


def translate(d: Term, table: Table) -> Term:
    """Replace every generator by its image, keeping the composition structure."""
    if isinstance(d, Gen):
        return table[d.gen.kind](d.gen)
    if isinstance(d, Seq):
        return Seq(translate(d.upper, table), translate(d.lower, table))
    if isinstance(d, Par):
        return Par(translate(d.left, table), translate(d.right, table))
    raise TypeError(f"not a diagram: {d!r}")


def _require(d: Term, calculus: str) -> None:
    if d.calculus not in (None, calculus):
        raise ValueError(f"expected a {calculus} diagram, got {d.calculus}")


def to_zw(d: Term) -> Term:
    _require(d, ZX)
    _ensure_valid(ZX)
    return translate(d, XW_TABLE)


def to_zx(d: Term, table: Table | None = None) -> Term:
    _require(d, ZW)
    if table is None:
        _ensure_valid(ZW)
        table = WX_TABLE
    return translate(d, table)


# round trip


def strip_unit_lambdas(d: Term) -> Term:
    """Drop every lambda-1 box (rule L3) and every zero phase gate."""
    from .diagram import identity

    if isinstance(d, Gen):
        g = d.gen
        if (g.kind == "lambda" and g.lam == 1.0) or (g.kind == "phase" and g.phase.is_zero()):
            return identity()
        return d
    if isinstance(d, Seq):
        return Seq(strip_unit_lambdas(d.upper), strip_unit_lambdas(d.lower))
    if isinstance(d, Par):
        return Par(strip_unit_lambdas(d.left), strip_unit_lambdas(d.right))
    raise TypeError(f"not a diagram: {d!r}")


@dataclass
class RoundTripReport:
    max_deviation: float
    syntactic: bool
    syntactic_after_l3: bool

    def to_json(self) -> dict:
        return {
            "max_deviation": self.max_deviation,
            "syntactic": self.syntactic,
            "syntactic_after_l3": self.syntactic_after_l3,
        }


def roundtrip_zx(d: Term) -> tuple[Term, RoundTripReport]:
    from .rewrite import iso_check
    from .semantics import interpret, max_deviation

    back = to_zx(to_zw(d))
    dev = max_deviation(interpret(d), interpret(back))
    syn = iso_check(d, back)
    syn_l3 = syn or iso_check(d, strip_unit_lambdas(back))
    return back, RoundTripReport(dev, syn, syn_l3)


# rules under translation


@dataclass
class TranslatedRulesReport:
    tol: float
    rules: dict = field(default_factory=dict)  # name -> SoundnessReport
    suspect_entries: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rules.values())

    def failing_rules(self) -> list[str]:
        return [name for name, r in self.rules.items() if not r.passed]


def check_translated_zw_rules(tol: float = 1e-9, grid=None, table: Table | None = None) -> TranslatedRulesReport:
    """Translate both sides of every ZW rule to ZX and compare them on the grid.

    A custom ``table`` allows fault injection; its own validation failures are
    listed in ``suspect_entries``.
    """
    use = WX_TABLE if table is None else table
    report = TranslatedRulesReport(tol)
    if table is not None:
        report.suspect_entries = validate_table(table, ZW)
    for rule in catalog(ZW):
        report.rules[rule.name] = check_rule_soundness(rule, grid, tol, translate=lambda d: to_zx(d, use))
    return report


__all__ = [
    "polar",
    "to_zw",
    "to_zx",
    "translate",
    "XW_TABLE",
    "WX_TABLE",
    "validate_table",
    "roundtrip_zx",
    "strip_unit_lambdas",
    "check_translated_zw_rules",
]
