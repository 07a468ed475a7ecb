"""Seeded random diagrams for property sweeps."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .diagram import (
    ZW,
    ZX,
    Term,
    black_pi,
    black_w,
    cap,
    compose,
    crossing,
    cup,
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
from .phase import Phase

ZX_WEIGHTS = {
    "zspider": 4.0,
    "phase": 2.0,
    "h": 2.0,
    "lambda": 1.0,
    "triangle": 1.0,
    "swap": 1.0,
    "cap": 0.5,
    "cup": 0.5,
}
ZW_WEIGHTS = {
    "wspider": 4.0,
    "rgate": 2.0,
    "cross": 1.5,
    "bpi": 1.5,
    "bw": 1.5,
    "swap": 1.0,
    "cap": 0.5,
    "cup": 0.5,
}


@dataclass(frozen=True)
class TermShape:
    """Bounds and kind weights for random terms."""

    max_wires: int = 4
    max_generators: int = 20
    min_generators: int = 1
    weights: dict = field(default_factory=dict)

    def weights_for(self, calculus: str) -> dict:
        if self.weights:
            return dict(self.weights)
        return dict(ZX_WEIGHTS if calculus == ZX else ZW_WEIGHTS)


def _phase(rng: np.random.Generator) -> Phase:
    if rng.random() < 0.5:
        q = int(rng.choice([1, 2, 4]))
        return Phase.pi(int(rng.integers(0, 2 * q)), q)
    return Phase.real(float(rng.uniform(0, 2 * np.pi)))


def _arities(kind: str, rng, width: int, max_wires: int):
    """Possible (n, m) for ``kind`` given the current width."""
    if kind in ("zspider", "wspider"):
        opts = [(n, m) for n in range(0, 3) for m in range(0, 3) if n <= width and width - n + m <= max_wires]
        if not opts:
            return None
        return opts[int(rng.integers(len(opts)))]
    fixed = {
        "phase": (1, 1),
        "h": (1, 1),
        "lambda": (1, 1),
        "triangle": (1, 1),
        "rgate": (1, 1),
        "bpi": (1, 1),
        "swap": (2, 2),
        "cross": (2, 2),
        "cap": (0, 2),
        "cup": (2, 0),
        "bw": (1, 2),
    }[kind]
    n, m = fixed
    if n > width or width - n + m > max_wires:
        return None
    return fixed


def _make(kind: str, n: int, m: int, rng) -> Term:
    if kind == "zspider":
        return zspider(n, m, _phase(rng) if rng.random() < 0.6 else Phase.zero())
    if kind == "wspider":
        return wspider(n, m)
    if kind == "phase":
        return phase_gate(_phase(rng))
    if kind == "lambda":
        return lambda_box(float(rng.uniform(0, 3)))
    if kind == "rgate":
        re, im = rng.normal(size=2)
        return rgate(complex(re, im))
    return {
        "h": hadamard,
        "triangle": triangle,
        "swap": swap,
        "cross": crossing,
        "cap": cap,
        "cup": cup,
        "bpi": black_pi,
        "bw": black_w,
    }[kind]()


def random_term(rng: np.random.Generator, calculus: str = ZX, shape: TermShape | None = None) -> Term:
    """Grow a term slice by slice, one generator per slice padded with identities."""
    shape = shape or TermShape()
    weights = shape.weights_for(calculus)
    kinds = sorted(weights)
    p = np.array([weights[k] for k in kinds], dtype=float)
    p /= p.sum()
    width = int(rng.integers(0, shape.max_wires + 1))
    target = int(rng.integers(shape.min_generators, shape.max_generators + 1))
    slices: list[Term] = []
    placed = 0
    attempts = 0
    while placed < target and attempts < 50 * target:
        attempts += 1
        kind = kinds[int(rng.choice(len(kinds), p=p))]
        ar = _arities(kind, rng, width, shape.max_wires)
        if ar is None:
            continue
        n, m = ar
        gen = _make(kind, n, m, rng)
        offset = int(rng.integers(0, width - n + 1))
        layer = identity(offset) @ gen @ identity(width - n - offset)
        slices.append(layer)
        width = width - n + m
        placed += 1
    if not slices:
        return identity(width)
    return compose(*slices)


def random_layer(rng: np.random.Generator, width: int, calculus: str = ZX) -> Term:
    """A tensor of random 1 -> 1 generators on ``width`` wires, with the odd 2 -> 2 one."""
    if calculus == ZX:
        singles = ["id", "h", "phase", "zspider", "lambda", "triangle"]
        doubles = ["swap"]
    else:
        singles = ["id", "rgate", "bpi", "wspider"]
        doubles = ["swap", "cross"]
    parts = []
    k = 0
    while k < width:
        if width - k >= 2 and rng.random() < 0.15:
            parts.append(_make(doubles[int(rng.integers(len(doubles)))], 2, 2, rng))
            k += 2
            continue
        kind = singles[int(rng.integers(len(singles)))]
        parts.append(identity() if kind == "id" else _make(kind, 1, 1, rng))
        k += 1
    return _tensor(parts) if parts else identity(0)


def _tensor(parts):
    out = parts[0]
    for p in parts[1:]:
        out = out @ p
    return out


def random_terms(seed: int, count: int, calculus: str = ZX, shape: TermShape | None = None) -> list[Term]:
    rng = np.random.default_rng(seed)
    return [random_term(rng, calculus, shape) for _ in range(count)]


__all__ = ["TermShape", "random_term", "random_terms", "random_layer", "ZX_WEIGHTS", "ZW_WEIGHTS", "ZW"]
