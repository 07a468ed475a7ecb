"""Generators and compositional terms for the ZX and ZW calculi.

A diagram is a ``Term``: a generator, a sequential composition (upper diagram
first, its outputs feeding the lower one) or a parallel composition (left
beside right). ``d1 >> d2`` is sequential, ``d1 @ d2`` parallel.

>>> d = hadamard() >> hadamard()
>>> d.inputs, d.outputs
(1, 1)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Optional, Union

from .phase import ZERO, DomainError, Phase, Var, as_phase, check_lambda

ZX = "ZX"
ZW = "ZW"

ZX_KINDS = ("zspider", "phase", "h", "lambda", "triangle")
ZW_KINDS = ("wspider", "rgate", "cross", "bpi", "bw")
STRUCTURAL_KINDS = ("id", "swap", "cap", "cup", "empty")
ALL_KINDS = ZX_KINDS + ZW_KINDS + STRUCTURAL_KINDS

FIXED_ARITY = {
    "phase": (1, 1),
    "h": (1, 1),
    "lambda": (1, 1),
    "triangle": (1, 1),
    "rgate": (1, 1),
    "cross": (2, 2),
    "bpi": (1, 1),
    "bw": (1, 2),
    "id": (1, 1),
    "swap": (2, 2),
    "cap": (0, 2),
    "cup": (2, 0),
    "empty": (0, 0),
}

# generators whose ports may be permuted within a side without changing semantics
SPIDER_KINDS = ("zspider", "wspider")


class ArityError(ValueError):
    pass


class CalculusError(ValueError):
    pass


ParamValue = Union[Phase, float, complex, Var, None]


@dataclass(frozen=True)
class Generator:
    kind: str
    n: int
    m: int
    phase: Optional[Union[Phase, Var]] = None
    lam: Optional[Union[float, Var]] = None
    r: Optional[Union[complex, Var]] = None

    def __post_init__(self):
        if self.kind not in ALL_KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind in FIXED_ARITY and FIXED_ARITY[self.kind] != (self.n, self.m):
            raise ArityError(f"{self.kind} has arity {FIXED_ARITY[self.kind]}, got {(self.n, self.m)}")
        if self.n < 0 or self.m < 0:
            raise ArityError("arities must be non-negative")

    @property
    def calculus(self) -> Optional[str]:
        if self.kind in ZX_KINDS:
            return ZX
        if self.kind in ZW_KINDS:
            return ZW
        return None

    @property
    def is_structural(self) -> bool:
        return self.kind in STRUCTURAL_KINDS

    @property
    def param(self) -> ParamValue:
        if self.kind in ("zspider", "phase"):
            return self.phase
        if self.kind == "lambda":
            return self.lam
        if self.kind == "rgate":
            return self.r
        return None

    def with_param(self, value) -> "Generator":
        if self.kind in ("zspider", "phase"):
            return Generator(self.kind, self.n, self.m, phase=value)
        if self.kind == "lambda":
            return Generator(self.kind, self.n, self.m, lam=value)
        if self.kind == "rgate":
            return Generator(self.kind, self.n, self.m, r=value)
        raise ValueError(f"{self.kind} has no parameter")

    @property
    def is_symbolic(self) -> bool:
        return isinstance(self.param, Var)

    def __repr__(self):
        k = self.kind
        if k in ("zspider", "wspider"):
            base = f"{k}({self.n},{self.m}"
            if k == "zspider" and not (isinstance(self.phase, Phase) and self.phase == ZERO and self.phase.is_rational):
                base += f",{self.phase!r}"
            return base + ")"
        p = self.param
        return f"{k}({p!r})" if p is not None else k


class Term:
    """Base class of diagrams. Subclasses: ``Gen``, ``Seq``, ``Par``."""

    inputs: int
    outputs: int
    calculus: Optional[str]
    size: int

    def __rshift__(self, other: "Term") -> "Term":
        return seq(self, other)

    def __matmul__(self, other: "Term") -> "Term":
        return par(self, other)

    @property
    def arity(self) -> tuple[int, int]:
        return (self.inputs, self.outputs)

    def generators(self):
        """Generators in left-to-right, top-to-bottom traversal order."""
        stack = [self]
        while stack:
            t = stack.pop()
            if isinstance(t, Gen):
                yield t.gen
            else:
                stack.extend(reversed(t.children))


def _join_calculus(a: Optional[str], b: Optional[str]) -> Optional[str]:
    if a is None:
        return b
    if b is None or a == b:
        return a
    raise CalculusError(f"cannot mix {a} and {b} generators in one diagram")


@dataclass(frozen=True, repr=False)
class Gen(Term):
    gen: Generator
    inputs: int = field(init=False, compare=False)
    outputs: int = field(init=False, compare=False)
    calculus: Optional[str] = field(init=False, compare=False)
    size: int = field(init=False, compare=False)
    _hash: int = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "inputs", self.gen.n)
        object.__setattr__(self, "outputs", self.gen.m)
        object.__setattr__(self, "calculus", self.gen.calculus)
        object.__setattr__(self, "size", 1)
        object.__setattr__(self, "_hash", hash(("Gen", self.gen)))

    children = ()

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return repr(self.gen)


@dataclass(frozen=True, repr=False)
class Seq(Term):
    upper: Term
    lower: Term
    inputs: int = field(init=False, compare=False)
    outputs: int = field(init=False, compare=False)
    calculus: Optional[str] = field(init=False, compare=False)
    size: int = field(init=False, compare=False)
    _hash: int = field(init=False, compare=False)

    def __post_init__(self):
        if self.upper.outputs != self.lower.inputs:
            raise ArityError(
                f"cannot compose {self.upper.inputs}->{self.upper.outputs} "
                f"with {self.lower.inputs}->{self.lower.outputs}"
            )
        object.__setattr__(self, "inputs", self.upper.inputs)
        object.__setattr__(self, "outputs", self.lower.outputs)
        object.__setattr__(self, "calculus", _join_calculus(self.upper.calculus, self.lower.calculus))
        object.__setattr__(self, "size", self.upper.size + self.lower.size)
        object.__setattr__(self, "_hash", hash(("Seq", self.upper._hash, self.lower._hash)))

    @property
    def children(self):
        return (self.upper, self.lower)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"({self.upper!r} >> {self.lower!r})"


@dataclass(frozen=True, repr=False)
class Par(Term):
    left: Term
    right: Term
    inputs: int = field(init=False, compare=False)
    outputs: int = field(init=False, compare=False)
    calculus: Optional[str] = field(init=False, compare=False)
    size: int = field(init=False, compare=False)
    _hash: int = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "inputs", self.left.inputs + self.right.inputs)
        object.__setattr__(self, "outputs", self.left.outputs + self.right.outputs)
        object.__setattr__(self, "calculus", _join_calculus(self.left.calculus, self.right.calculus))
        object.__setattr__(self, "size", self.left.size + self.right.size)
        object.__setattr__(self, "_hash", hash(("Par", self.left._hash, self.right._hash)))

    @property
    def children(self):
        return (self.left, self.right)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"({self.left!r} @ {self.right!r})"


def seq(d1: Term, d2: Term, *more: Term) -> Term:
    """Sequential composition: ``d1`` on top, its outputs wired into ``d2``."""
    return reduce(Seq, more, Seq(d1, d2))


def par(d1: Term, d2: Term, *more: Term) -> Term:
    """Parallel composition, ``d1`` on the left."""
    return reduce(Par, more, Par(d1, d2))


def tensor(*terms: Term) -> Term:
    """Parallel composition of any number of terms, skipping empty diagrams."""
    kept = [t for t in terms if not (isinstance(t, Gen) and t.gen.kind == "empty")]
    if not kept:
        return empty()
    return reduce(Par, kept)


def compose(*terms: Term) -> Term:
    return reduce(Seq, terms)


# generator constructors


def _phase_arg(phase) -> Union[Phase, Var]:
    return phase if isinstance(phase, Var) else as_phase(phase)


def _lam_arg(lam):
    return lam if isinstance(lam, Var) else check_lambda(lam)


def _r_arg(r):
    if isinstance(r, Var):
        return r
    r = complex(r)
    if not (math.isfinite(r.real) and math.isfinite(r.imag)):
        raise DomainError(f"r must be finite, got {r!r}")
    return r


def zspider(n: int, m: int, phase=ZERO) -> Term:
    """Green spider; a non-zero phase is the conventional phased spider."""
    return Gen(Generator("zspider", n, m, phase=_phase_arg(phase)))


def phase_gate(phase) -> Term:
    return Gen(Generator("phase", 1, 1, phase=_phase_arg(phase)))


def hadamard() -> Term:
    return Gen(Generator("h", 1, 1))


def lambda_box(lam) -> Term:
    return Gen(Generator("lambda", 1, 1, lam=_lam_arg(lam)))


def triangle() -> Term:
    return Gen(Generator("triangle", 1, 1))


def identity(k: int = 1) -> Term:
    if k == 0:
        return empty()
    return reduce(Par, [Gen(Generator("id", 1, 1)) for _ in range(k)])


def swap() -> Term:
    return Gen(Generator("swap", 2, 2))


def cap() -> Term:
    return Gen(Generator("cap", 0, 2))


def cup() -> Term:
    return Gen(Generator("cup", 2, 0))


def empty() -> Term:
    return Gen(Generator("empty", 0, 0))


def wspider(n: int, m: int) -> Term:
    return Gen(Generator("wspider", n, m))


def rgate(r) -> Term:
    return Gen(Generator("rgate", 1, 1, r=_r_arg(r)))


def crossing() -> Term:
    return Gen(Generator("cross", 2, 2))


def black_pi() -> Term:
    return Gen(Generator("bpi", 1, 1))


def black_w() -> Term:
    return Gen(Generator("bw", 1, 2))


def xspider(n: int, m: int, phase=ZERO) -> Term:
    """Red spider, elaborated as a green spider with Hadamards on every leg."""
    body = zspider(n, m, phase)
    if n:
        body = tensor(*[hadamard()] * n) >> body
    if m:
        body = body >> tensor(*[hadamard()] * m)
    return body


def wire_permutation(perm: list[int]) -> Term:
    """Wiring sending input ``i`` to output ``perm[i]``, built from adjacent swaps."""
    k = len(perm)
    if sorted(perm) != list(range(k)):
        raise ValueError(f"not a permutation: {perm}")
    if k == 0:
        return empty()
    # current[j] = which input wire sits at position j
    current = list(range(k))
    target_pos = list(perm)
    layers = []
    # odd-even transposition sort on target positions
    for rnd in range(k):
        start = rnd % 2
        parts = []
        j = 0
        changed = False
        if start == 1:
            parts.append(identity(1))
            j = 1
        while j < k:
            if j + 1 < k and target_pos[current[j]] > target_pos[current[j + 1]]:
                parts.append(swap())
                current[j], current[j + 1] = current[j + 1], current[j]
                changed = True
                j += 2
            elif j + 1 < k:
                parts.append(identity(2))
                j += 2
            else:
                parts.append(identity(1))
                j += 1
        if changed:
            layers.append(tensor(*parts))
    if not layers:
        return identity(k)
    return compose(*layers)


def elaborate(d: Term) -> Term:
    """Rewrite phased spiders into a phase-free spider around a phase gate."""
    if isinstance(d, Gen):
        g = d.gen
        if g.kind == "zspider" and isinstance(g.phase, Phase) and not g.phase.is_zero():
            return compose(zspider(g.n, 1), phase_gate(g.phase), zspider(1, g.m))
        return d
    if isinstance(d, Seq):
        return Seq(elaborate(d.upper), elaborate(d.lower))
    return Par(elaborate(d.left), elaborate(d.right))


def transpose(d: Term) -> Term:
    """Turn a diagram upside down; its matrix becomes the transpose."""
    if isinstance(d, Seq):
        return Seq(transpose(d.lower), transpose(d.upper))
    if isinstance(d, Par):
        return Par(transpose(d.left), transpose(d.right))
    g = d.gen
    k = g.kind
    if k == "zspider":
        return zspider(g.m, g.n, g.phase)
    if k == "wspider":
        return wspider(g.m, g.n)
    if k == "cap":
        return cup()
    if k == "cup":
        return cap()
    if k == "triangle":
        return compose(xspider(1, 1, Phase.pi(1)), triangle(), xspider(1, 1, Phase.pi(1)))
    if k in ("bw", "cross"):
        # bend legs with caps and cups; the matrices of these are real
        return _bent(d)
    return d


def _bent(d: Term) -> Term:
    n, m = d.inputs, d.outputs
    # outputs of d^T (n wires) come from bending the inputs of d
    top = identity(m) @ tensor(*[cap()] * n) if n else identity(m)
    # wires after top: [m original..., (a0,b0), (a1,b1), ...]; send a_i into d input i
    order = [m + 2 * i for i in range(n)] + list(range(m)) + [m + 2 * i + 1 for i in range(n)]
    perm = [0] * (m + 2 * n)
    for new_pos, old in enumerate(order):
        perm[old] = new_pos
    body = top >> wire_permutation(perm) >> (d @ identity(m + n))
    # now wires: [d outputs (m), original m, b_i (n)]; cup d output j with original j
    order2 = []
    for j in range(m):
        order2 += [j, m + j]
    order2 += [2 * m + i for i in range(n)]
    perm2 = [0] * (2 * m + n)
    for new_pos, old in enumerate(order2):
        perm2[old] = new_pos
    bottom = wire_permutation(perm2) >> (tensor(*[cup()] * m) @ identity(n) if m else identity(n))
    return body >> bottom
