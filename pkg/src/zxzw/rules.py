"""Rule schemas, parameter bindings, soundness sweeps and lambda-box elimination."""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .diagram import ZW, ZX, Gen, Par, Seq, Term, identity, phase_gate, tensor
from .phase import DomainError, Phase, Var, as_phase, check_lambda

# parameter domains
ANGLE = "angle"
SCALAR = "scalar"
COMPLEX = "complex"
DOMAINS = (ANGLE, SCALAR, COMPLEX)

Binding = Mapping[str, object]


class SideConditionError(ValueError):
    pass


@dataclass(frozen=True)
class RuleSchema:
    """A parameterized equation ``lhs = rhs``.

    ``lhs`` and ``rhs`` are builders taking a binding; passing ``Var`` values
    yields the pattern templates used by the rewrite engine. ``side_condition``
    maps a binding of the free params to the derived params it needs.
    """

    name: str
    calculus: str
    params: tuple[tuple[str, str], ...]
    lhs: Callable[[Mapping], Term]
    rhs: Callable[[Mapping], Term]
    figure: str
    side_condition: Callable[[Mapping], dict] | None = None
    derived: tuple[tuple[str, str], ...] = ()
    note: str = ""

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(s for s, _ in self.params)

    def template(self, side: str) -> Term | None:
        """Side with metavariables in place of params; None when it needs arithmetic on them."""
        build = self.lhs if side == "lhs" else self.rhs
        env = {s: Var(s) for s, _ in self.params + self.derived}
        try:
            return build(env)
        except (TypeError, AttributeError):
            return None

    def __repr__(self):
        return f"RuleSchema({self.name!r}, {self.calculus})"


# bindings


def coerce(domain: str, value):
    """Check ``value`` against ``domain`` and return its canonical form."""
    if domain == ANGLE:
        if isinstance(value, dict):
            return Phase.from_json(value)
        return as_phase(value)
    if domain == SCALAR:
        if isinstance(value, (bool, complex)):
            raise DomainError(f"scalar must be a real >= 0, got {value!r}")
        return check_lambda(value)
    if domain == COMPLEX:
        if isinstance(value, (list, tuple)) and len(value) == 2:
            value = complex(value[0], value[1])
        if isinstance(value, bool) or not isinstance(value, (int, float, complex)):
            raise DomainError(f"complex parameter expected, got {value!r}")
        value = complex(value)
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise DomainError(f"complex parameter must be finite, got {value!r}")
        return value
    raise ValueError(f"unknown domain {domain!r}")


def complete_binding(rule: RuleSchema, b: Binding) -> dict:
    missing = [s for s in rule.symbols if s not in b]
    if missing:
        raise DomainError(f"{rule.name}: missing binding for {', '.join(missing)}")
    extra = [s for s in b if s not in rule.symbols and s not in dict(rule.derived)]
    if extra:
        raise DomainError(f"{rule.name}: unknown parameter {', '.join(sorted(extra))}")
    out = {s: coerce(d, b[s]) for s, d in rule.params}
    if rule.side_condition is not None:
        try:
            out.update(rule.side_condition(out))
        except (ValueError, ArithmeticError) as exc:
            raise SideConditionError(f"{rule.name}: side condition failed: {exc}") from exc
    return out


def instantiate(rule: RuleSchema, b: Binding) -> tuple[Term, Term]:
    """Concrete ``(lhs, rhs)`` for a binding of the rule's free params."""
    env = complete_binding(rule, b)
    lhs, rhs = rule.lhs(env), rule.rhs(env)
    if lhs.arity != rhs.arity:  # pragma: no cover - catalog error
        raise AssertionError(f"{rule.name}: arity {lhs.arity} vs {rhs.arity}")
    return lhs, rhs


def binding_to_json(b: Binding) -> dict:
    out = {}
    for k in sorted(b):
        v = b[k]
        if isinstance(v, Phase):
            out[k] = v.to_json()
        elif isinstance(v, complex):
            out[k] = [v.real, v.imag]
        else:
            out[k] = v
    return out


# default grids

DEFAULT_ANGLES = (
    Phase.zero(),
    Phase.pi(1, 4),
    Phase.pi(1, 2),
    Phase.pi(1),
    Phase.pi(3, 2),
    Phase.real(0.3),
    Phase.real(2.1),
)
DEFAULT_SCALARS = (0.0, 0.5, 1.0, 2.0, 2.5)


@dataclass(frozen=True)
class Grid:
    angles: tuple = DEFAULT_ANGLES
    scalars: tuple = DEFAULT_SCALARS

    def __post_init__(self):
        if not self.angles or not self.scalars:
            raise ValueError("grids must be nonempty")

    @property
    def complexes(self) -> tuple[complex, ...]:
        out = []
        for lam in self.scalars:
            for a in self.angles:
                out.append(lam * a.exp())
        return tuple(out)

    def values(self, domain: str) -> tuple:
        if domain == ANGLE:
            return self.angles
        if domain == SCALAR:
            return self.scalars
        return self.complexes

    def bindings(self, rule: RuleSchema) -> list[dict]:
        """Full Cartesian product over the rule's free params."""
        axes = [self.values(d) for _, d in rule.params]
        return [dict(zip(rule.symbols, combo)) for combo in itertools.product(*axes)]

    @classmethod
    def from_json(cls, doc: dict) -> "Grid":
        angles = tuple(Phase.from_json(a) if isinstance(a, dict) else as_phase(float(a)) for a in doc.get("angles", []))
        scalars = tuple(check_lambda(x) for x in doc.get("scalars", []))
        return cls(angles or DEFAULT_ANGLES, scalars or DEFAULT_SCALARS)


DEFAULT_GRID = Grid()


# (AD) arithmetic and lambda elimination


def ad_compose(l1: float, beta, l2: float, alpha) -> tuple[float, Phase]:
    """Polar form of ``l1 e^{i beta} + l2 e^{i alpha}``; a zero sum gives ``(0, 0)``."""
    l1, l2 = check_lambda(l1), check_lambda(l2)
    z = l1 * as_phase(beta).exp() + l2 * as_phase(alpha).exp()
    return polar_pair(z)


def polar_pair(z: complex) -> tuple[float, Phase]:
    lam = abs(z)
    if lam == 0.0:
        return 0.0, Phase.zero()
    # keep exact multiples of pi/2 exact, so templates keep matching 0 and pi
    for k in range(4):
        if abs(z - lam * (1, 1j, -1, -1j)[k]) <= 1e-15 * lam:
            return lam, Phase.pi(k, 2)
    return lam, Phase.real(cmath.phase(z))


def _dec_int(n: int) -> Term:
    from .gadgets import plus

    if n == 0:
        # 1 + e^{i pi} = 0
        return plus(identity(), phase_gate(Phase.pi(1)))
    if n == 1:
        return identity()
    # Horner over the binary digits: doubling is composition with diag(1, 2),
    # a set bit adds one; the term stays O(log n) in size
    two = plus(identity(), identity())
    out = identity()
    for bit in bin(n)[3:]:
        out = out >> two
        if bit == "1":
            out = plus(out, identity())
    return out


def _dec_frac(f: float) -> Term:
    from .gadgets import plus

    # e^{i a} + e^{-i a} = 2 cos a = f
    a = math.acos(f / 2)
    return plus(phase_gate(Phase.real(a)), phase_gate(Phase.real(-a)))


def decompose_lambda(lam: float) -> Term:
    """A lambda-box-free, triangle-free 1 -> 1 term interpreting to ``diag(1, lam)``.

    ``lam = n + f`` with ``n`` its integer part: 0 and 1 are base cases, larger
    ``n`` is built by doubling, ``f`` is a sum of two conjugate phases.
    """
    lam = check_lambda(lam)
    n = math.floor(lam)
    f = lam - n
    if f == 0:
        return _dec_int(n)
    if n == 0:
        return _dec_frac(f)
    from .gadgets import plus

    return plus(_dec_int(n), _dec_frac(f))


# soundness


@dataclass
class SoundnessRecord:
    rule: str
    binding: dict
    max_deviation: float | None
    passed: bool
    error: str | None = None

    def to_json(self) -> dict:
        out = {
            "rule": self.rule,
            "binding": binding_to_json(self.binding),
            "max_deviation": self.max_deviation,
            "pass": self.passed,
        }
        if self.error:
            out["error"] = self.error
        return out


@dataclass
class SoundnessReport:
    rule: str
    records: list[SoundnessRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def max_deviation(self) -> float:
        devs = [r.max_deviation for r in self.records if r.max_deviation is not None]
        return max(devs, default=0.0)

    def failures(self) -> list[SoundnessRecord]:
        return [r for r in self.records if not r.passed]

    def to_json(self) -> list[dict]:
        return [r.to_json() for r in self.records]


def check_rule_soundness(rule: RuleSchema, grid=None, tol: float = 1e-9, translate=None) -> SoundnessReport:
    """Compare both sides of ``rule`` under every binding of ``grid``.

    ``grid`` is a ``Grid`` or an explicit list of bindings (default: the default
    grid). ``translate``, if given, is applied to both sides before
    interpreting. Instantiation errors are recorded per binding.
    """
    from .semantics import interpret, max_deviation

    if tol <= 0:
        raise ValueError("tol must be positive")
    if grid is None:
        grid = DEFAULT_GRID
    bindings = grid.bindings(rule) if isinstance(grid, Grid) else list(grid)
    if not rule.params and not bindings:
        bindings = [{}]
    report = SoundnessReport(rule.name)
    for b in bindings:
        try:
            lhs, rhs = instantiate(rule, b)
            if translate is not None:
                lhs, rhs = translate(lhs), translate(rhs)
            dev = max_deviation(interpret(lhs), interpret(rhs))
        except (ValueError, TypeError, ArithmeticError) as exc:
            report.records.append(SoundnessRecord(rule.name, dict(b), None, False, f"{type(exc).__name__}: {exc}"))
            continue
        report.records.append(SoundnessRecord(rule.name, dict(b), dev, dev <= tol))
    return report


# mutation testing

MUTATION_STEP = 0.1


def perturb_first_param(d: Term, delta: float = MUTATION_STEP) -> tuple[Term, bool]:
    """Shift the first parameter met in traversal order by ``delta``."""
    if isinstance(d, Gen):
        g = d.gen
        if g.kind in ("zspider", "phase"):
            return Gen(g.with_param(g.phase + Phase.real(delta))), True
        if g.kind == "lambda":
            return Gen(g.with_param(g.lam + delta)), True
        if g.kind == "rgate":
            return Gen(g.with_param(g.r + delta)), True
        return d, False
    if isinstance(d, Seq):
        up, hit = perturb_first_param(d.upper, delta)
        if hit:
            return Seq(up, d.lower), True
        low, hit = perturb_first_param(d.lower, delta)
        return Seq(d.upper, low), hit
    if isinstance(d, Par):
        left, hit = perturb_first_param(d.left, delta)
        if hit:
            return Par(left, d.right), True
        right, hit = perturb_first_param(d.right, delta)
        return Par(d.left, right), hit
    raise TypeError(f"not a diagram: {d!r}")


def mutate(rule: RuleSchema, delta: float = MUTATION_STEP) -> RuleSchema:
    """Same rule with the right-hand side nudged.

    The first phase, lambda or ring parameter of the rhs moves by ``delta``; a
    parameter-free rhs is multiplied by the scalar ``e^{i delta}`` instead.
    """

    def rhs(env):
        d = rule.rhs(env)
        d2, hit = perturb_first_param(d, delta)
        if hit:
            return d2
        from .gadgets import scalar, zw_scalar

        gadget = scalar(cmath.exp(1j * delta)) if rule.calculus == ZX else zw_scalar(cmath.exp(1j * delta))
        return tensor(d, gadget)

    return RuleSchema(
        name=rule.name + "~",
        calculus=rule.calculus,
        params=rule.params,
        lhs=rule.lhs,
        rhs=rhs,
        figure=rule.figure,
        side_condition=rule.side_condition,
        derived=rule.derived,
        note="mutated",
    )


# catalogs


def catalog(calculus: str) -> list[RuleSchema]:
    """The named rule list of a calculus, in figure order."""
    if calculus == ZX:
        from .catalog_zx import ZX_RULES

        return list(ZX_RULES)
    if calculus == ZW:
        from .catalog_zw import ZW_RULES

        return list(ZW_RULES)
    raise ValueError(f"unknown calculus {calculus!r}")


def get_rule(name: str, calculus: str | None = None) -> RuleSchema:
    for calc in (ZX, ZW) if calculus is None else (calculus,):
        for r in catalog(calc):
            if r.name == name:
                return r
    raise KeyError(f"no rule named {name!r}")


__all__ = [
    "ANGLE",
    "SCALAR",
    "COMPLEX",
    "RuleSchema",
    "SideConditionError",
    "Grid",
    "DEFAULT_GRID",
    "instantiate",
    "complete_binding",
    "binding_to_json",
    "ad_compose",
    "polar_pair",
    "decompose_lambda",
    "check_rule_soundness",
    "SoundnessReport",
    "mutate",
    "catalog",
    "get_rule",
]
