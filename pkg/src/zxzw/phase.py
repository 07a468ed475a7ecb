"""Angles normalized to [0, 2pi), kept exact when they are rational multiples of pi."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

TWO_PI = 2 * math.pi
ANGLE_TOL = 1e-12


class DomainError(ValueError):
    """A parameter lies outside its declared domain (e.g. a negative lambda)."""


@dataclass(frozen=True, eq=False)
class Var:
    """A named metavariable standing for a parameter inside a rule template."""

    name: str

    def __eq__(self, other):
        return isinstance(other, Var) and other.name == self.name

    def __hash__(self):
        return hash(("Var", self.name))

    def __repr__(self):
        return f"?{self.name}"


class Phase:
    """An angle in [0, 2pi).

    Either ``RationalPi`` (stored as a Fraction ``p/q`` meaning ``(p/q)*pi``) or a
    ``RealAngle`` in radians. Two rational phases compare exactly; anything else
    compares modulo 2pi with tolerance 1e-12.
    """

    __slots__ = ("_frac", "_rad")

    def __init__(self, frac: Fraction | None = None, radians: float | None = None):
        if (frac is None) == (radians is None):
            raise ValueError("Phase needs exactly one of frac or radians")
        if frac is not None:
            frac = Fraction(frac) % 2
            object.__setattr__(self, "_frac", frac)
            object.__setattr__(self, "_rad", None)
        else:
            x = float(radians)
            if not math.isfinite(x):
                raise DomainError(f"phase must be finite, got {radians!r}")
            x = x % TWO_PI
            if x >= TWO_PI:
                x = 0.0
            object.__setattr__(self, "_frac", None)
            object.__setattr__(self, "_rad", x)

    def __setattr__(self, key, value):
        raise AttributeError("Phase is immutable")

    @classmethod
    def pi(cls, p: int, q: int = 1) -> "Phase":
        if q <= 0:
            raise DomainError("denominator must be positive")
        return cls(frac=Fraction(p, q))

    @classmethod
    def zero(cls) -> "Phase":
        return cls(frac=Fraction(0))

    @classmethod
    def real(cls, x: float) -> "Phase":
        return cls(radians=x)

    @property
    def is_rational(self) -> bool:
        return self._frac is not None

    @property
    def frac(self) -> Fraction | None:
        return self._frac

    @property
    def radians(self) -> float:
        if self._frac is not None:
            return float(self._frac) * math.pi
        return self._rad

    def exp(self) -> complex:
        """``e^{i*phase}``, exact for multiples of pi/2."""
        if self._frac is not None and (self._frac * 2).denominator == 1:
            return (1, 1j, -1, -1j)[int(self._frac * 2) % 4]
        return cmath.exp(1j * self.radians)

    def is_zero(self) -> bool:
        return self == ZERO

    def __add__(self, other: PhaseLike) -> "Phase":
        other = as_phase(other)
        if self.is_rational and other.is_rational:
            return Phase(frac=self._frac + other._frac)
        return Phase(radians=self.radians + other.radians)

    __radd__ = __add__

    def __neg__(self) -> "Phase":
        if self.is_rational:
            return Phase(frac=-self._frac)
        return Phase(radians=-self._rad)

    def __sub__(self, other: PhaseLike) -> "Phase":
        return self + (-as_phase(other))

    def __rsub__(self, other: PhaseLike) -> "Phase":
        return as_phase(other) - self

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, float, Fraction)) and not isinstance(other, bool):
            other = as_phase(other)
        if not isinstance(other, Phase):
            return NotImplemented
        if self.is_rational and other.is_rational:
            return self._frac == other._frac
        d = abs(self.radians - other.radians) % TWO_PI
        return min(d, TWO_PI - d) <= ANGLE_TOL

    def __hash__(self):
        # coarse rounding keeps tolerance-equal phases in the same bucket almost always
        x = self.radians
        return hash((round(math.cos(x), 8) + 0.0, round(math.sin(x), 8) + 0.0))

    def __repr__(self):
        if self.is_rational:
            p, q = self._frac.numerator, self._frac.denominator
            if p == 0:
                return "0"
            num = "pi" if p == 1 else f"{p}pi"
            return num if q == 1 else f"{num}/{q}"
        return f"{self._rad!r}rad"

    def to_json(self) -> dict:
        if self.is_rational:
            return {"pi_rational": [self._frac.numerator, self._frac.denominator]}
        return {"radians": self._rad}

    @classmethod
    def from_json(cls, doc) -> "Phase":
        if not isinstance(doc, dict) or len(doc) != 1:
            raise ValueError(f"bad phase encoding: {doc!r}")
        if "pi_rational" in doc:
            p, q = doc["pi_rational"]
            if not (isinstance(p, int) and isinstance(q, int)) or q <= 0:
                raise DomainError(f"pi_rational needs integers p, q>0, got {doc!r}")
            return cls.pi(p, q)
        if "radians" in doc:
            x = doc["radians"]
            if isinstance(x, bool) or not isinstance(x, (int, float)):
                raise ValueError(f"radians must be a number, got {x!r}")
            return cls.real(x)
        raise ValueError(f"bad phase encoding: {doc!r}")


PhaseLike = Union[Phase, int, float, Fraction]

ZERO = Phase.zero()
PI = Phase.pi(1)


def as_phase(x) -> Phase:
    """Coerce numbers to phases: ints are multiples of pi, floats are radians."""
    if isinstance(x, Phase):
        return x
    if isinstance(x, Fraction):
        return Phase(frac=x)
    if isinstance(x, bool):
        raise TypeError("bool is not a phase")
    if isinstance(x, int):
        return Phase(frac=Fraction(x))
    if isinstance(x, float):
        return Phase(radians=x)
    raise TypeError(f"cannot interpret {x!r} as a phase")


def check_lambda(lam) -> float:
    lam = float(lam)
    if not math.isfinite(lam) or lam < 0:
        raise DomainError(f"lambda must be a finite real >= 0, got {lam!r}")
    return lam
