"""Reusable sub-diagrams built only from spiders, phase gates, Hadamards and wiring.

None of these use a lambda box or a triangle, so they are safe building blocks
for eliminating lambda boxes.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

import numpy as np

from .diagram import (
    Term,
    black_pi,
    black_w,
    cap,
    compose,
    crossing,
    cup,
    empty,
    hadamard,
    identity,
    phase_gate,
    rgate,
    tensor,
    transpose,
    wspider,
    xspider,
    zspider,
)
from .phase import PI, Phase

# ZX side


def sqrt2() -> Term:
    """Scalar sqrt(2)."""
    return compose(zspider(0, 1), hadamard(), zspider(1, 0))


def scalar(z: complex) -> Term:
    """A 0 -> 0 ZX diagram whose value is ``z``.

    ``z = sqrt(2) e^{i psi} * (1 + e^{i phi}) * 2**k`` with ``phi`` in [0, pi).
    """
    z = complex(z)
    if z == 0:
        return zspider(0, 0, PI)
    m = abs(z) / math.sqrt(2)
    loops = 0
    while m >= 2:
        m /= 2
        loops += 1
    phi = 2 * math.acos(m / 2)
    psi = cmath.phase(z) - phi / 2
    parts = [compose(zspider(0, 1, Phase.real(psi)), xspider(1, 0, PI)), zspider(0, 0, Phase.real(phi))]
    parts += [cap() >> cup() for _ in range(loops)]
    return tensor(*parts)


def diag(t: complex) -> Term:
    """1 -> 1 diagram interpreting to ``diag(1, t)``: copy the wire, weight the copy."""
    t = complex(t)
    theta = 2 * math.atan(abs(t))
    psi = cmath.phase(t) + math.pi / 2
    effect = compose(phase_gate(Phase.real(psi)), xspider(1, 0, Phase.real(theta)))
    body = compose(zspider(1, 2), identity() @ effect)
    # the effect has value (1 + e^{i theta}) / sqrt(2) on |0>
    c = (1 + cmath.exp(1j * theta)) / math.sqrt(2)
    return body @ scalar(1 / c)


def cnot(control: int = 0) -> Term:
    """Unnormalized CNOT on two wires (matrix CNOT / sqrt(2))."""
    if control == 0:
        return (zspider(1, 2) @ identity()) >> (identity() @ xspider(2, 1))
    return (identity() @ zspider(1, 2)) >> (xspider(2, 1) @ identity())


def cz() -> Term:
    """CZ on two wires, exactly."""
    body = compose(zspider(1, 2) @ identity(), identity() @ hadamard() @ identity(), identity() @ zspider(2, 1))
    return body @ sqrt2()


def _ry(angle: float) -> Term:
    # e^{i angle/2} Ry(angle)
    return compose(phase_gate(Phase.pi(3, 2)), xspider(1, 1, Phase.real(angle)), phase_gate(Phase.pi(1, 2)))


@lru_cache(maxsize=None)
def w_split() -> Term:
    """1 -> 2 map |0> -> |00>, |1> -> |01> + |10>."""
    theta = -math.pi / 2
    # controlled rotation on wire 0, controlled by wire 1
    cry = compose(cnot(1), _ry(-theta / 2) @ identity(), cnot(1), _ry(theta / 2) @ identity())
    body = compose(diag(math.sqrt(2)), zspider(1, 2), cry, cnot(0))
    return _normalize(body, np.array([[1, 0], [0, 1], [0, 1], [0, 0]], dtype=complex))


@lru_cache(maxsize=None)
def w_merge() -> Term:
    """2 -> 1 transpose of ``w_split``: |00> -> |0>, |01>, |10> -> |1>, |11> -> 0."""
    return transpose(w_split())


def plus(a: Term, b: Term) -> Term:
    """For diagonal ``a = diag(1, x)`` and ``b = diag(1, y)``, gives ``diag(1, x + y)``."""
    return compose(w_split(), a @ b, w_merge())


@lru_cache(maxsize=None)
def zx_black_w() -> Term:
    """The ZW W node written in ZX."""
    return xspider(1, 1, PI) >> w_split()


@lru_cache(maxsize=None)
def zx_crossing() -> Term:
    """The ZW fermionic crossing written in ZX: CZ followed by a swap."""
    from .diagram import swap

    return cz() >> swap()


def _normalize(body: Term, target: np.ndarray) -> Term:
    from .semantics import interpret, proportionality

    c = proportionality(target, interpret(body), tol=1e-9)
    if c is None:  # pragma: no cover - construction error
        raise AssertionError("gadget is not proportional to its target")
    return body @ scalar(c)


# ZW side


def zw_effect_one() -> Term:
    """<1| in ZW."""
    return black_w() >> cup()


def zw_effect_zero() -> Term:
    """<0| in ZW."""
    return compose(black_pi(), black_w(), cup())


def zw_w_transpose() -> Term:
    """2 -> 1 transpose of the W node: |00> -> |1>, |01>, |10> -> |0>."""
    return transpose(black_w())


def zw_state_one() -> Term:
    """|1> in ZW."""
    return cap() >> zw_w_transpose()


def zw_state_zero() -> Term:
    """|0> in ZW."""
    return compose(cap(), zw_w_transpose(), black_pi())


def zw_scalar(r: complex) -> Term:
    """A 0 -> 0 ZW diagram whose value is ``r``."""
    return compose(wspider(0, 1), rgate(r), zw_effect_one())


def zw_minus_one() -> Term:
    return zw_scalar(-1)


def zw_hadamard() -> Term:
    """Hadamard in ZW: a crossing against a white unit, scaled by 1/sqrt(2)."""
    body = compose(identity() @ wspider(0, 1), crossing(), identity() @ wspider(1, 0))
    return body @ zw_scalar(1 / math.sqrt(2))


def zw_triangle() -> Term:
    """Triangle in ZW: split with W and sum out one branch."""
    return compose(black_pi(), black_w(), wspider(1, 0) @ identity())


def zw_split() -> Term:
    """ZW version of ``w_split``."""
    return black_pi() >> black_w()


def zw_merge() -> Term:
    return zw_w_transpose() >> black_pi()


__all__ = [
    "sqrt2",
    "scalar",
    "diag",
    "cnot",
    "cz",
    "w_split",
    "w_merge",
    "plus",
    "zx_black_w",
    "zx_crossing",
    "zw_effect_one",
    "zw_effect_zero",
    "zw_state_one",
    "zw_state_zero",
    "zw_scalar",
    "zw_minus_one",
    "zw_hadamard",
    "zw_triangle",
    "zw_split",
    "zw_merge",
    "empty",
]
