"""ZX rules: spider/Hadamard rules, lambda and addition rules, triangle rules."""

from __future__ import annotations

from .diagram import (
    ZX,
    cap,
    compose,
    cup,
    hadamard,
    identity,
    lambda_box,
    phase_gate,
    swap,
    triangle,
    xspider,
    zspider,
)
from .gadgets import plus, sqrt2, w_split
from .phase import PI, Phase
from .rules import ANGLE, SCALAR, RuleSchema, ad_compose

I = identity()
H = hadamard()
T = triangle()
Z = zspider
X = xspider
A = phase_gate
L = lambda_box

ORIGINAL = "original ZX rules"
LAMBDA = "lambda and addition rules"
TRIANGLE = "triangle rules"

alpha = (("alpha", ANGLE),)
alpha_beta = (("alpha", ANGLE), ("beta", ANGLE))
lam = (("lam", SCALAR),)


def inv_sqrt2():
    """Scalar 1/sqrt(2) made from a lambda-0 projection."""
    return compose(Z(0, 1), L(0), H, L(0), Z(1, 0))


def down_triangle():
    """The upside-down triangle, ``[[1, 0], [1, 1]]``."""
    return compose(X(1, 1, PI), T, X(1, 1, PI))


def bend(d):
    """Transpose of a 1 -> 1 diagram by bending both legs."""
    return compose(cap() @ I, I @ d @ I, I @ cup())


def _ad_side(env):
    lam_, gamma = ad_compose(env["lam1"], env["beta"], env["lam2"], env["alpha"])
    return {"lam": lam_, "gamma": gamma}


def _rule(name, params, lhs, rhs, figure, **kw):
    return RuleSchema(name=name, calculus=ZX, params=params, lhs=lhs, rhs=rhs, figure=figure, **kw)


ZX_RULES = (
    # original rules
    _rule(
        "S1",
        alpha_beta,
        lambda e: Z(1, 1, e["alpha"]) >> Z(1, 1, e["beta"]),
        lambda e: Z(1, 1, e["alpha"] + e["beta"]),
        ORIGINAL + " row (S1)",
        note="fusion of two 1-1 spiders; phases add",
    ),
    _rule("S2", (), lambda e: Z(1, 1), lambda e: I, ORIGINAL + " row (S2)"),
    _rule("S3", (), lambda e: Z(0, 2), lambda e: cap(), ORIGINAL + " row (S3)"),
    _rule("H2", (), lambda e: H >> H, lambda e: identity(), ORIGINAL + " row (H2)"),
    _rule(
        "H3",
        (),
        lambda e: cap() >> (I @ H),
        lambda e: cap() >> (H @ I),
        ORIGINAL + " row (H3)",
        note="a Hadamard slides around a cap",
    ),
    _rule(
        "H",
        alpha,
        lambda e: compose(H @ H, X(2, 1, e["alpha"]), H),
        lambda e: Z(2, 1, e["alpha"]),
        ORIGINAL + " row (H)",
        note="colour change",
    ),
    _rule(
        "B1",
        (),
        lambda e: sqrt2() @ (X(0, 1) >> Z(1, 2)),
        lambda e: X(0, 1) @ X(0, 1),
        ORIGINAL + " row (B1)",
    ),
    _rule(
        "B2",
        (),
        lambda e: X(2, 1) >> Z(1, 2),
        lambda e: compose(Z(1, 2) @ Z(1, 2), I @ swap() @ I, X(2, 1) @ X(2, 1)) @ sqrt2(),
        ORIGINAL + " row (B2)",
        note="bialgebra",
    ),
    _rule(
        "EU",
        (),
        lambda e: H @ sqrt2(),
        lambda e: compose(A(Phase.pi(1, 2)), X(1, 1, Phase.pi(1, 2)), A(Phase.pi(1, 2))) @ Z(0, 0, Phase.pi(3, 2)),
        ORIGINAL + " row (EU)",
        note="Euler decomposition of H",
    ),
    _rule(
        "K2",
        alpha,
        lambda e: (X(1, 1, PI) >> Z(1, 2, e["alpha"])) @ sqrt2(),
        lambda e: (Z(1, 2, -e["alpha"]) >> (X(1, 1, PI) @ X(1, 1, PI))) @ (Z(0, 1, e["alpha"]) >> X(1, 0, PI)),
        ORIGINAL + " row (K2)",
        note="pi copy through a phased spider",
    ),
    _rule("S4", alpha, lambda e: A(e["alpha"]) >> X(1, 0), lambda e: X(1, 0), ORIGINAL + " row (S4)"),
    # lambda and addition
    _rule("IV", (), lambda e: sqrt2() @ inv_sqrt2(), lambda e: identity(0), LAMBDA + " row (IV)"),
    _rule(
        "L1",
        lam,
        lambda e: L(e["lam"]) >> Z(1, 2),
        lambda e: Z(1, 2) >> (L(e["lam"]) @ I),
        LAMBDA + " row (L1)",
    ),
    _rule(
        "AD",
        (("lam1", SCALAR), ("beta", ANGLE), ("lam2", SCALAR), ("alpha", ANGLE)),
        lambda e: plus(L(e["lam1"]) >> A(e["beta"]), L(e["lam2"]) >> A(e["alpha"])),
        lambda e: L(e["lam"]) >> A(e["gamma"]),
        LAMBDA + " row (AD)",
        side_condition=_ad_side,
        derived=(("lam", SCALAR), ("gamma", ANGLE)),
        note="lam e^{i gamma} = lam1 e^{i beta} + lam2 e^{i alpha}",
    ),
    _rule("L2", lam, lambda e: L(e["lam"]) >> X(1, 0), lambda e: X(1, 0), LAMBDA + " row (L2)"),
    _rule("L3", (), lambda e: L(1), lambda e: identity(), LAMBDA + " row (L3)"),
    _rule(
        "L4",
        (("lam1", SCALAR), ("lam2", SCALAR)),
        lambda e: L(e["lam1"]) >> L(e["lam2"]),
        lambda e: L(e["lam1"] * e["lam2"]),
        LAMBDA + " row (L4)",
    ),
    _rule(
        "L5",
        (("lam", SCALAR), ("alpha", ANGLE)),
        lambda e: L(e["lam"]) >> A(e["alpha"]),
        lambda e: A(e["alpha"]) >> L(e["lam"]),
        LAMBDA + " row (L5)",
    ),
    # triangle rules
    _rule("TR1", (), lambda e: down_triangle(), lambda e: bend(T), TRIANGLE + " row (TR1)"),
    _rule("TR2", (), lambda e: X(0, 1) >> T, lambda e: X(0, 1), TRIANGLE + " row (TR2)"),
    _rule("TR3", (), lambda e: X(0, 1, PI) >> T, lambda e: Z(0, 1) @ sqrt2(), TRIANGLE + " row (TR3)"),
    _rule("TR4", (), lambda e: (T >> Z(1, 0, PI)) @ sqrt2(), lambda e: X(1, 0), TRIANGLE + " row (TR4)"),
    _rule(
        "TR5",
        (),
        lambda e: compose(Z(1, 2), T @ I, X(2, 1)) @ sqrt2(),
        lambda e: T,
        TRIANGLE + " row (TR5)",
    ),
    _rule("TR6", (), lambda e: compose(T, A(PI), T), lambda e: A(PI), TRIANGLE + " row (TR6)"),
    _rule("TR7", (), lambda e: compose(Z(1, 2), T @ I, Z(2, 1)), lambda e: identity(), TRIANGLE + " row (TR7)"),
    _rule("TR8", (), lambda e: compose(Z(1, 2), T @ T, Z(2, 1)), lambda e: T, TRIANGLE + " row (TR8)"),
    _rule(
        "TR9",
        (),
        lambda e: compose(Z(1, 2), down_triangle() @ down_triangle(), Z(2, 1)),
        lambda e: down_triangle(),
        TRIANGLE + " row (TR9)",
    ),
    _rule(
        "TR10",
        (),
        lambda e: compose(Z(1, 2), T @ down_triangle(), X(2, 1)) @ sqrt2(),
        lambda e: Z(1, 0) >> Z(0, 1),
        TRIANGLE + " row (TR10)",
    ),
    _rule(
        "TR11",
        (),
        lambda e: compose(Z(1, 3), I @ T @ down_triangle(), I @ cup()),
        lambda e: identity(),
        TRIANGLE + " row (TR11)",
    ),
    _rule(
        "TR12",
        (),
        lambda e: compose(Z(1, 3), I @ T @ T, I @ cup()),
        lambda e: L(2),
        TRIANGLE + " row (TR12)",
    ),
    _rule(
        "TR13",
        alpha,
        lambda e: w_split() >> (A(e["alpha"]) @ A(e["alpha"])),
        lambda e: A(e["alpha"]) >> w_split(),
        TRIANGLE + " row (TR13)",
    ),
    _rule(
        "TR14",
        lam,
        lambda e: w_split() >> (L(e["lam"]) @ L(e["lam"])),
        lambda e: L(e["lam"]) >> w_split(),
        TRIANGLE + " row (TR14)",
    ),
)
