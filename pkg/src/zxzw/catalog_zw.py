"""ZW rules, in three groups."""

from __future__ import annotations

from .diagram import ZW, black_pi, black_w, cap, compose, crossing, cup, identity, rgate, swap, wspider
from .gadgets import (
    zw_effect_zero,
    zw_merge,
    zw_minus_one,
    zw_split,
    zw_state_one,
    zw_state_zero,
    zw_w_transpose,
)
from .rules import COMPLEX, RuleSchema

I = identity()
I2 = identity(2)
P = black_pi()
W = black_w()
R = rgate
Z = wspider
tau = crossing()
sigma = swap()

GROUP_I = "ZW rules I"
GROUP_II = "ZW rules II"
GROUP_III = "ZW rules III"

r_ = (("r", COMPLEX),)
rs = (("r", COMPLEX), ("s", COMPLEX))


def black3():
    """Three-legged black node: |0> -> |001> + |010> + |100>, |1> -> |000>."""
    return compose(W, (P >> W) @ I)


def _rule(name, params, lhs, rhs, group, **kw):
    return RuleSchema(name=name, calculus=ZW, params=params, lhs=lhs, rhs=rhs, figure=f"{group} ({name})", **kw)


ZW_RULES = (
    # group I
    _rule("reix2", (), lambda e: tau >> tau, lambda e: I2, GROUP_I, note="the crossing is an involution"),
    _rule(
        "reix3",
        (),
        lambda e: compose(tau @ I, I @ tau, tau @ I),
        lambda e: compose(I @ tau, tau @ I, I @ tau),
        GROUP_I,
        note="Yang-Baxter",
    ),
    _rule("natnx", (), lambda e: (P @ I) >> tau, lambda e: tau >> (R(-1) @ P), GROUP_I),
    _rule("natex", (), lambda e: (zw_state_zero() @ I) >> tau, lambda e: I @ zw_state_zero(), GROUP_I),
    _rule("reix1", (), lambda e: cap() >> tau, lambda e: cap() >> (I @ R(-1)), GROUP_I),
    _rule("uncowL", (), lambda e: W >> (zw_effect_zero() @ I), lambda e: P, GROUP_I),
    _rule("uncowR", (), lambda e: W >> (I @ zw_effect_zero()), lambda e: P, GROUP_I),
    _rule(
        "natww",
        (),
        lambda e: W >> ((P >> W) @ I),
        lambda e: W >> (I @ (P >> W)),
        GROUP_I,
        note="associativity of the black node",
    ),
    _rule(
        "natwx",
        (),
        lambda e: compose(W @ I, I @ tau, tau @ I),
        lambda e: compose(tau, I @ W, R(-1) @ I2),
        GROUP_I,
        note="a W node passes a crossing at the cost of a sign on the crossed wire",
    ),
    _rule("comcow", (), lambda e: W >> tau, lambda e: W, GROUP_I),
    _rule(
        "natmw",
        (),
        lambda e: Z(2, 1) >> W,
        lambda e: compose(W @ W, I @ sigma @ I, Z(2, 1) @ Z(2, 1)),
        GROUP_I,
    ),
    _rule("natmnw", (), lambda e: Z(2, 1) >> P, lambda e: (P @ P) >> Z(2, 1), GROUP_I),
    _rule("natmnew", (), lambda e: Z(2, 1) >> zw_effect_zero(), lambda e: zw_effect_zero() @ zw_effect_zero(), GROUP_I),
    _rule("hopf", (), lambda e: Z(1, 2) >> zw_w_transpose(), lambda e: zw_effect_zero() >> zw_state_one(), GROUP_I),
    _rule("sym3", (), lambda e: black3() >> (I @ sigma), lambda e: black3(), GROUP_I),
    # group II
    _rule("sym2", (), lambda e: W >> sigma, lambda e: W, GROUP_II),
    _rule("inv", (), lambda e: P >> P, lambda e: I, GROUP_II),
    _rule(
        "antnx",
        (),
        lambda e: (P @ P) >> tau,
        lambda e: compose(tau, P @ P, R(-1) @ R(-1)) @ zw_minus_one(),
        GROUP_II,
    ),
    _rule("symz", (), lambda e: Z(1, 2) >> sigma, lambda e: Z(1, 2), GROUP_II),
    _rule("uncozR", (), lambda e: Z(1, 2) >> (I @ Z(1, 0)), lambda e: I, GROUP_II),
    _rule("natzz", (), lambda e: Z(1, 2) >> (Z(1, 2) @ I), lambda e: Z(1, 2) >> (I @ Z(1, 2)), GROUP_II),
    _rule("ph", r_, lambda e: cap() >> (R(e["r"]) @ I), lambda e: cap() >> (I @ R(e["r"])), GROUP_II),
    _rule("natnc", (), lambda e: P >> Z(1, 2), lambda e: Z(1, 2) >> (P @ P), GROUP_II),
    _rule(
        "natmc",
        (),
        lambda e: Z(2, 1) >> Z(1, 2),
        lambda e: compose(Z(1, 2) @ Z(1, 2), I @ sigma @ I, Z(2, 1) @ Z(2, 1)),
        GROUP_II,
    ),
    _rule("loop", (), lambda e: Z(1, 2) >> Z(2, 1), lambda e: I, GROUP_II),
    _rule("unx", (), lambda e: (zw_state_one() @ I) >> tau, lambda e: R(-1) @ zw_state_one(), GROUP_II),
    _rule("rng1", (), lambda e: R(1), lambda e: I, GROUP_II),
    _rule("rng-1", (), lambda e: R(-1), lambda e: compose(I @ cap(), tau @ I, I @ cup()), GROUP_II),
    _rule("rngrsx", rs, lambda e: R(e["r"]) >> R(e["s"]), lambda e: R(e["r"] * e["s"]), GROUP_II),
    # group III
    _rule(
        "rngrsp",
        rs,
        lambda e: compose(zw_split(), R(e["r"]) @ R(e["s"]), zw_merge()),
        lambda e: R(e["r"] + e["s"]),
        GROUP_III,
    ),
    _rule("natrc", r_, lambda e: R(e["r"]) >> Z(1, 2), lambda e: Z(1, 2) >> (R(e["r"]) @ I), GROUP_III),
    _rule("natrec", r_, lambda e: R(e["r"]) >> zw_effect_zero(), lambda e: zw_effect_zero(), GROUP_III),
    _rule("phr", r_, lambda e: (R(e["r"]) @ I) >> Z(2, 1), lambda e: (I @ R(e["r"])) >> Z(2, 1), GROUP_III),
)
