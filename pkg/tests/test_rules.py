import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zxzw.diagram import ZW, ZX, identity, lambda_box
from zxzw.phase import DomainError, Phase
from zxzw.rules import (
    DEFAULT_GRID,
    Grid,
    SideConditionError,
    ad_compose,
    catalog,
    check_rule_soundness,
    decompose_lambda,
    get_rule,
    instantiate,
    mutate,
)
from zxzw.semantics import interpret

from conftest import close

ZX_NAMES = ["S1", "S2", "S3", "H2", "H3", "H", "B1", "B2", "EU", "K2", "S4", "IV", "L1", "AD", "L2", "L3", "L4", "L5"]
ZX_NAMES += [f"TR{i}" for i in range(1, 15)]
ZW_NAMES = [
    "reix2", "reix3", "natnx", "natex", "reix1", "uncowL", "uncowR", "natww", "natwx", "comcow",
    "natmw", "natmnw", "natmnew", "hopf", "sym3", "sym2", "inv", "antnx", "symz", "uncozR", "natzz",
    "ph", "natnc", "natmc", "loop", "unx", "rng1", "rng-1", "rngrsx", "rngrsp", "natrc", "natrec", "phr",
]  # fmt: skip


def test_catalog_contents():
    assert [r.name for r in catalog(ZX)] == ZX_NAMES
    assert [r.name for r in catalog(ZW)] == ZW_NAMES
    assert not set(ZX_NAMES) & set(ZW_NAMES)
    assert get_rule("AD").side_condition is not None
    for r in catalog(ZX) + catalog(ZW):
        assert r.figure


def test_rhs_params_come_from_lhs_or_side_condition():
    for r in catalog(ZX) + catalog(ZW):
        lhs = r.template("lhs")
        assert lhs is not None, r.name
        named = {g.param.name for g in lhs.generators() if g.is_symbolic}
        derived = {s for s, _ in r.derived}
        assert set(r.symbols) <= named | derived, r.name


def test_instantiate_examples():
    lhs, rhs = instantiate(get_rule("S1"), {"alpha": Phase.pi(1, 2), "beta": Phase.pi(1)})
    assert rhs.gen.phase == Phase.pi(3, 2)
    lhs, rhs = instantiate(get_rule("L3"), {})
    assert lhs == lambda_box(1) and rhs == identity()
    lhs, rhs = instantiate(get_rule("AD"), {"lam1": 1, "beta": 0, "lam2": 1, "alpha": 1})
    gens = list(rhs.generators())
    assert gens[0].lam == 0.0 and gens[1].phase == Phase.zero()


def test_instantiate_errors():
    with pytest.raises(DomainError, match="missing"):
        instantiate(get_rule("S1"), {"alpha": 0})
    with pytest.raises(DomainError):
        instantiate(get_rule("L1"), {"lam": -0.5})
    with pytest.raises(DomainError, match="unknown"):
        instantiate(get_rule("S2"), {"alpha": 0})

    def broken(env):
        raise ValueError("nope")

    import dataclasses

    rule = dataclasses.replace(get_rule("AD"), side_condition=broken)
    with pytest.raises(SideConditionError):
        instantiate(rule, {"lam1": 1, "beta": 0, "lam2": 1, "alpha": 1})


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_instantiated_arities_agree(data):
    rule = data.draw(st.sampled_from(catalog(ZX) + catalog(ZW)))
    b = {}
    for s, dom in rule.params:
        if dom == "angle":
            b[s] = Phase.real(data.draw(st.floats(0, 6.28)))
        elif dom == "scalar":
            b[s] = data.draw(st.floats(0, 20))
        else:
            b[s] = complex(data.draw(st.floats(-5, 5)), data.draw(st.floats(-5, 5)))
    lhs, rhs = instantiate(rule, b)
    assert lhs.arity == rhs.arity


def test_ad_compose_examples():
    lam, g = ad_compose(1, Phase.zero(), 1, Phase.zero())
    assert lam == 2 and g == Phase.zero()
    lam, g = ad_compose(1, Phase.zero(), 1, Phase.pi(1))
    assert lam == 0 and g == Phase.zero()
    lam, g = ad_compose(1, Phase.zero(), 1, Phase.pi(1, 2))
    assert abs(lam - math.sqrt(2)) < 1e-12 and abs(g.radians - math.pi / 4) < 1e-12


def test_ad_compose_closed_form_cross_check():
    # law of cosines and the two-argument arctangent as an independent oracle
    rng = np.random.default_rng(5)
    for _ in range(200):
        l1, l2 = rng.uniform(0, 4, 2)
        b, a = rng.uniform(0, 2 * np.pi, 2)
        lam, g = ad_compose(l1, Phase.real(b), l2, Phase.real(a))
        ref = math.sqrt(l1**2 + l2**2 + 2 * l1 * l2 * math.cos(a - b))
        ang = math.atan2(l1 * math.sin(b) + l2 * math.sin(a), l1 * math.cos(b) + l2 * math.cos(a)) % (2 * math.pi)
        assert abs(lam - ref) < 1e-12
        assert Phase.real(ang) == g or lam < 1e-9


@pytest.mark.parametrize("lam", [0, 1, 0.999, 2, 2.5, 3, 7.25, 10])
def test_decompose_lambda(lam):
    d = decompose_lambda(lam)
    kinds = {g.kind for g in d.generators()}
    assert not kinds & {"lambda", "triangle"}
    assert d.arity == (1, 1)
    assert close(interpret(d), np.diag([1, lam]))


def test_decompose_one_is_identity():
    assert decompose_lambda(1) == identity()


def test_decompose_uses_doubling():
    # the integer part grows logarithmically in size
    assert decompose_lambda(64).size < 8 * decompose_lambda(2).size


def test_every_rule_sound_on_default_grid():
    for r in catalog(ZX) + catalog(ZW):
        rep = check_rule_soundness(r, DEFAULT_GRID, 1e-9)
        assert rep.passed, (r.name, [f.to_json() for f in rep.failures()[:2]])


def test_soundness_report_format():
    rep = check_rule_soundness(get_rule("IV"), [{}], 1e-9)
    assert rep.passed
    row = rep.to_json()[0]
    assert set(row) == {"rule", "binding", "max_deviation", "pass"}


def test_soundness_records_errors_without_aborting():
    rep = check_rule_soundness(get_rule("L1"), [{"lam": -1}, {"lam": 2}], 1e-9)
    assert not rep.records[0].passed and rep.records[0].error
    assert rep.records[1].passed


def test_mutation_breaks_every_rule():
    for r in catalog(ZX) + catalog(ZW):
        rep = check_rule_soundness(mutate(r), DEFAULT_GRID, 1e-9)
        assert not rep.passed, r.name


def test_mutated_s1_deviation():
    rep = check_rule_soundness(mutate(get_rule("S1")), DEFAULT_GRID, 1e-9)
    assert rep.max_deviation >= 1e-2


def test_grid_from_json():
    g = Grid.from_json({"angles": [{"pi_rational": [1, 2]}, 0.5], "scalars": [1, 3]})
    assert len(g.complexes) == 4
    with pytest.raises(DomainError):
        Grid.from_json({"scalars": [-1]})
