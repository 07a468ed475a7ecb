import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zxzw.diagram import hadamard, identity, lambda_box, rgate, zspider
from zxzw.graph import to_graph
from zxzw.harness import HarnessConfig, check_rewrites, example_derivation
from zxzw.phase import Phase
from zxzw.random_terms import random_layer
from zxzw.rewrite import (
    LTR,
    RTL,
    Derivation,
    RewriteError,
    StaleEmbeddingError,
    apply,
    find_matches,
    greedy_fuse,
    iso_check,
    replay,
    rule_matches,
)
from zxzw.rules import get_rule
from zxzw.semantics import interpret, max_deviation

Z = lambda a=0: zspider(1, 1, Phase.real(a) if not isinstance(a, Phase) else a)  # noqa: E731


def test_match_examples():
    hh = hadamard() >> hadamard()
    assert len(find_matches(hadamard(), hh)) == 2
    chain = Z(0.1) >> Z(0.2) >> Z(0.3)
    sites = [e.nodes for e in rule_matches(get_rule("S1"), chain)]
    assert sites == [(0, 1), (1, 2)]
    assert find_matches(hadamard(), identity()) == []


def test_match_solves_parameters():
    e = rule_matches(get_rule("S1"), Z(0.25) >> Z(1.5))[0]
    assert abs(e.bindings["alpha"].radians - 0.25) < 1e-12
    assert abs(e.bindings["beta"].radians - 1.5) < 1e-12


def test_apply_s1_and_l3():
    host = Z(Phase.pi(1, 2)) >> Z(Phase.pi(1, 2))
    out = apply(host, get_rule("S1"), LTR, rule_matches(get_rule("S1"), host)[0])
    assert iso_check(out, Z(Phase.pi(1)))
    host = hadamard() >> lambda_box(1) >> hadamard()
    out = apply(host, get_rule("L3"), "lr", rule_matches(get_rule("L3"), host)[0])
    assert iso_check(out, hadamard() >> hadamard())


def test_iso_check():
    assert iso_check(hadamard() @ identity(), hadamard() @ identity())
    assert not iso_check(hadamard() @ identity(), identity() @ hadamard())
    assert not iso_check(Z(0.1), Z(0.2))
    assert iso_check(Z(0.1) >> hadamard(), Z(0.1) >> hadamard())


def _brute_chain_count(host, kind_ok):
    # ordered pairs of distinct nodes (a, b) with a's only output wired to b's only input
    g = to_graph(host)
    count = 0
    for (p, q) in g.edges:
        for x, y in ((p, q), (q, p)):
            if x[1] == "out" and y[1] == "in" and x[0] >= 0 and y[0] >= 0 and x[0] != y[0]:
                if kind_ok(g.nodes[x[0]]) and kind_ok(g.nodes[y[0]]):
                    count += 1
    return count


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10_000))
def test_matching_complete_on_small_hosts(seed):
    # every occurrence found by brute force is found by the matcher, and vice versa
    rng = np.random.default_rng(seed)
    host = random_layer(rng, 2)
    for _ in range(2):
        host = host >> random_layer(rng, 2)
    g = to_graph(host)
    if len(g.nodes) > 6:
        return
    is_h = lambda gen: gen.kind == "h"  # noqa: E731
    is_z11 = lambda gen: gen.kind == "zspider" and (gen.n, gen.m) == (1, 1)  # noqa: E731
    assert len(rule_matches(get_rule("H2"), host)) == _brute_chain_count(host, is_h)
    assert len(rule_matches(get_rule("S1"), host)) == _brute_chain_count(host, is_z11)
    n_h = sum(1 for gen in g.nodes if gen.kind == "h")
    assert len(find_matches(hadamard(), host)) == n_h


def test_random_applications_preserve_semantics():
    rec = check_rewrites(HarnessConfig(rewrite_samples=200, seed=3))[0]
    assert rec["status"] == "pass", rec.get("counterexamples")
    assert rec["max_deviation"] <= 1e-9


@pytest.mark.parametrize("name", ["S1", "H", "B2", "K2", "L1", "TR13", "natmw", "antnx", "rngrsp", "AD"])
def test_rule_applied_in_context(name):
    rule = get_rule(name)
    rng = np.random.default_rng(11)
    from zxzw.rules import DEFAULT_GRID, instantiate

    binding = DEFAULT_GRID.bindings(rule)[-1]
    lhs, _ = instantiate(rule, binding)
    n, m = lhs.arity
    host = random_layer(rng, n + 1, rule.calculus) >> (lhs @ identity()) >> random_layer(rng, m + 1, rule.calculus)
    for e in rule_matches(rule, host):
        extra = {k: v for k, v in binding.items() if k not in e.bindings}
        out = apply(host, rule, LTR, e, extra)
        assert max_deviation(interpret(out), interpret(host)) <= 1e-9


def test_rtl_needs_binding_for_free_params():
    rule = get_rule("S4")
    host = hadamard() >> zspider(1, 0)
    e = rule_matches(rule, host, RTL)[0]
    with pytest.raises(RewriteError, match="alpha"):
        apply(host, rule, RTL, e)
    out = apply(host, rule, RTL, e, {"alpha": 0.7})
    assert max_deviation(interpret(out), interpret(host)) <= 1e-12


def test_binding_domain_violation():
    rule = get_rule("L1")
    host = lambda_box(2) >> zspider(1, 2)
    e = rule_matches(rule, host)[0]
    with pytest.raises(RewriteError):
        apply(host, rule, LTR, e, {"lam": -1})
    with pytest.raises(RewriteError, match="disagrees"):
        apply(host, rule, LTR, e, {"lam": 3})


def test_stale_embedding():
    host = hadamard() >> hadamard()
    e = rule_matches(get_rule("H2"), host)[0]
    with pytest.raises(StaleEmbeddingError):
        apply(hadamard(), get_rule("H2"), LTR, e)
    with pytest.raises(StaleEmbeddingError):
        apply(Z(0.1) >> Z(0.2), get_rule("H2"), LTR, e)


def test_unusable_pattern():
    # S2's rhs is a bare wire, so it cannot be matched
    with pytest.raises(RewriteError):
        e = rule_matches(get_rule("S2"), Z())[0]
        apply(Z(), get_rule("S2"), RTL, e)
    assert rule_matches(get_rule("S2"), Z(), RTL) == []


def test_replay_example_and_corruption():
    d = example_derivation()
    rep = replay(d)
    assert rep.success and rep.steps_applied == 3 and rep.isomorphic_end
    assert rep.semantic_deviation <= 1e-9
    steps = list(d.steps)
    steps[1] = dataclasses.replace(steps[1], rule="H2")
    bad = replay(dataclasses.replace(d, steps=tuple(steps)))
    assert not bad.success and bad.failed_step == 1 and "step 1" in bad.error
    wrong_end = replay(dataclasses.replace(d, end=Z(0.3)))
    assert not wrong_end.success and wrong_end.failed_step is None


def test_derivation_json_roundtrip():
    d = example_derivation()
    back = Derivation.from_json(d.to_json())
    assert back.steps == d.steps and back.start == d.start
    assert replay(back).success
    with pytest.raises(ValueError):
        Derivation.from_json({"start": {}})


def test_greedy_fuse():
    host = Z(0.2) >> Z(0.3) >> hadamard() >> hadamard() >> lambda_box(1)
    out, steps = greedy_fuse(host)
    assert iso_check(out, Z(0.5))
    assert [s.rule for s in steps][0] == "S1"
    out, steps = greedy_fuse(rgate(2) >> rgate(1))
    assert max_deviation(interpret(out), interpret(rgate(2))) <= 1e-12
