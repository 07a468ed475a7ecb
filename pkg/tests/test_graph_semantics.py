import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zxzw.diagram import (
    Par,
    Seq,
    black_pi,
    cap,
    compose,
    cup,
    empty,
    hadamard,
    identity,
    lambda_box,
    phase_gate,
    swap,
    triangle,
    zspider,
)
from zxzw.graph import BOUNDARY, MalformedGraphError, OpenGraph, from_graph, to_graph
from zxzw.phase import PI, Phase
from zxzw.random_terms import TermShape, random_term, random_terms
from zxzw.semantics import contract_graph, interpret, matrices_equal, max_deviation, proportionality

from conftest import close


def test_generator_matrices():
    assert close(interpret(triangle()), [[1, 1], [0, 1]], 0)
    assert close(interpret(zspider(1, 1)), np.eye(2), 0)
    assert close(interpret(hadamard() >> hadamard()), np.eye(2), 1e-15)
    assert close(interpret(empty()), [[1]], 0)
    assert close(interpret(black_pi() >> black_pi()), np.eye(2), 0)
    assert close(interpret(swap() >> swap()), np.eye(4), 0)


def test_msb_convention():
    # |01> goes through (id ⊗ X-flip): the rightmost wire is the low bit
    m = interpret(identity() @ black_pi())
    assert m[0b00, 0b01] == 1 and m[0b11, 0b10] == 1


def test_snake_identities():
    snake1 = compose(identity() @ cap(), cup() @ identity())
    snake2 = compose(cap() @ identity(), identity() @ cup())
    assert close(interpret(snake1), np.eye(2), 1e-12)
    assert close(interpret(snake2), np.eye(2), 1e-12)


def test_matrices_equal_and_deviation():
    m = interpret(hadamard())
    assert matrices_equal(m, m, 1e-12)
    assert not matrices_equal(np.eye(2), np.eye(4))
    with pytest.raises(ValueError):
        matrices_equal(m, m, 0)
    assert max_deviation(m, m) == 0
    assert max_deviation(np.eye(2), interpret(phase_gate(PI))) == 2
    with pytest.raises(ValueError):
        max_deviation(np.eye(2), np.eye(4))
    rng = np.random.default_rng(0)
    a, b = rng.normal(size=(4, 4)), rng.normal(size=(4, 4))
    assert max_deviation(a, b) == max(abs(a[i, j] - b[i, j]) for i in range(4) for j in range(4))


def test_proportionality_diagnostic():
    m = interpret(hadamard())
    assert abs(proportionality(2 * m, m) - 2) < 1e-12
    assert proportionality(m, np.eye(2)) is None


def test_to_graph_examples():
    g = to_graph(hadamard() >> hadamard())
    assert len(g.nodes) == 2
    assert ((0, "out", 0), (1, "in", 0)) in g.edges
    g = to_graph(identity())
    assert g.nodes == () and g.edges == (((BOUNDARY, "in", 0), (BOUNDARY, "out", 0)),)
    assert to_graph(cap() >> cup()).loops == 1


def test_malformed_graph():
    g = OpenGraph((hadamard().gen,), (((0, "in", 0), (BOUNDARY, "in", 0)),), 1, 1)
    with pytest.raises(MalformedGraphError, match="dangling"):
        from_graph(g)
    g = OpenGraph((), (((BOUNDARY, "in", 0), (BOUNDARY, "out", 0)), ((BOUNDARY, "in", 0), (BOUNDARY, "out", 1))), 1, 2)
    with pytest.raises(MalformedGraphError):
        from_graph(g)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 100_000), st.sampled_from(["ZX", "ZW"]))
def test_graph_roundtrip_preserves_semantics(seed, calc):
    d = random_term(np.random.default_rng(seed), calc)
    back = from_graph(to_graph(d))
    assert back.arity == d.arity
    assert max_deviation(interpret(back), interpret(d)) <= 1e-9


def test_graph_roundtrip_twelve_generators():
    shape = TermShape(min_generators=12, max_generators=12)
    for d in random_terms(7, 20, "ZX", shape):
        assert max_deviation(interpret(from_graph(to_graph(d))), interpret(d)) <= 1e-9


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 100_000), st.integers(0, 100_000))
def test_functoriality_via_independent_contraction(s1, s2):
    a = random_term(np.random.default_rng(s1), "ZX", TermShape(max_wires=3, max_generators=8))
    b = random_term(np.random.default_rng(s2), "ZX", TermShape(max_wires=3, max_generators=8))
    p = Par(a, b)
    assert max_deviation(contract_graph(to_graph(p)), np.kron(interpret(a), interpret(b))) <= 1e-12
    if a.outputs == b.inputs:
        s = Seq(a, b)
        assert max_deviation(contract_graph(to_graph(s)), interpret(b) @ interpret(a)) <= 1e-12


def test_contraction_handles_loops_and_through_wires():
    d = (cap() >> cup()) @ identity() @ lambda_box(2.0)
    assert close(contract_graph(to_graph(d)), interpret(d), 1e-12)
    assert close(contract_graph(to_graph(swap())), interpret(swap()), 0)
    assert close(contract_graph(to_graph(zspider(0, 0, Phase.pi(1, 2)))), [[1 + 1j]], 1e-12)
