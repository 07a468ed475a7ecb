import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import numpy as np

from zxzw.diagram import (
    ArityError,
    CalculusError,
    Par,
    Seq,
    black_w,
    cap,
    cup,
    elaborate,
    empty,
    hadamard,
    identity,
    lambda_box,
    par,
    seq,
    transpose,
    triangle,
    wire_permutation,
    wspider,
    zspider,
)
from zxzw.phase import DomainError, Phase
from zxzw.random_terms import random_term, random_terms
from zxzw.semantics import interpret
from zxzw.serialize import ParseError, UnknownGeneratorError, deserialize, serialize

from conftest import close


def test_seq_arity():
    assert seq(hadamard(), hadamard()).arity == (1, 1)
    assert seq(cap(), cup()).arity == (0, 0)


def test_seq_mismatch_names_both_arities():
    with pytest.raises(ArityError, match="1->2.*1->1"):
        seq(zspider(1, 2), hadamard())


def test_par_arity():
    assert par(identity(), identity()).arity == (2, 2)
    assert par(cap(), empty()).arity == (0, 2)
    assert par(hadamard(), triangle()).arity == (2, 2)


def test_calculi_do_not_mix():
    with pytest.raises(CalculusError):
        hadamard() @ black_w()
    # structural generators are shared
    assert (cap() @ black_w()).calculus == "ZW"


def test_lambda_domain():
    with pytest.raises(DomainError):
        lambda_box(-1)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 10_000), st.sampled_from(["ZX", "ZW"]))
def test_arity_algebra(s1, s2, calc):
    a = random_term(np.random.default_rng(s1), calc)
    b = random_term(np.random.default_rng(s2), calc)
    p = Par(a, b)
    assert p.arity == (a.inputs + b.inputs, a.outputs + b.outputs)
    if a.outputs == b.inputs:
        assert Seq(a, b).arity == (a.inputs, b.outputs)
    else:
        with pytest.raises(ArityError):
            Seq(a, b)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(["ZX", "ZW"]))
def test_serialization_roundtrip_is_structural_identity(s, calc):
    d = random_term(np.random.default_rng(s), calc)
    back = deserialize(serialize(d))
    assert back == d
    assert serialize(back) == serialize(d)


def test_serialization_examples():
    assert serialize(triangle()) == '{"gen": "triangle"}'
    assert deserialize('{"gen":"triangle"}') == triangle()
    lam = lambda_box(2.5)
    assert deserialize(serialize(lam)).gen.lam == 2.5
    x = 0.1 + 0.2
    assert deserialize(serialize(lambda_box(x))).gen.lam == x


def test_deserialize_errors():
    with pytest.raises(DomainError):
        deserialize('{"gen": "lambda", "lambda": -1}')
    with pytest.raises(UnknownGeneratorError):
        deserialize('{"gen": "toffoli"}')
    with pytest.raises(ParseError) as info:
        deserialize('{"seq": [{"gen": "h"}, ')
    assert isinstance(info.value.where, int)
    with pytest.raises(ParseError, match=r"\$\.seq\[1\]"):
        deserialize('{"seq": [{"gen": "h"}, {"gen": "zspider", "n": -1, "m": 1}]}')
    with pytest.raises(ParseError):
        deserialize('{"seq": [{"gen": "zspider", "n": 1, "m": 2}, {"gen": "h"}]}')


def test_wire_permutations_are_correct():
    import itertools

    for k in range(1, 5):
        for perm in itertools.permutations(range(k)):
            m = interpret(wire_permutation(list(perm)))
            for col in range(2**k):
                bits = [(col >> (k - 1 - i)) & 1 for i in range(k)]
                out = [0] * k
                for i, b in enumerate(bits):
                    out[perm[i]] = b
                row = int("".join(map(str, out)), 2)
                assert m[row, col] == 1


def test_transpose_and_elaborate():
    for d in random_terms(3, 30, "ZX") + random_terms(4, 30, "ZW"):
        assert close(interpret(transpose(d)), interpret(d).T)
        assert close(interpret(elaborate(d)), interpret(d))
    d = zspider(2, 3, Phase.pi(1, 3))
    assert {g.kind for g in elaborate(d).generators()} == {"zspider", "phase"}
    assert all(g.phase.is_zero() for g in elaborate(d).generators() if g.kind == "zspider")
    assert wspider(1, 2).calculus == "ZW"
