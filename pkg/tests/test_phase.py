import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zxzw.phase import PI, DomainError, Phase, as_phase, check_lambda

rationals = st.builds(Phase.pi, st.integers(-50, 50), st.integers(1, 12))
reals = st.builds(Phase.real, st.floats(-100, 100, allow_nan=False))
phases = st.one_of(rationals, reals)


@given(st.lists(st.tuples(st.booleans(), phases), max_size=10), phases)
def test_normalized_after_arithmetic(ops, start):
    p = start
    for add, q in ops:
        p = p + q if add else p - q
        assert 0 <= p.radians < 2 * math.pi
        if p.is_rational:
            assert 0 <= p.frac < 2


def test_rational_lowest_terms():
    p = Phase.pi(4, 8)
    assert p.frac == Fraction(1, 2)
    assert p.frac.denominator == 2
    assert Phase.pi(-1, 2).frac == Fraction(3, 2)


def test_equality_rules():
    assert Phase.pi(1, 2) == Phase.pi(5, 2)
    assert Phase.pi(1, 2) != Phase.pi(1, 3)
    assert Phase.real(math.pi / 2) == Phase.pi(1, 2)
    assert Phase.real(1e-13) == Phase.zero()
    assert Phase.real(2 * math.pi - 1e-13) == Phase.zero()
    assert Phase.real(1e-10) != Phase.zero()


def test_exp_exact_at_quarter_turns():
    assert Phase.pi(1, 2).exp() == 1j
    assert PI.exp() == -1
    assert Phase.pi(3, 2).exp() == -1j


def test_json_roundtrip():
    for p in (Phase.pi(3, 4), Phase.real(0.3)):
        assert Phase.from_json(p.to_json()) == p
    with pytest.raises(DomainError):
        Phase.from_json({"pi_rational": [1, 0]})
    with pytest.raises(ValueError):
        Phase.from_json({"degrees": 4})


def test_coercions():
    assert as_phase(1) == PI
    assert as_phase(0.5).radians == 0.5
    with pytest.raises(TypeError):
        as_phase(True)
    with pytest.raises(DomainError):
        check_lambda(-1)
    with pytest.raises(DomainError):
        check_lambda(float("inf"))
