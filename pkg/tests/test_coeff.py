from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from uqsym.coeff import (DivisionByZero, NonInvertibleDivisor, ONE, ParamScalar, Q, QScalar, RootOfUnityRisk,
                         ZeroBinding, format_param, qint, substitute)
from uqsym.expr import parse_scalar

from strategies import scalars

P = {"a0": True, "e0": True, "a3": True, "xi4": False, "t": False, "a": True}


def s(text):
    return parse_scalar(text, P)


def test_qint_three():
    assert qint(3) == ONE + Q + Q * Q


def test_qint_zero():
    assert qint(0).is_zero()


def test_qint_minus_one():
    assert qint(-1) == -QScalar.qpow(-1)
    assert qint(-1).evaluate(2) == Fraction(-1, 2)


@pytest.mark.parametrize("k", range(-10, 11))
def test_qint_recurrence(k):
    assert qint(k + 1) == Q * qint(k) + ONE


def test_difference_of_squares():
    assert s("(q+1)*(q-1)") == s("q^2 - 1")


def test_invertible_parameter_cancels():
    assert s("a0^-1") * s("a0") == s("1")


def test_division_cancels_qint():
    r = s("-q*qint(2)") / s("qint(2)")
    assert r == s("-q")
    assert substitute(r, None, 2) == ParamScalar.const(-2)


def test_division_errors():
    with pytest.raises(DivisionByZero):
        s("a0") / ParamScalar.const(0)
    with pytest.raises(NonInvertibleDivisor):
        s("a0") / s("a0 + 1")
    with pytest.raises(NonInvertibleDivisor):
        s("a0") / s("xi4")


def test_substitute_binding():
    assert substitute(s("-q*a0^-1"), {"a0": 1}) == s("-q")


def test_substitute_classical():
    assert substitute(ParamScalar.const(1).scale(qint(2)), None, 1) == ParamScalar.const(2)


def test_substitute_expression():
    v = s("-q*a0^-1*e0^-1*a3^-1")
    assert substitute(s("xi4"), {"xi4": v}) == v


def test_substitute_errors():
    with pytest.raises(RootOfUnityRisk):
        substitute(s("q"), None, -1)
    with pytest.raises(ZeroBinding):
        substitute(s("a0^-1"), {"a0": 0})


def test_canonical_denominator_is_monic():
    x = QScalar((2,), (0, 2))  # 2 / (2q)
    assert x == QScalar.qpow(-1)
    assert x.den[-1] == 1


def test_format_round_trip():
    for text in ("-q*a0^-1*e0^-1 + a3*xi4", "(q^2 + q + 1)*t", "0", "1*(q^2 + 1)^-1*a"):
        v = s(text)
        assert s(format_param(v)) == v


@given(scalars(), scalars(), scalars())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=4), st.lists(st.integers(-3, 3), min_size=1, max_size=4))
def test_qscalar_field_axioms(num, den):
    a = QScalar(num)
    b = QScalar(den)
    if b.is_zero():
        return
    r = a / b
    assert r * b == a
    if a:
        assert a * a.inverse() == ONE
    # normalizing twice changes nothing
    assert QScalar(r.num, r.den) == r


@given(scalars(), scalars(), st.sampled_from([Fraction(2), Fraction(3, 2), Fraction(-1, 3)]))
def test_substitute_is_a_homomorphism(a, b, qv):
    bind = {"a": ParamScalar.const(3), "t": ParamScalar.q(2)}
    sa, sb = substitute(a, bind, qv), substitute(b, bind, qv)
    assert substitute(a * b, bind, qv) == sa * sb
    assert substitute(a + b, bind, qv) == sa + sb


def test_substitute_drops_vanishing_terms():
    v = substitute(s("2 + (q - 1)*a"), None, 1)
    assert v == ParamScalar.const(2)
    assert substitute(s("(q - 2)*t"), None, 2).is_zero()
