import pytest
from hypothesis import given, strategies as st

from uqsym.coeff import ParamScalar
from uqsym.expr import parse_expr
from uqsym.qspace import QSpace, RankMismatch, mono_mul

from strategies import polynomials

P = {"a0": True, "u1": False, "xi2": False}


def test_mono_mul_examples():
    assert mono_mul((0, 1), (1, 0)) == (1, (1, 1))
    assert mono_mul((1, 0), (0, 1)) == (0, (1, 1))
    assert mono_mul((0, 1, 1), (1, 0, 0)) == (2, (1, 1, 1))


def test_mono_mul_letter_by_letter():
    sp = QSpace(3)
    x1, x2, x3 = (sp.gen(i) for i in (1, 2, 3))
    assert x2 * x3 * x1 == (x2 * (x1 * x3)).scale(ParamScalar.q(1))
    assert x2 * x3 * x1 == (x1 * x2 * x3).scale(ParamScalar.q(2))


def test_mono_mul_rank_mismatch():
    with pytest.raises(RankMismatch):
        mono_mul((1, 0), (1, 0, 0))


def test_poly_arith_examples():
    sp = QSpace(2)
    x1, x2 = sp.gen(1), sp.gen(2)
    assert (x1 + x2) * x1 == parse_expr("x1^2 + q*x1*x2", sp)
    p = parse_expr("3*x1 - q*x2^2", sp)
    assert p * sp.one() == p
    assert (x1 - x1).is_zero() and not (x1 - x1).terms


def test_rank_checked():
    with pytest.raises(RankMismatch):
        QSpace(2).gen(1) + QSpace(3).gen(1)


def test_homogeneous_component_examples():
    sp = QSpace(3)
    assert parse_expr("a0 + u1*x1^2", sp, P).homogeneous_component(0) == parse_expr("a0", sp, P)
    assert parse_expr("x1*x2", sp).homogeneous_component(1).is_zero()
    p = parse_expr("-q*x1*x2 + xi2*x2^3", sp, P)
    assert p.homogeneous_component(3) == parse_expr("xi2*x2^3", sp, P)


@pytest.mark.parametrize("n", range(2, 7))
def test_defining_relation(n):
    sp = QSpace(n)
    for i in range(1, n + 1):
        for j in range(1, i):
            xi, xj = sp.gen(i), sp.gen(j)
            assert (xi * xj - (xj * xi).scale(ParamScalar.q(1))).is_zero()


def test_iteration_order_is_graded_lex():
    sp = QSpace(2)
    p = parse_expr("x2^2 + 1 + x1 + x1*x2 + x2 + x1^2", sp)
    assert str(p) == "1 + x1 + x2 + x1^2 + x1*x2 + x2^2"


@given(st.data())
def test_unit_and_grading(data):
    sp = QSpace(data.draw(st.sampled_from([2, 3])))
    a = data.draw(polynomials(sp, max_degree=3))
    b = data.draw(polynomials(sp, max_degree=3))
    assert a * sp.one() == a and sp.one() * a == a
    ab = a * b
    for d in range(7):
        want = sp.zero()
        for i in range(d + 1):
            want = want + a.homogeneous_component(i) * b.homogeneous_component(d - i)
        assert ab.homogeneous_component(d) == want
    total = sp.zero()
    for d in range(7):
        total = total + a.homogeneous_component(d)
    assert total == a
