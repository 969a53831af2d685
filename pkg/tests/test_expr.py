import pytest

from uqsym.coeff import ParamScalar
from uqsym.expr import ExprSyntaxError, NegativeGeneratorPower, UnknownSymbol, parse_expr
from uqsym.qspace import QSpace


def test_signed_monomial():
    sp = QSpace(2)
    p = parse_expr("-q*a0^-1*x1^2", sp, {"a0": True})
    assert p == sp.monomial((2, 0), ParamScalar.q(1) * ParamScalar.param("a0", True, -1) * -1)


def test_zero():
    assert parse_expr("0", 3).is_zero()


def test_straightened_on_parse():
    sp = QSpace(2)
    assert parse_expr("x2*x1", sp) == sp.monomial((1, 1), ParamScalar.q(1))


def test_whitespace_and_precedence():
    sp = QSpace(2)
    assert parse_expr(" - x1 ^ 2 ", sp) == parse_expr("-(x1^2)", sp)
    assert parse_expr("2*x1 + 3*x1", sp) == parse_expr("5*x1", sp)
    assert parse_expr("qint(3)*x1", sp) == parse_expr("(1 + q + q^2)*x1", sp)
    assert parse_expr("1/2*x2 - (q^2 + 1)^-1*x1", sp) == parse_expr("-x1*(1+q^2)^-1 + 1/2*x2", sp)
    with pytest.raises(ExprSyntaxError):
        parse_expr("x2/2", sp)


def test_errors():
    with pytest.raises(ExprSyntaxError) as e:
        parse_expr("x1 +", 2)
    assert e.value.pos == 4
    with pytest.raises(ExprSyntaxError):
        parse_expr("2 x1", 2)  # implicit multiplication
    with pytest.raises(UnknownSymbol):
        parse_expr("tau*x1", 2)
    with pytest.raises(UnknownSymbol):
        parse_expr("x3", 2)
    with pytest.raises(NegativeGeneratorPower):
        parse_expr("x1^-1", 2)
    with pytest.raises(Exception):
        parse_expr("t^-1", 2, {"t": False})
