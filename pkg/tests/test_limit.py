import pytest
from hypothesis import given, strategies as st

from uqsym import catalog
from uqsym.action import ActionFamily, KAction, VertexAction, apply_word
from uqsym.expr import parse_expr
from uqsym.limit import (LieAction, PoleAtOne, SignObstruction, SignWarning, UnboundParameter, _at_one,
                         classical_limit, lie_apply, verify_lie)
from uqsym.qspace import QSpace

from strategies import polynomials


def row(table, r, orient=0):
    return catalog.theorem_table(table)[r - 1].families[orient]


def test_row_two_vertex_i():
    lie = classical_limit(row("T3.1", 2))
    assert lie.h[0] == (-2, -1)
    assert lie.f[0][0] == parse_expr("-x1^2", lie.space)
    assert verify_lie(lie).passed


def test_trivial_family():
    fam = catalog.family(["aq2/1[-+]", "aq2/1"])
    with pytest.warns(SignWarning):
        lie = classical_limit(fam)
    assert lie.h == [(0, 0), (0, 0)]
    assert all(p.is_zero() for v in lie.e + lie.f for p in v)
    assert verify_lie(lie).passed


def test_row_eight_q_free_image():
    fam = row("T4.11", 8)
    lie = classical_limit(fam)
    assert str(fam.vertex(2).e[2]) == "x1 + x2*x3"
    assert lie.e[1][2] == parse_expr("x1 + x2*x3", lie.space)


def test_flipped_sign_fails():
    n = 2
    good = {"h": (-2, -1), "e": ("1", "0"), "f": ("-x1^2", "-x1*x2")}
    other = {"h": (1, -1), "e": ("0", "x1"), "f": ("x2", "0")}
    bad = dict(good, f=("-x1^2", "x1*x2"))
    assert verify_lie(LieAction.from_text(n, [good, other])).passed
    rep = verify_lie(LieAction.from_text(n, [bad, other]))
    assert not rep.passed
    keys = {(str(rid), at) for (rid, at), r in rep.residuals.items() if not r.is_zero()}
    assert ("ef-commutator(1,1)", 2) in keys


def test_limit_errors():
    with pytest.raises(SignObstruction):
        _signed()
    with pytest.raises(UnboundParameter):
        classical_limit(catalog.general_family("aq2/2"))
    sp = QSpace(2)
    with pytest.raises(PoleAtOne):
        _at_one(parse_expr("(q - 1)^-1*x1", sp), QSpace(2, 1))


def _signed():
    fam = catalog.family(["aq2/2"])
    v = fam.vertex(1)
    k = KAction((-1, 1), v.k.exps)
    return classical_limit(ActionFamily(fam.space, (VertexAction(k, v.e, v.f),)))


_LIMITS = [("T3.1", r) for r in (2, 3, 4)] + [("T4.11", r) for r in range(2, 10)]


@given(st.sampled_from(_LIMITS), st.integers(0, 1), st.data())
def test_derivation_property(which, orient, data):
    lie = classical_limit(row(*which, orient))
    q_sp = QSpace(lie.n)
    u = data.draw(polynomials(q_sp, max_degree=3, params=False)).substitute(None, 1)
    v = data.draw(polynomials(q_sp, max_degree=3, params=False)).substitute(None, 1)
    t = data.draw(st.integers(1, lie.m))
    for gen in ("h", "e", "f"):
        d = lambda p: lie_apply(lie, t, gen, p)
        assert d(u * v) == d(u) * v + u * d(v)


def _q_free_entries():
    out = []
    for tag in catalog.list_ids(4):
        fam = catalog.family([tag], 4)
        if all(s > 0 for s in fam.vertex(1).k.signs):
            out.append(tag)
    return out


@pytest.mark.parametrize("tag", _q_free_entries())
def test_limit_compatibility(tag):
    fam = catalog.family([tag], 4)
    lie = classical_limit(fam)
    for s in range(1, fam.n + 1):
        x = fam.space.gen(s)
        quantum = apply_word(fam, ((1, "e"), (1, "f")), x) - apply_word(fam, ((1, "f"), (1, "e")), x)
        try:
            at_one = _at_one(quantum, lie.space)
        except PoleAtOne:
            continue
        y = lie.space.gen(s)
        classical = lie_apply(lie, 1, "e", lie_apply(lie, 1, "f", y)) - lie_apply(lie, 1, "f", lie_apply(lie, 1, "e", y))
        assert at_one == classical, (tag, s)
