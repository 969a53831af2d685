from functools import lru_cache

import pytest
from hypothesis import given, strategies as st

from uqsym import catalog
from uqsym.action import ActionFamily
from uqsym.coeff import ParamScalar, format_param
from uqsym.expr import parse_expr, parse_scalar
from uqsym.qspace import QSpace
from uqsym.relations import RelationId, extract_constraints, relation_ids, verify

from strategies import family_by_name, verified_family_names


def pair(t1, free1, t2, free2, n=None):
    sp = QSpace(catalog.entry(t1, n).n)
    v1, p1 = catalog.make_vertex(t1, n, free=free1, suffix="1", space=sp)
    v2, p2 = catalog.make_vertex(t2, n, free=free2, suffix="2", space=sp)
    return ActionFamily(sp, [v1, v2], {**p1, **p2})


@lru_cache(maxsize=None)
def a5_b6():
    return pair("aq2/ast3", ["s", "t"], "aq2/ast4", ["u", "v"])


@lru_cache(maxsize=None)
def a2_b7():
    sp = QSpace(3)
    v1, p1 = catalog.make_vertex("aq3/star2p", free=["a0", "xi4"], space=sp)
    v2, p2 = catalog.make_vertex("aq3/star7p", free=["e0", "a3"], space=sp)
    return ActionFamily(sp, [v1, v2], {**p1, **p2})


def test_family_two_passes():
    assert verify(catalog.family(["aq2/2"])).passed


def test_trivial_family_passes():
    rep = verify(catalog.family(["aq2/1[-+]"]))
    assert rep.passed and rep.first_failure() is None and extract_constraints(rep) == []


def test_broken_family_witness():
    rep = verify(family_by_name("broken-aq2/2"))
    assert not rep.passed
    rid, at, r = rep.first_failure()
    assert (str(rid), at) == ("ef-commutator(1,1)", 1)
    assert r == parse_expr("x1", 2)


def test_report_lines():
    rep = verify(family_by_name("broken-aq2/2"))
    bad = rep.lines(failures_only=True)
    assert bad[0] == "RELATION ef-commutator(1,1) AT x1: x1"
    assert all(not line.endswith(": OK") for line in bad)
    assert len(rep.lines()) == len(rep.residuals)


def test_fail_fast_stops_early():
    fam = family_by_name("broken-aq2/2")
    assert len(verify(fam, fail_fast=True).residuals) < len(verify(fam).residuals)


def test_constraints_a5_b6():
    cons = extract_constraints(verify(a5_b6()))
    assert sorted(format_param(c) for c in cons) == ["s1", "t1", "u2", "v2"]


def test_constraints_a2_b7():
    cons = extract_constraints(verify(a2_b7()))
    assert len(cons) == 1
    want = parse_scalar("a3*xi4 + q*a0^-1*e0^-1", {"a3": False, "xi4": False, "a0": True, "e0": True})
    c = cons[0]
    assert c == want or c == -want


def test_relation_ids_shape():
    ids = relation_ids(3)
    assert RelationId("ee-commute", 1, 3) in ids
    assert RelationId("ee-commute", 1, 2) not in ids
    assert RelationId("e-serre", 2, 1) in ids and RelationId("e-serre", 1, 3) not in ids
    with pytest.raises(ValueError):
        RelationId("bogus", 1, 1)
    with pytest.raises(ValueError):
        verify(catalog.family(["aq2/2"]), [RelationId("ef-commutator", 1, 2)])


def _sym(s):
    return {"a": True}.get(s, False)


_VALUES = st.sampled_from(["1", "-2", "q", "q^-1 + 1", "3*q^2"])


@given(st.data())
def test_constraint_soundness_a5_b6(data):
    fam = a5_b6()
    names = ["s1", "t1", "u2", "v2"]
    zero = {n: ParamScalar.const(0) for n in names}
    assert verify(fam.substitute(zero)).passed
    off = data.draw(st.sampled_from(names))
    bad = dict(zero)
    bad[off] = parse_scalar(data.draw(_VALUES))
    assert not verify(fam.substitute(bad)).passed


@given(st.data())
def test_constraint_soundness_a2_b7(data):
    fam = a2_b7()
    a3 = parse_scalar(data.draw(_VALUES))
    sol = {"a3": a3, "xi4": parse_scalar("-q", {}) / a3 * parse_scalar("a0^-1*e0^-1", {"a0": True, "e0": True})}
    assert verify(fam.substitute(sol)).passed
    wrong = {"a3": a3, "xi4": parse_scalar(data.draw(_VALUES))}
    assert not verify(fam.substitute(wrong)).passed


def _swap_rid(rid):
    i, j = 3 - rid.i, 3 - rid.j
    if rid.kind == "kk-commute" and i > j:
        i, j = j, i
    return RelationId(rid.kind, i, j)


def _swap(fam):
    return ActionFamily(fam.space, tuple(reversed(fam.vertices)), fam.params, tuple(reversed(fam.labels)))


_PAIRS = [n for n in verified_family_names() if family_by_name(n).m == 2]


@given(st.sampled_from(_PAIRS + ["A5|B6", "A2|B7", "A5|B2"]))
def test_swap_symmetry(name):
    if name == "A5|B6":
        fam = a5_b6()
    elif name == "A2|B7":
        fam = a2_b7()
    elif name == "A5|B2":
        fam = pair("aq2/ast3", ["a", "s", "t"], "aq2/ast2", ["tau"])
    else:
        fam = family_by_name(name)
    r1, r2 = verify(fam), verify(_swap(fam))
    assert r1.passed == r2.passed
    assert set(r1.residuals) == {(_swap_rid(rid), at) for rid, at in r2.residuals}
    for (rid, at), r in r2.residuals.items():
        other = r1.residuals[(_swap_rid(rid), at)]
        assert other == r or (rid.kind == "kk-commute" and other == -r)
