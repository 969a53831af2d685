import pytest

from uqsym import catalog
from uqsym.action import KAction
from uqsym.coeff import ParamScalar
from uqsym.expr import parse_scalar
from uqsym.relations import verify
from uqsym.solve import (admissible_monomials, build_ansatz, enumerate_patterns, impose_ef, impose_straightening,
                         match_families, solve_pattern, straightening_residuals)

PS3 = enumerate_patterns(3)


def pattern(name):
    return PS3.by_name(name)


def test_constant_in_e1_forces_scalars():
    (p,) = [p for p in PS3.zero if p.zero == {("e", 1)}]
    assert p.forced == (-2, -1, -1)
    assert p.k_action() == KAction.from_exps(-2, -1, -1)


def test_counts():
    assert len(PS3.zero) == 7 and sum(1 for p in PS3.zero if not p.zero) == 1
    both = [p for p in PS3.combined if p.zero and p.first]
    assert len(both) == 2
    assert len(PS3.combined) == 11
    with pytest.raises(ValueError):
        enumerate_patterns(1)
    with pytest.raises(KeyError):
        PS3.by_name("case12")


def test_f1_ansatz_has_nine_monomials():
    a = build_ansatz(pattern("case2"), 4)
    assert len(a.image("f", 1).terms) == 9


def test_trivial_ansatz_is_empty():
    a = build_ansatz(pattern("case1"), 4)
    assert a.parameter_count == 0
    v = a.family.vertex(1)
    assert all(p.is_zero() for p in v.e + v.f)
    assert impose_straightening(a).family == a.family
    res = impose_ef(impose_straightening(a))
    assert res.constraints == [] and res.families[0] == a.family


def test_weight_exclusion():
    k = pattern("case10").k_action()
    assert k == KAction.from_exps(1, 1, -2)
    assert (1, 0, 2) not in admissible_monomials(k, "f", 3, 3)
    assert admissible_monomials(k, "f", 3, 3) == [(0, 0, 2)]
    with pytest.raises(ValueError):
        build_ansatz(pattern("case10"), 0)


def test_straightening_case2():
    fam = impose_straightening(build_ansatz(pattern("case2"), 4)).family
    f1, f2, f3 = fam.vertex(1).f
    assert set(f1.terms) == {(2, 0, 0)}
    assert set(f2.terms) == {(1, 1, 0), (0, 1, 2), (0, 3, 0), (0, 0, 3)}
    assert set(f3.terms) == {(1, 0, 1), (0, 1, 2), (0, 2, 1), (0, 0, 3)}
    u1 = f1.coefficient((2, 0, 0))
    assert f2.coefficient((1, 1, 0)) == u1 and f3.coefficient((1, 0, 1)) == u1
    v5 = f2.coefficient((0, 3, 0))
    v3 = f2.coefficient((0, 1, 2))
    assert f3.coefficient((0, 2, 1)) == v5.scale(parse_scalar("qint(3)").scalar())
    assert f3.coefficient((0, 0, 3)) == v3.scale(parse_scalar("-q^-1").scalar())


def test_straightening_case4_ratio():
    fam = impose_straightening(build_ansatz(pattern("case4"), 5)).family
    v = fam.vertex(1)
    a, b = v.e[0].coefficient((3, 0, 0)), v.e[1].coefficient((2, 1, 0))
    assert a and b
    assert a == b * parse_scalar("-q*qint(3)^-1")


def test_ef_case2():
    (fam,) = solve_pattern(pattern("case2"), 4).families
    assert str(fam.vertex(1).f[0]) == "-q*a0^-1*x1^2"
    assert len(fam.free_params()) == 5


def test_ef_case6_core():
    (fam,) = solve_pattern(pattern("case7"), 3).families
    f1 = fam.vertex(1).f[0]
    core = f1.homogeneous_component(1) + f1.homogeneous_component(2)
    assert str(core) == "d1*x3 + b0^-1*x1*x2"
    # the rest is the start of the series in f(x1)
    assert set((f1 - core).terms) == {(1, 0, 2)}
    assert "d1" in fam.free_params() and not fam.params["d1"]


@pytest.mark.parametrize("name", [f"case{i}" for i in range(1, 12)])
def test_round_trip_and_verify(name):
    res = solve_pattern(pattern(name), 4)
    assert res.constraints == []
    (fam,) = res.families
    assert verify(fam).passed
    if name == "case6":
        v, params = catalog.make_vertex("aq3/case6", free=["b0", "dh0"], bind={"d1": 0})
        want = catalog.assemble([(v, params)], ["aq3/case6"])
    elif name == "case8":
        v, params = catalog.make_vertex("aq3/case8", free=["e0", "al0"], bind={"a3": 0})
        want = catalog.assemble([(v, params)], ["aq3/case8"])
    else:
        want = catalog.general_family(f"aq3/{name}")
    assert match_families(fam, want) is not None


@pytest.mark.parametrize("name", [f"case{i}" for i in range(1, 12)])
def test_linear_phase_exact(name):
    a = impose_straightening(build_ansatz(pattern(name), 5))
    assert all(r.is_zero() for r in straightening_residuals(a.family))


def _support(fam):
    v = fam.vertex(1)
    zero, first = set(), set()
    for gen in ("e", "f"):
        for i, p in enumerate(getattr(v, gen), 1):
            for m in p.terms:
                if sum(m) == 0:
                    zero.add((gen, i))
                elif sum(m) == 1:
                    first.add((gen, i, m.index(1) + 1))
    return frozenset(zero), frozenset(first)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_pattern_soundness(n):
    ps = enumerate_patterns(n)
    if n == 2:
        tags = catalog.AQ2_TAGS
    elif n == 3:
        tags = catalog.AQ3_CASE_TAGS + catalog.AQ3_STAR_TAGS + catalog.AQ3_PRIMED_TAGS
    else:
        tags = catalog.aqn_tags(4)
    known = {(p.zero, p.first): p for p in ps.combined}
    for tag in tags:
        fam = catalog.general_family(tag, n)
        key = _support(fam)
        assert key in known, tag
        p = known[key]
        if p.zero or p.first:
            assert p.k_action() == fam.vertex(1).k, tag
