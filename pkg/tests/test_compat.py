import pytest
from hypothesis import given, strategies as st

from uqsym import catalog
from uqsym.coeff import format_param
from uqsym.compat import (PairCache, SpaceMismatch, Status, build_graph, check_pair, enumerate_labelings,
                          export_dot)
from uqsym.expr import parse_expr
from uqsym.qspace import QSpace, RankMismatch
from uqsym.relations import verify

from test_acceptance import diagram_predicate


def vertex(tag, free=(), suffix="", n=None):
    sp = QSpace(catalog.entry(tag, n).n)
    return catalog.make_vertex(tag, n, free=list(free), suffix=suffix, space=sp)


def test_star2_star3_compatible():
    r = check_pair(vertex("aq3/star2"), vertex("aq3/star3"))
    assert r.status is Status.COMPATIBLE and r.witness is None and str(r) == "Compatible"


def test_a2_b5_conditional():
    r = check_pair(vertex("aq2/2"), vertex("aq2/5", ["s", "t"], "2"))
    assert r.status is Status.CONDITIONAL
    assert sorted(format_param(c) for c in r.constraints) == ["s2", "t2"]
    assert str(r) == "Conditional: s2 = 0, t2 = 0" or str(r) == "Conditional: t2 = 0, s2 = 0"


def test_a5_b6_witness():
    x, px = vertex("aq2/5")
    y, py = vertex("aq2/6", ["u"], "2")
    sp = x.e[0].space
    term = parse_expr("(q^-6 - q^-3)*u2*x1^3", sp, {"u2": False})
    r = check_pair((x, px), (y, py))
    assert r.status is Status.CONDITIONAL
    from uqsym.action import ActionFamily
    from uqsym.relations import RelationId
    rep = verify(ActionFamily(sp, (x, y), {**px, **py}), [RelationId("k-e-conjugation", 1, 2)])
    res = rep.residuals[(RelationId("k-e-conjugation", 1, 2), 1)]
    assert res.coefficient((3, 0)) == term.coefficient((3, 0))


def test_self_pair_fails_on_k():
    r = check_pair(vertex("aq3/star4"), vertex("aq3/star4"))
    assert r.status is Status.INCOMPATIBLE
    assert r.witness[0].kind.startswith("k-")


def test_check_pair_errors():
    with pytest.raises(RankMismatch):
        check_pair(vertex("aq2/2"), vertex("aq3/star4"))
    with pytest.raises(ValueError):
        check_pair(vertex("aq2/2"), vertex("aq2/2"), "sideways")
    with pytest.raises(SpaceMismatch):
        build_graph(["aq2/2", "aq3/star4"])


def test_export_empty():
    g = build_graph([])
    assert export_dot(g) == "graph compat {\n}\n"


def test_export_w1():
    text = export_dot(build_graph(list(catalog.AQ2_GRAPH_TAGS)))
    lines = text.splitlines()
    assert "  ast1 -- ast1;" in lines and "  ast2 -- ast3;" in lines
    assert sum(" -- " in line for line in lines) == 4
    assert text == export_dot(build_graph(list(catalog.AQ2_GRAPH_TAGS)))


def test_export_conditional_label():
    g = build_graph(["aq3/star2p", "aq3/star7p"])
    g.results[(0, 1)] = check_pair(vertex("aq3/star2p", ["xi4"]), vertex("aq3/star7p"))
    assert g.results[(0, 1)].status is Status.CONDITIONAL
    assert '  star2p -- star7p [label="' in export_dot(g)


def test_export_r26_edge_count():
    n = 4
    tags = list(catalog.aqn_tags(n))
    names = [catalog.dot_name(t, n) for t in tags]
    pred = diagram_predicate(n)
    want = sum(pred(names[i], names[j]) for i in range(len(names)) for j in range(i, len(names)))
    got = sum(" -- " in line for line in export_dot(build_graph(tags, n)).splitlines())
    assert got == want == 10


_SIDES = [("aq2/2", ["tau"]), ("aq2/3", ["b"]), ("aq2/5", ["a", "s", "t"]), ("aq2/6", ["d", "u", "v"]),
          ("aq2/1", []), ("aq2/4", ["c"])]
_SIDES3 = [("aq3/star2p", ["a0", "xi4"]), ("aq3/star7p", ["e0", "a3"]), ("aq3/star3p", ["f0", "mu1"]),
           ("aq3/star6p", ["b0", "d1"]), ("aq3/star4", []), ("aq3/star5", ["b3"]), ("aq3/star1", [])]


@given(st.sampled_from([_SIDES, _SIDES3]).flatmap(lambda s: st.tuples(st.sampled_from(s), st.sampled_from(s))),
       st.sampled_from(["adjacent", "distant"]))
def test_pair_symmetry(sides, mode):
    (t1, f1), (t2, f2) = sides
    x, y = vertex(t1, f1, "1"), vertex(t2, f2, "2")
    a, b = check_pair(x, y, mode), check_pair(y, x, mode)
    assert (a.status is Status.COMPATIBLE) == (not a.constraints)
    assert a.status is b.status
    assert set(a.constraints) == set(b.constraints)


@pytest.mark.parametrize("space", ["aq2", "aq3"])
def test_two_tuples_match_graph(space):
    tags = catalog.catalog_tags(space)
    cache = PairCache()
    labs = set(enumerate_labelings(2, tags, cache=cache))
    g = build_graph(tags, cache=cache)
    single = {t for t in tags if cache.single(t)}
    for (i, j), r in g.results.items():
        for a, b in {(tags[i], tags[j]), (tags[j], tags[i])}:
            expect = r.status is Status.COMPATIBLE and a in single and b in single
            assert ((a, b) in labs) == expect, (a, b, str(r))


def test_distant_rejections_have_distant_witness():
    rej = []
    enumerate_labelings(3, catalog.catalog_tags("aq3"), rejections=rej)
    assert rej
    for r in rej:
        a, b = r.pair
        assert b - a > 1
        rid = r.result.witness[0]
        assert abs(rid.i - rid.j) > 1


def test_enumeration_examples():
    labs = enumerate_labelings(3, catalog.catalog_tags("aq2"))
    assert len(labs) == 64 and all(all(t.startswith("aq2/1") for t in lab) for lab in labs)
    with pytest.raises(ValueError):
        enumerate_labelings(0, ["aq2/1"])
    assert enumerate_labelings(2, []) == []
