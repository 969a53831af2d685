import pytest

from uqsym import actionfile, catalog
from uqsym.cli import main

from strategies import family_by_name


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def emitted(tmp_path, capsys):
    def emit(tag, *extra):
        path = tmp_path / (tag.replace("/", "_") + ".yaml")
        code, _, _ = run(capsys, "catalog", "--emit", tag, "-o", str(path), *extra)
        assert code == 0
        return path
    return emit


def test_verify_emitted(emitted, capsys):
    code, out, _ = run(capsys, "verify", str(emitted("aq2/2")))
    lines = out.splitlines()
    assert code == 0 and lines[-1] == "PASSED"
    assert all(line.endswith(": OK") for line in lines if line.startswith("RELATION"))
    assert lines[-2].endswith(", 0 nonzero")


def test_verify_numeric_q(emitted, capsys):
    path = emitted("aq3/case3")
    assert run(capsys, "--q", "2", "verify", str(path))[0] == 0
    code, out, _ = run(capsys, "--q", "3/2", "verify", "--failures-only", str(path))
    lines = out.splitlines()
    assert code == 0 and len(lines) == 2 and lines[0].endswith(", 0 nonzero") and lines[1] == "PASSED"


def test_verify_broken(tmp_path, capsys):
    path = tmp_path / "broken.yaml"
    path.write_text(actionfile.dumps(catalog.general_family("aq2/2")).replace("tau^-1*x2", "2*tau^-1*x2"))
    code, out, _ = run(capsys, "verify", "--failures-only", str(path))
    assert code == 1
    assert "RELATION ef-commutator(1,1) AT x1: x1" in out.splitlines()
    assert out.splitlines()[-1] == "FAILED"


def test_bind(emitted, capsys):
    path = emitted("aq2/5")
    assert run(capsys, "verify", "--bind", "s=q", "--bind", "a=2", str(path))[0] == 0
    assert run(capsys, "verify", "--bind", "zz=1", str(path))[0] == 2
    assert run(capsys, "verify", "--bind", "s", str(path))[0] == 2


def test_emit_round_trip(capsys):
    for tag in ("aq2/3", "aq3/star2p", "aqn/C/2"):
        code, out, _ = run(capsys, "catalog", "--emit", tag, "--n", "4")
        assert code == 0
        assert actionfile.loads(out) == catalog.general_family(tag, 4)


def test_emit_series(capsys):
    code, out, _ = run(capsys, "catalog", "--emit", "aq3/case4", "--series", "4")
    assert code == 0
    assert actionfile.loads(out) == catalog.make_series_vertex("aq3/case4", 4)


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "--list")
    assert code == 0 and out.splitlines() == catalog.list_ids(4)


def test_constraints(tmp_path, capsys):
    path = tmp_path / "a5b6.yaml"
    from uqsym.action import ActionFamily
    from uqsym.qspace import QSpace
    sp = QSpace(2)
    v1, p1 = catalog.make_vertex("aq2/ast3", free=["s", "t"], suffix="1", space=sp)
    v2, p2 = catalog.make_vertex("aq2/ast4", free=["u", "v"], suffix="2", space=sp)
    actionfile.dump(ActionFamily(sp, [v1, v2], {**p1, **p2}), path)
    code, out, _ = run(capsys, "constraints", str(path))
    assert code == 0
    assert sorted(out.splitlines()) == ["s1 = 0", "t1 = 0", "u2 = 0", "v2 = 0"]
    bad = tmp_path / "broken.yaml"
    actionfile.dump(family_by_name("broken-aq2/2"), bad)
    code, out, _ = run(capsys, "constraints", str(bad))
    assert code == 1 and "unsatisfiable" in out


def test_constraints_none(emitted, capsys):
    assert run(capsys, "constraints", str(emitted("aq2/2")))[1] == "no constraints\n"


def test_enumerate_aq3(capsys):
    code, out, _ = run(capsys, "enumerate", "--m", "3", "aq3")
    lines = out.splitlines()
    assert code == 0
    assert lines[-1] == "total: 5 families, 520 labelings"
    assert lines[0] == "family 1: trivial on every vertex (512 sign labelings)"
    assert sum(line.endswith("2 orientations") for line in lines) == 4


def test_compat_dot(tmp_path, capsys):
    a, b = tmp_path / "a.dot", tmp_path / "b.dot"
    c1, out1, _ = run(capsys, "compat", "aq2", "--dot", str(a))
    c2, out2, _ = run(capsys, "compat", "aq2", "--dot", str(b))
    assert c1 == c2 == 0 and out1 == out2
    assert a.read_bytes() == b.read_bytes()
    assert out1.splitlines()[-1] == "edges: 4"
    code, out, _ = run(capsys, "compat", "aq3", "--tags", "star2", "star3")
    assert code == 0 and "star2 -- star3: Compatible" in out


def test_compat_aqn_needs_rank(capsys):
    assert run(capsys, "compat", "aqn")[0] == 2
    code, out, _ = run(capsys, "compat", "aqn", "--n", "4")
    assert code == 0 and out.splitlines()[-1] == "edges: 10"


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--n", "3", "--pattern", "case2", "--degree", "4")
    assert code == 0 and out.splitlines()[-1] == "1 solutions"
    assert "f(x1) = -q*a0^-1*x1^2" in out
    assert run(capsys, "classify", "--n", "3", "--pattern", "case99")[0] == 2


def test_limit(tmp_path, capsys, emitted):
    path = tmp_path / "row2.yaml"
    actionfile.dump(catalog.theorem_table("T3.1")[1].families[0], path)
    code, out, _ = run(capsys, "limit", str(path))
    assert code == 0 and "h = (-2, -1)" in out and out.splitlines()[-1] == "PASSED"
    assert run(capsys, "limit", str(emitted("aq2/2")))[0] == 2
    assert run(capsys, "limit", "--bind", "tau=3", str(emitted("aq2/2")))[0] == 0
    assert run(capsys, "--q", "2", "limit", str(path))[0] == 2


def test_iso(tmp_path, capsys):
    from uqsym.action import ActionFamily
    normal = tmp_path / "normal.yaml"
    scaled = tmp_path / "scaled.yaml"
    f1 = catalog.family(["aq2/ast3", "aq2/ast4"])
    actionfile.dump(f1, normal)
    bound = [catalog.make_vertex("aq2/ast3", bind={"a": 2})[0], catalog.make_vertex("aq2/ast4", bind={"d": 3})[0]]
    actionfile.dump(ActionFamily(f1.space, bound), scaled)
    assert run(capsys, "iso", str(scaled), str(normal), "--scale", "2", "3") == (0, "isomorphic\n", "")
    code, out, _ = run(capsys, "iso", str(scaled), str(normal), "--scale", "1", "3")
    assert code == 1 and out.startswith("not isomorphic: vertex 1")
    assert run(capsys, "iso", str(scaled), str(normal), "--scale", "1")[0] == 2


def test_exit_codes(tmp_path, capsys):
    assert run(capsys, "verify", str(tmp_path / "missing.yaml"))[0] == 4
    bad = tmp_path / "bad.yaml"
    bad.write_text("space_rank: 2\nalgebra_rank: 1\nvertices:\n  - {k: [1, 1], e: ['x1 +', '0'], f: ['0', '0']}\n")
    code, _, err = run(capsys, "verify", str(bad))
    assert code == 3 and "parse error" in err
    code, _, err = run(capsys, "catalog", "--emit", "aq9/1")
    assert code == 2 and "unknown identifier" in err
    assert run(capsys, "--q", "1", "catalog", "--list")[0] == 2
    assert run(capsys, "--q", "abc", "catalog", "--list")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "enumerate", "aq2", "--m", "0")[0] == 2
    assert run(capsys)[0] == 2
