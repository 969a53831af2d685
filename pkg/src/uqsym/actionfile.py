"""Reading and writing action files.

An action file is a YAML document::

    space_rank: 2
    algebra_rank: 1
    parameters:
      - {name: a0, invertible: true}
    vertices:
      - k: ["q^-2", "q^-1"]
        e: ["a0", "0"]
        f: ["-q*a0^-1*x1^2", "-q*a0^-1*x1*x2"]
"""

from __future__ import annotations

from pathlib import Path

import yaml

from .action import ActionFamily, KAction, VertexAction
from .expr import ParseError, parse_expr, parse_scalar
from .qspace import QSpace


class ActionFileError(ParseError):
    """Schema violation in an action file."""


def _k_entry(text, params) -> tuple[int, int]:
    c = parse_scalar(str(text), params)
    if c.params() or not c.is_scalar():
        raise ActionFileError(f"k image {text!r} must be a scalar of the form +-q^k")
    me = c.scalar().monomial_exponent()
    if me is None or abs(me[0]) != 1:
        raise ActionFileError(f"k image {text!r} must be a scalar of the form +-q^k")
    return (1 if me[0] > 0 else -1), me[1]


def _list(v, key, length, where):
    if not isinstance(v, list) or len(v) != length:
        raise ActionFileError(f"{where}: '{key}' must be a list of {length} entries")
    return v


def from_data(doc) -> ActionFamily:
    if not isinstance(doc, dict):
        raise ActionFileError("action file must be a mapping")
    for key in ("space_rank", "algebra_rank", "vertices"):
        if key not in doc:
            raise ActionFileError(f"missing key '{key}'")
    n, m = doc["space_rank"], doc["algebra_rank"]
    if not isinstance(n, int) or not 1 <= n <= 9:
        raise ActionFileError("space_rank must be an integer between 1 and 9")
    if not isinstance(m, int) or m < 1:
        raise ActionFileError("algebra_rank must be a positive integer")
    params = {}
    for p in doc.get("parameters") or []:
        if not isinstance(p, dict) or "name" not in p:
            raise ActionFileError("each parameter needs a name")
        params[str(p["name"])] = bool(p.get("invertible", False))
    sp = QSpace(n)
    verts = _list(doc["vertices"], "vertices", m, "document")
    out = []
    for t, v in enumerate(verts, 1):
        where = f"vertex {t}"
        if not isinstance(v, dict):
            raise ActionFileError(f"{where} must be a mapping")
        ks = [_k_entry(x, params) for x in _list(v.get("k"), "k", n, where)]
        e = [parse_expr(str(x), sp, params) for x in _list(v.get("e"), "e", n, where)]
        f = [parse_expr(str(x), sp, params) for x in _list(v.get("f"), "f", n, where)]
        k = KAction(tuple(s for s, _ in ks), tuple(x for _, x in ks))
        out.append(VertexAction(k, e, f))
    labels = tuple(doc.get("labels") or ())
    return ActionFamily(sp, out, params, labels)


def _k_text(s: int, e: int) -> str:
    t = "1" if e == 0 else ("q" if e == 1 else f"q^{e}")
    return ("-" if s < 0 else "") + t


def to_data(fam: ActionFamily) -> dict:
    doc = {
        "space_rank": fam.n,
        "algebra_rank": fam.m,
        "parameters": [{"name": k, "invertible": v} for k, v in fam.params.items()],
        "vertices": [],
    }
    if fam.labels:
        doc["labels"] = list(fam.labels)
    for v in fam.vertices:
        doc["vertices"].append({
            "k": [_k_text(s, e) for s, e in zip(v.k.signs, v.k.exps)],
            "e": [str(p) for p in v.e],
            "f": [str(p) for p in v.f],
        })
    return doc


def loads(text: str) -> ActionFamily:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ActionFileError(f"not valid YAML: {exc}") from exc
    return from_data(doc)


def dumps(fam: ActionFamily) -> str:
    return yaml.safe_dump(to_data(fam), sort_keys=False, default_flow_style=None, width=1000)


def load(path) -> ActionFamily:
    return loads(Path(path).read_text(encoding="utf-8"))


def dump(fam: ActionFamily, path) -> None:
    Path(path).write_text(dumps(fam), encoding="utf-8")
