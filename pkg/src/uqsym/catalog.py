"""Named single-vertex actions and the theorem tables built from them.

Entries are written as expression strings in the text syntax of ``expr``.
Identifiers:

* ``aq2/1`` .. ``aq2/6``: the six U_q(sl(2)) structures on A_q(2);
  ``aq2/ast1`` .. ``aq2/ast4`` are the four used as graph vertices
  (items 1, 2, 5, 6 with the optional parameters switched off).
* ``aq3/star1`` .. ``aq3/star7`` and the primed ``aq3/star2p``, ``star3p``,
  ``star6p``, ``star7p``: the vertex types on A_q(3).
* ``aq3/case1`` .. ``aq3/case11``: the general single-vertex structures on
  A_q(3), one per weight pattern, with their free parameters.
* ``aqn/D``, ``aqn/A/j``, ``aqn/B/j``, ``aqn/C/j``: the families on A_q(n).

Trivial entries take an optional sign suffix such as ``aq3/star1[+-+]``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .action import ActionFamily, KAction, VertexAction
from .coeff import ParamScalar, as_param, qint
from .expr import parse_expr, parse_scalar
from .qspace import QPolynomial, QSpace


class UnknownFamily(KeyError):
    pass


@dataclass(frozen=True)
class Param:
    name: str
    invertible: bool
    default: str  # expression, may mention other parameters


@dataclass(frozen=True)
class Entry:
    key: str
    n: int
    k: tuple
    e: Mapping = field(default_factory=dict)
    f: Mapping = field(default_factory=dict)
    params: tuple = ()
    dot: str = ""
    note: str = ""

    @property
    def trivial(self) -> bool:
        return not self.e and not self.f


def _p(name, inv=False, default=None):
    return Param(name, inv, default if default is not None else ("1" if inv else "0"))


_AQ2 = {
    "1": Entry("aq2/1", 2, (0, 0), dot="ast1"),
    "2": Entry("aq2/2", 2, (1, -1), {2: "tau*x1"}, {1: "tau^-1*x2"}, (_p("tau", True),)),
    "3": Entry("aq2/3", 2, (1, -2), {2: "b"}, {1: "b^-1*x1*x2", 2: "-q*b^-1*x2^2"}, (_p("b", True),)),
    "4": Entry("aq2/4", 2, (2, -1), {1: "-q*c^-1*x1^2", 2: "c^-1*x1*x2"}, {1: "c"}, (_p("c", True),)),
    "5": Entry("aq2/5", 2, (-2, -1), {1: "a"},
               {1: "-q*a^-1*x1^2 + t*x2^4", 2: "-q*a^-1*x1*x2 + s*x2^3"},
               (_p("a", True), _p("t"), _p("s"))),
    "6": Entry("aq2/6", 2, (1, 2), {1: "-q*d^-1*x1*x2 + u*x1^3", 2: "-q*d^-1*x2^2 + v*x1^4"}, {2: "d"},
               (_p("d", True), _p("u"), _p("v"))),
}
_AQ2_ALIAS = {"ast1": "1", "ast2": "2", "ast3": "5", "ast4": "6"}

_STAR2_F1 = "-q*a0^-1*x1^2"
_CASE3_E1 = "-q*f0^-1*x1*x3 + mu1*x1^2*x2 - q^-1*mu2*x1^3 + qint(3)*mu3*x1*x2^2"
_CASE3_E2 = "-q*f0^-1*x2*x3 + mu2*x1^2*x2 + mu3*x2^3 + mu4*x1^3"

_AQ3 = {
    "case1": Entry("aq3/case1", 3, (0, 0, 0)),
    "case2": Entry("aq3/case2", 3, (-2, -1, -1), {1: "a0"}, {
        1: _STAR2_F1,
        2: "-q*a0^-1*x1*x2 + xi1*x2*x3^2 + xi2*x2^3 + xi3*x3^3",
        3: "-q*a0^-1*x1*x3 + xi4*x2*x3^2 + qint(3)*xi2*x2^2*x3 - q^-1*xi1*x3^3"},
        (_p("a0", True), _p("xi1"), _p("xi2"), _p("xi3"), _p("xi4"))),
    "case3": Entry("aq3/case3", 3, (1, 1, 2), {1: _CASE3_E1, 2: _CASE3_E2, 3: "-q*f0^-1*x3^2"}, {3: "f0"},
                   (_p("f0", True), _p("mu1"), _p("mu2"), _p("mu3"), _p("mu4"))),
    "case4": Entry("aq3/case4", 3, (1, -1, 0), {2: "a2*x1"}, {1: "a2^-1*x2"}, (_p("a2", True),)),
    "case5": Entry("aq3/case5", 3, (0, 1, -1), {3: "b3*x2"}, {2: "b3^-1*x3"}, (_p("b3", True),)),
    "case6": Entry("aq3/case6", 3, (1, -2, -1), {2: "b0"}, {
        1: "d1*x3 + b0^-1*x1*x2 + dh0*x1*x3^2",
        2: "-q*b0^-1*x2^2",
        3: "-q*b0^-1*x2*x3 - q*qint(1)*qint(3)^-1*dh0*x3^3"},
        (_p("b0", True), _p("d1"), _p("dh0"))),
    "case8": Entry("aq3/case8", 3, (1, 2, -1), {
        1: "-q*e0^-1*x1*x2 - q*qint(1)*qint(3)^-1*al0*x1^3",
        2: "-q*e0^-1*x2^2",
        3: "a3*x1 + e0^-1*x2*x3 + al0*x1^2*x3"}, {2: "e0"},
        (_p("e0", True), _p("a3"), _p("al0"))),
    "case10": Entry("aq3/case10", 3, (1, 1, -2), {3: "c0"},
                    {1: "c0^-1*x1*x3", 2: "c0^-1*x2*x3", 3: "-q*c0^-1*x3^2"}, (_p("c0", True),)),
    "case11": Entry("aq3/case11", 3, (2, -1, -1), {1: "-q*d0^-1*x1^2", 2: "d0^-1*x1*x2", 3: "d0^-1*x1*x3"},
                    {1: "d0"}, (_p("d0", True),)),
    "star1": Entry("aq3/star1", 3, (0, 0, 0), dot="star1"),
    "star2": Entry("aq3/star2", 3, (-2, -1, -1), {1: "a0"},
                   {1: _STAR2_F1, 2: "-q*a0^-1*x1*x2", 3: "-q*a0^-1*x1*x3"}, (_p("a0", True),), dot="star2"),
    "star3": Entry("aq3/star3", 3, (1, 1, 2), {1: "-q*f0^-1*x1*x3", 2: "-q*f0^-1*x2*x3", 3: "-q*f0^-1*x3^2"},
                   {3: "f0"}, (_p("f0", True),), dot="star3"),
    "star4": Entry("aq3/star4", 3, (1, -1, 0), {2: "a2*x1"}, {1: "a2^-1*x2"}, (_p("a2", True),), dot="star4"),
    "star5": Entry("aq3/star5", 3, (0, 1, -1), {3: "b3*x2"}, {2: "b3^-1*x3"}, (_p("b3", True),), dot="star5"),
    "star6": Entry("aq3/star6", 3, (1, -2, -1), {2: "b0"},
                   {1: "b0^-1*x1*x2", 2: "-q*b0^-1*x2^2", 3: "-q*b0^-1*x2*x3"}, (_p("b0", True),), dot="star6"),
    "star7": Entry("aq3/star7", 3, (1, 2, -1), {1: "-q*e0^-1*x1*x2", 2: "-q*e0^-1*x2^2", 3: "e0^-1*x2*x3"},
                   {2: "e0"}, (_p("e0", True),), dot="star7"),
    "star2p": Entry("aq3/star2p", 3, (-2, -1, -1), {1: "a0"},
                    {1: _STAR2_F1, 2: "-q*a0^-1*x1*x2", 3: "-q*a0^-1*x1*x3 + xi4*x2*x3^2"},
                    (_p("a0", True), _p("xi4", default="-q*a0^-1")), dot="star2p",
                    note="xi4 defaults to the value paired with star7p at a3 = e0 = 1"),
    "star3p": Entry("aq3/star3p", 3, (1, 1, 2),
                    {1: "-q*f0^-1*x1*x3 + mu1*x1^2*x2", 2: "-q*f0^-1*x2*x3", 3: "-q*f0^-1*x3^2"}, {3: "f0"},
                    (_p("f0", True), _p("mu1", default="-q*f0^-1")), dot="star3p",
                    note="mu1 defaults to the value paired with star6p at d1 = b0 = 1"),
    "star6p": Entry("aq3/star6p", 3, (1, -2, -1), {2: "b0"},
                    {1: "d1*x3 + b0^-1*x1*x2", 2: "-q*b0^-1*x2^2", 3: "-q*b0^-1*x2*x3"},
                    (_p("b0", True), _p("d1", default="1")), dot="star6p"),
    "star7p": Entry("aq3/star7p", 3, (1, 2, -1),
                    {1: "-q*e0^-1*x1*x2", 2: "-q*e0^-1*x2^2", 3: "a3*x1 + e0^-1*x2*x3"}, {2: "e0"},
                    (_p("e0", True), _p("a3", default="1")), dot="star7p"),
}
_AQ3_ALIAS = {"case7": "case6", "case9": "case8"}

AQ2_GRAPH_TAGS = ("aq2/ast1", "aq2/ast2", "aq2/ast3", "aq2/ast4")
AQ2_TAGS = tuple(f"aq2/{i}" for i in range(1, 7))
AQ3_STAR_TAGS = tuple(f"aq3/star{i}" for i in range(1, 8))
AQ3_PRIMED_TAGS = ("aq3/star2p", "aq3/star3p", "aq3/star6p", "aq3/star7p")
AQ3_CASE_TAGS = tuple(f"aq3/case{i}" for i in (1, 2, 3, 4, 5, 6, 8, 10, 11))


def aqn_tags(n: int) -> tuple:
    return (("aqn/D",) + tuple(f"aqn/A/{j}" for j in range(1, n + 1))
            + tuple(f"aqn/B/{j}" for j in range(1, n + 1))
            + tuple(f"aqn/C/{j}" for j in range(1, n)))


def _aqn_entry(kind: str, j: int, n: int) -> Entry:
    if kind == "D":
        return Entry("aqn/D", n, (0,) * n, dot="D")
    if not 1 <= j <= (n - 1 if kind == "C" else n):
        raise UnknownFamily(f"aqn/{kind}/{j} does not exist for n = {n}")
    e, f = {}, {}
    if kind == "A":
        k = tuple(1 if i < j else (-2 if i == j else -1) for i in range(1, n + 1))
        a = f"a{j}"
        e[j] = a
        for i in range(1, n + 1):
            if i < j:
                f[i] = f"{a}^-1*x{i}*x{j}"
            elif i == j:
                f[i] = f"-q*{a}^-1*x{j}^2"
            else:
                f[i] = f"-q*{a}^-1*x{j}*x{i}"
        return Entry(f"aqn/A/{j}", n, k, e, f, (_p(a, True),), dot=f"A{j}")
    if kind == "B":
        k = tuple(1 if i < j else (2 if i == j else -1) for i in range(1, n + 1))
        b = f"b{j}"
        f[j] = b
        for i in range(1, n + 1):
            if i < j:
                e[i] = f"-q*{b}^-1*x{i}*x{j}"
            elif i == j:
                e[i] = f"-q*{b}^-1*x{j}^2"
            else:
                e[i] = f"{b}^-1*x{j}*x{i}"
        return Entry(f"aqn/B/{j}", n, k, e, f, (_p(b, True),), dot=f"B{j}")
    if kind == "C":
        k = tuple(1 if i == j else (-1 if i == j + 1 else 0) for i in range(1, n + 1))
        c = f"c{j}"
        return Entry(f"aqn/C/{j}", n, k, {j + 1: f"{c}*x{j}"}, {j: f"{c}^-1*x{j + 1}"},
                     (_p(c, True),), dot=f"C{j}")
    raise UnknownFamily(f"unknown family kind {kind!r}")


@dataclass(frozen=True)
class FamilyTag:
    """A catalog entry plus sign choice, rank and parameter bindings."""

    id: str
    n: int | None = None
    signs: tuple | None = None
    bindings: tuple = ()

    @property
    def name(self) -> str:
        return self.id.split("/", 1)[1]

    @property
    def space(self) -> str:
        return self.id.split("/", 1)[0]

    def __str__(self):
        s = self.id
        if self.signs and any(x < 0 for x in self.signs):
            s += "[" + "".join("+" if x > 0 else "-" for x in self.signs) + "]"
        return s


_SIGNS = re.compile(r"^(.*)\[([+-]+)\]$")


def parse_tag(tag, n: int | None = None) -> FamilyTag:
    if isinstance(tag, FamilyTag):
        return tag if n is None or tag.n is not None else FamilyTag(tag.id, n, tag.signs, tag.bindings)
    m = _SIGNS.match(tag)
    signs = None
    if m:
        tag, signs = m.group(1), tuple(1 if c == "+" else -1 for c in m.group(2))
    return FamilyTag(tag, n, signs)


def entry(tag, n: int | None = None) -> Entry:
    t = parse_tag(tag, n)
    space, _, name = t.id.partition("/")
    if space == "aq2":
        key = _AQ2_ALIAS.get(name, name)
        if key not in _AQ2:
            raise UnknownFamily(t.id)
        ent = _AQ2[key]
        return Entry(ent.key, ent.n, ent.k, ent.e, ent.f, ent.params, name if name in _AQ2_ALIAS else ent.dot or name)
    if space == "aq3":
        key = _AQ3_ALIAS.get(name, name)
        if key not in _AQ3:
            raise UnknownFamily(t.id)
        ent = _AQ3[key]
        return Entry(f"aq3/{name}", ent.n, ent.k, ent.e, ent.f, ent.params, ent.dot or name, ent.note)
    if space == "aqn":
        nn = t.n if t.n is not None else n
        if nn is None:
            raise UnknownFamily(f"{t.id} needs a rank n")
        parts = name.split("/")
        if parts == ["D"]:
            return _aqn_entry("D", 0, nn)
        if len(parts) == 2 and parts[1].isdigit():
            return _aqn_entry(parts[0], int(parts[1]), nn)
    raise UnknownFamily(t.id)


def list_ids(n: int = 4) -> list[str]:
    out = [f"aq2/{k}" for k in _AQ2] + [f"aq2/{a}" for a in _AQ2_ALIAS]
    out += [f"aq3/{k}" for k in _AQ3] + [f"aq3/{a}" for a in _AQ3_ALIAS]
    out += list(aqn_tags(n))
    return out


def make_vertex(tag, n: int | None = None, free: Sequence[str] = (), bind: Mapping | None = None,
                suffix: str = "", space: QSpace | None = None):
    """Instantiate one vertex.

    Returns ``(VertexAction, params)`` where ``params`` maps the names left
    symbolic to their invertibility.  Parameters listed in ``free`` stay
    symbolic (renamed with ``suffix``), ``bind`` fixes values, and every other
    parameter takes its default: 1 for required invertible ones, 0 for
    optional ones unless the entry says otherwise.
    """
    t = parse_tag(tag, n)
    ent = entry(t, n)
    decl = {p.name: p.invertible for p in ent.params}
    unknown = (set(free) | set(bind or {})) - set(decl)
    if unknown:
        raise UnknownFamily(f"{ent.key} has no parameters {sorted(unknown)}")
    bind = dict(bind or {})
    for name, val in t.bindings:
        bind.setdefault(name, val)
    space = space or QSpace(ent.n)
    if space.n != ent.n:
        raise ValueError(f"{ent.key} lives on A_q({ent.n})")
    # values for every non-free parameter, possibly in terms of others
    values = {}
    for p in ent.params:
        if p.name in free:
            values[p.name] = ParamScalar.param(p.name + suffix, p.invertible)
    for p in ent.params:
        if p.name in free:
            continue
        v = bind.get(p.name, p.default)
        v = parse_scalar(v, decl) if isinstance(v, str) else as_param(v)
        values[p.name] = v
    for _ in range(len(values) + 1):
        changed = False
        for name, v in values.items():
            if name in free:
                continue
            deps = v.params() & (set(decl) - set(free))
            if deps:
                values[name] = _subst(v, {d: values[d] for d in deps})
                changed = True
        if not changed:
            break
    sub = {name: v for name, v in values.items()}

    def img(text):
        p = parse_expr(text, QSpace(ent.n), decl)
        p = p.substitute(sub)
        return p.substitute(None, space.qval) if space.qval is not None else p

    signs = t.signs or (1,) * ent.n
    if len(signs) != ent.n:
        raise ValueError(f"{ent.key} needs {ent.n} signs")
    if t.signs and any(s < 0 for s in t.signs) and not ent.trivial:
        raise ValueError("sign choices only apply to trivial families")
    k = KAction(signs, ent.k)
    e = [img(ent.e[i]) if i in ent.e else space.zero() for i in range(1, ent.n + 1)]
    f = [img(ent.f[i]) if i in ent.f else space.zero() for i in range(1, ent.n + 1)]
    params = {p.name + suffix: p.invertible for p in ent.params if p.name in free}
    return VertexAction(k, e, f), params


def _subst(v: ParamScalar, b):
    from .coeff import substitute
    return substitute(v, b)


def assemble(vertices, labels: Sequence[str] = ()) -> ActionFamily:
    """Combine vertices (``VertexAction`` or ``(VertexAction, params)``) into a family."""
    verts, params = [], {}
    for v in vertices:
        if isinstance(v, tuple):
            v, ps = v
            params.update(ps)
        verts.append(v)
    if not verts:
        raise ValueError("no vertices")
    space = verts[0].e[0].space
    return ActionFamily(space, verts, params, tuple(labels))


def family(tags: Sequence, n: int | None = None, q_value=None) -> ActionFamily:
    """Family with default parameters for a sequence of tags."""
    space = None
    verts = []
    for t in tags:
        ent = entry(t, n)
        space = space or QSpace(ent.n, q_value)
        verts.append(make_vertex(t, n, space=space))
    return assemble(verts, [str(parse_tag(t)) for t in tags])


def general_family(tag, n: int | None = None) -> ActionFamily:
    """Single-vertex family with every parameter of the entry left symbolic."""
    ent = entry(tag, n)
    v = make_vertex(tag, n, free=[p.name for p in ent.params])
    return assemble([v], [str(parse_tag(tag))])


def sign_variants(tag: str, n: int | None = None) -> list[str]:
    """All sign choices of a trivial entry, all-plus first."""
    ent = entry(tag, n)
    if not ent.trivial:
        return [tag]
    base = parse_tag(tag).id
    out = []
    for signs in itertools.product("+-", repeat=ent.n):
        s = "".join(signs)
        out.append(base if "-" not in s else f"{base}[{s}]")
    return out


def catalog_tags(space: str, n: int | None = None, signs: bool = True) -> list[str]:
    """Vertex types used for labeling enumeration on a given space."""
    if space == "aq2":
        base = list(AQ2_TAGS)
    elif space == "aq3":
        base = list(AQ3_STAR_TAGS + AQ3_PRIMED_TAGS)
    elif space == "aqn":
        base = list(aqn_tags(n))
    else:
        raise UnknownFamily(space)
    out = []
    for t in base:
        out += sign_variants(t, n) if signs else [t]
    return out


def dot_name(tag, n: int | None = None) -> str:
    return entry(tag, n).dot or parse_tag(tag).name.replace("/", "")


# -- theorem tables -------------------------------------------------------------

@dataclass
class TableRow:
    """One row: its vertex tags (orientation i = vertex 1) and expected limit."""

    label: str
    tags: tuple
    families: list
    limit: dict | None = None


# Expected classical images per row, for the orientation (i, j).
# Each vertex: h eigenvalues, then e and f images on x1..xn.
_T31_LIMITS = {
    2: ({"h": (-2, -1), "e": ("1", "0"), "f": ("-x1^2", "-x1*x2")},
        {"h": (1, -1), "e": ("0", "x1"), "f": ("x2", "0")}),
    3: ({"h": (1, 2), "e": ("-x1*x2", "-x2^2"), "f": ("0", "1")},
        {"h": (1, -1), "e": ("0", "x1"), "f": ("x2", "0")}),
    4: ({"h": (-2, -1), "e": ("1", "0"), "f": ("-x1^2", "-x1*x2")},
        {"h": (1, 2), "e": ("-x1*x2", "-x2^2"), "f": ("0", "1")}),
}
_T31_TAGS = {2: ("aq2/ast3", "aq2/ast2"), 3: ("aq2/ast4", "aq2/ast2"), 4: ("aq2/ast3", "aq2/ast4")}

_T411_TAGS = {
    2: ("aq3/star2", "aq3/star3"), 3: ("aq3/star2", "aq3/star4"), 4: ("aq3/star3", "aq3/star5"),
    5: ("aq3/star4", "aq3/star5"), 6: ("aq3/star4", "aq3/star7"), 7: ("aq3/star5", "aq3/star6"),
    8: ("aq3/star2p", "aq3/star7p"), 9: ("aq3/star3p", "aq3/star6p"),
}
_T411_LIMITS = {
    2: ({"h": (-2, -1, -1), "e": ("1", "0", "0"), "f": ("-x1^2", "-x1*x2", "-x1*x3")},
        {"h": (1, 1, 2), "e": ("-x1*x3", "-x2*x3", "-x3^2"), "f": ("0", "0", "1")}),
    3: ({"h": (-2, -1, -1), "e": ("1", "0", "0"), "f": ("-x1^2", "-x1*x2", "-x1*x3")},
        {"h": (1, -1, 0), "e": ("0", "x1", "0"), "f": ("x2", "0", "0")}),
    4: ({"h": (1, 1, 2), "e": ("-x1*x3", "-x2*x3", "-x3^2"), "f": ("0", "0", "1")},
        {"h": (0, 1, -1), "e": ("0", "0", "x2"), "f": ("0", "x3", "0")}),
    5: ({"h": (1, -1, 0), "e": ("0", "x1", "0"), "f": ("x2", "0", "0")},
        {"h": (0, 1, -1), "e": ("0", "0", "x2"), "f": ("0", "x3", "0")}),
    6: ({"h": (1, -1, 0), "e": ("0", "x1", "0"), "f": ("x2", "0", "0")},
        {"h": (1, 2, -1), "e": ("-x1*x2", "-x2^2", "x2*x3"), "f": ("0", "1", "0")}),
    7: ({"h": (0, 1, -1), "e": ("0", "0", "x2"), "f": ("0", "x3", "0")},
        {"h": (1, -2, -1), "e": ("0", "1", "0"), "f": ("x1*x2", "-x2^2", "-x2*x3")}),
    8: ({"h": (-2, -1, -1), "e": ("1", "0", "0"), "f": ("-x1^2", "-x1*x2", "-x1*x3 - x2*x3^2")},
        {"h": (1, 2, -1), "e": ("-x1*x2", "-x2^2", "x1 + x2*x3"), "f": ("0", "1", "0")}),
    9: ({"h": (1, 1, 2), "e": ("-x1*x3 - x1^2*x2", "-x2*x3", "-x3^2"), "f": ("0", "0", "1")},
        {"h": (1, -2, -1), "e": ("0", "1", "0"), "f": ("x3 + x1*x2", "-x2^2", "-x2*x3")}),
}

_T412_TAGS = {
    2: ("aq3/star4", "aq3/star2", "aq3/star3"),
    3: ("aq3/star4", "aq3/star5", "aq3/star3"),
    4: ("aq3/star2", "aq3/star3", "aq3/star5"),
    5: ("aq3/star2", "aq3/star4", "aq3/star5"),
}


def _trivial_rows(tag: str, m: int, n: int | None = None) -> list:
    variants = sign_variants(tag, n)
    return [family(c, n) for c in itertools.product(variants, repeat=m)]


def _oriented(tags: tuple, n: int | None = None) -> list:
    fams = [family(tags, n)]
    if tuple(reversed(tags)) != tags:
        fams.append(family(tuple(reversed(tags)), n))
    return fams


def _trivial_limit(nv: int, m: int) -> tuple:
    z = tuple("0" for _ in range(nv))
    return tuple({"h": (0,) * nv, "e": z, "f": z} for _ in range(m))


def t53_chains(m: int, n: int) -> list[tuple]:
    """Nontrivial chains of vertex types on A_q(n) for m >= 2 vertices, one orientation each."""
    out = []
    # A_i - C_i - ... - C_{i+m-2}
    for i in range(1, n):
        if i + m - 2 <= n - 1:
            out.append((f"aqn/A/{i}",) + tuple(f"aqn/C/{i + s}" for s in range(m - 1)))
    # C_i - ... - C_{i+m-2} - B_{i+m-1}
    for i in range(1, n):
        if i + m - 1 <= n:
            out.append(tuple(f"aqn/C/{i + s}" for s in range(m - 1)) + (f"aqn/B/{i + m - 1}",))
    # C_i - ... - C_{i+m-1}
    for i in range(1, n):
        if i + m - 1 <= n - 1:
            out.append(tuple(f"aqn/C/{i + s}" for s in range(m)))
    # A_1 - B_n - C_{n-1} - ... - C_{n+2-m}
    if n + 2 - m >= 1:
        out.append(("aqn/A/1", f"aqn/B/{n}") + tuple(f"aqn/C/{n - 1 - s}" for s in range(m - 2)))
    # B_n - A_1 - C_1 - ... - C_{m-2}
    if m - 2 <= n - 1:
        out.append((f"aqn/B/{n}", "aqn/A/1") + tuple(f"aqn/C/{1 + s}" for s in range(m - 2)))
    return out


def theorem_table(name: str, m: int | None = None, n: int | None = None) -> list[TableRow]:
    """Families listed by a classification theorem.

    ``T3.1``: m = 2 on A_q(2); ``T4.11``: m = 2 on A_q(3); ``T4.12``: m = 3 on
    A_q(3); ``T5.3``: chains of m vertices on A_q(n).  Every row lists all
    orientations (and all sign choices for the trivial row).
    """
    if name == "T3.1":
        rows = [TableRow("1", ("aq2/1", "aq2/1"), _trivial_rows("aq2/1", 2), _trivial_limit(2, 2))]
        for r, tags in _T31_TAGS.items():
            rows.append(TableRow(str(r), tags, _oriented(tags), _T31_LIMITS[r]))
        return rows
    if name == "T4.11":
        rows = [TableRow("1", ("aq3/star1", "aq3/star1"), _trivial_rows("aq3/star1", 2), _trivial_limit(3, 2))]
        for r, tags in _T411_TAGS.items():
            rows.append(TableRow(str(r), tags, _oriented(tags), _T411_LIMITS[r]))
        return rows
    if name == "T4.12":
        rows = [TableRow("1", ("aq3/star1",) * 3, _trivial_rows("aq3/star1", 3))]
        for r, tags in _T412_TAGS.items():
            rows.append(TableRow(str(r), tags, _oriented(tags)))
        return rows
    if name == "T5.3":
        if m is None or n is None:
            raise ValueError("T5.3 needs m and n")
        rows = [TableRow("D", ("aqn/D",) * m, [])]
        rows[0].families = None  # too many sign choices to materialize eagerly
        for c in t53_chains(m, n):
            rows.append(TableRow("-".join(x.split("/", 1)[1].replace("/", "") for x in c), c, _oriented(c, n)))
        return rows
    raise ValueError(f"unknown table {name!r}")


from .series import make_series_vertex  # noqa: E402,F401
