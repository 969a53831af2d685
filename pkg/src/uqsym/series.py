"""Series solutions of the straightening equations on A_q(3).

For the patterns with a degree-1 support or a single constant, the
straightening equations alone admit infinite families of higher-degree
terms.  Each family below is one free coefficient (its base) together with
dependent coefficients fixed by ratio laws ``X / Y = R(indices)``.  Families
are homogeneous, so truncating at a total degree keeps the equations exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Mapping

from .action import ActionFamily, KAction, VertexAction
from .coeff import ONE, ParamScalar, QScalar, qint
from .expr import parse_expr, parse_scalar
from .qspace import QSpace


def Q(k: int) -> QScalar:
    return QScalar.qpow(k)


def I(k: int) -> QScalar:
    return qint(k)


@dataclass(frozen=True)
class Member:
    gen: str
    i: int
    mono: Callable  # indices -> exponent tuple


@dataclass(frozen=True)
class SeriesFamily:
    base: str
    indices: tuple  # names, e.g. ("m", "p")
    members: Mapping  # coefficient name -> Member
    ratios: tuple  # (X, Y, fn) meaning X / Y = fn(**idx)
    when: Callable = lambda **k: True

    def relative(self, idx: dict) -> dict:
        """Each member's coefficient divided by the base coefficient."""
        rel = {self.base: ONE}
        pending = list(self.ratios)
        while pending:
            rest = []
            for x, y, fn in pending:
                if x in rel and y not in rel:
                    rel[y] = rel[x] / fn(**idx)
                elif y in rel and x not in rel:
                    rel[x] = rel[y] * fn(**idx)
                elif x not in rel and y not in rel:
                    rest.append((x, y, fn))
            if len(rest) == len(pending):
                raise ValueError(f"ratios of family {self.base} do not connect")
            pending = rest
        return rel

    def instances(self, degree_bound: int):
        for vals in itertools.product(range(degree_bound + 1), repeat=len(self.indices)):
            idx = dict(zip(self.indices, vals))
            if not self.when(**idx):
                continue
            monos = {name: tuple(mb.mono(**idx)) for name, mb in self.members.items()}
            if any(e < 0 for m in monos.values() for e in m):
                continue
            degs = {sum(m) for m in monos.values()}
            if len(degs) != 1:
                raise ValueError(f"family {self.base} is not homogeneous at {idx}")
            if degs.pop() > degree_bound:
                continue
            yield idx, monos


@dataclass(frozen=True)
class SeriesSpec:
    key: str
    k: tuple
    core_e: Mapping
    core_f: Mapping
    core_params: tuple  # (name, invertible)
    families: tuple


def M(gen, i, fn):
    return Member(gen, i, fn)


_CASE4 = SeriesSpec(
    "aq3/case4", (1, -1, 0), {2: "a2*x1"}, {1: "c1*x2"}, (("a2", True), ("c1", True)),
    (
        SeriesFamily("a", ("m", "p"), {
            "a": M("e", 1, lambda m, p: (m + 3, m, p)),
            "b": M("e", 2, lambda m, p: (m + 2, m + 1, p)),
            "c": M("e", 3, lambda m, p: (m + 2, m, p + 1))},
            (("a", "b", lambda m, p: -I(m + p + 1) / (Q(p - 1) * I(m + 3 - p))),
             ("b", "c", lambda m, p: Q(p - 1) * I(m + 3 - p) / I(2 * m + 2))),
            when=lambda m, p: p != m + 3),
        SeriesFamily("d", ("m",), {
            "d": M("e", 1, lambda m: (m + 3, m, m + 3)),
            "e": M("e", 3, lambda m: (m + 2, m, m + 4))},
            (("d", "e", lambda m: -I(2 * m + 4) / I(2 * m + 2)),)),
        SeriesFamily("dd", ("m", "p"), {
            "dd": M("f", 1, lambda m, p: (m + 1, m + 2, p)),
            "ee": M("f", 2, lambda m, p: (m, m + 3, p)),
            "gg": M("f", 3, lambda m, p: (m, m + 2, p + 1))},
            (("dd", "ee", lambda m, p: -I(m + p + 3) / (Q(p + 1) * I(m + 1 - p))),
             ("dd", "gg", lambda m, p: -I(m + p + 3) / (Q(1) * I(2 * m + 2)))),
            when=lambda m, p: p != m + 1),
        SeriesFamily("h", ("m",), {
            "h": M("f", 1, lambda m: (m + 1, m + 2, m + 1)),
            "g": M("f", 3, lambda m: (m, m + 2, m + 2))},
            (("h", "g", lambda m: -I(2 * m + 4) / (Q(1) * I(2 * m + 2))),)),
    ))

_CASE5 = SeriesSpec(
    "aq3/case5", (0, 1, -1), {3: "b3*x2"}, {2: "d2*x3"}, (("b3", True), ("d2", True)),
    (
        SeriesFamily("at", ("m", "p"), {
            "at": M("e", 1, lambda m, p: (p + 1, m + 2, m)),
            "bt": M("e", 2, lambda m, p: (p, m + 3, m)),
            "ct": M("e", 3, lambda m, p: (p, m + 2, m + 1))},
            (("at", "bt", lambda m, p: I(2 * m + 2) / (Q(p) * I(m - p + 1))),
             ("at", "ct", lambda m, p: -Q(1) * I(2 * m + 2) / I(m + p + 3))),
            when=lambda m, p: p != m + 1),
        SeriesFamily("am", ("m",), {
            "am": M("e", 1, lambda m: (m + 2, m + 2, m)),
            "cm": M("e", 3, lambda m: (m + 1, m + 2, m + 1))},
            (("am", "cm", lambda m: -Q(1) * I(2 * m + 2) / I(2 * m + 4)),)),
        SeriesFamily("dt", ("m", "p"), {
            "dt": M("f", 1, lambda m, p: (p + 1, m, m + 2)),
            "et": M("f", 2, lambda m, p: (p, m + 1, m + 2)),
            "gt": M("f", 3, lambda m, p: (p, m, m + 3))},
            (("dt", "et", lambda m, p: I(2 * m + 2) / (Q(p - 1) * I(m - p + 3))),
             ("dt", "gt", lambda m, p: -I(2 * m + 2) / I(m + p + 1))),
            when=lambda m, p: p != m + 3),
        SeriesFamily("dm", ("m",), {
            "dm": M("f", 1, lambda m: (m + 4, m, m + 2)),
            "gm": M("f", 3, lambda m: (m + 3, m, m + 3))},
            (("dm", "gm", lambda m: -I(2 * m + 2) / I(2 * m + 4)),)),
    ))

_CASE6 = SeriesSpec(
    "aq3/case6", (1, -2, -1), {2: "b0"}, {1: "d1*x3"}, (("b0", True), ("d1", False)),
    (
        SeriesFamily("sigma", (), {
            "sigma": M("e", 1, lambda: (3, 0, 0)),
            "rho": M("e", 2, lambda: (2, 1, 0)),
            "tau": M("e", 3, lambda: (2, 0, 1))},
            (("sigma", "rho", lambda: -Q(2) / I(4)),
             ("sigma", "tau", lambda: -Q(1) / I(3)))),
        SeriesFamily("sigman", ("n",), {
            "sigman": M("e", 1, lambda n: (2 * n + 5, n + 1, 0)),
            "rhon": M("e", 2, lambda n: (2 * n + 4, n + 2, 0)),
            "taun": M("e", 3, lambda n: (2 * n + 4, n + 1, 1))},
            (("sigman", "rhon", lambda n: -Q(2) * I(n + 2) / I(2 * n + 6)),
             ("sigman", "taun", lambda n: -Q(1) * I(n + 2) / I(3 * n + 6)))),
        SeriesFamily("sigmap", ("p",), {
            "sigmap": M("e", 1, lambda p: (p + 4, 0, p + 1)),
            "rhop": M("e", 2, lambda p: (p + 3, 1, p + 1)),
            "taup": M("e", 3, lambda p: (p + 3, 0, p + 2))},
            (("sigmap", "rhop", lambda p: -I(p + 2) / (Q(p - 1) * I(4))),
             ("sigmap", "taup", lambda p: -Q(1) * I(p + 2) / I(p + 4)))),
        SeriesFamily("sigmanp", ("n", "p"), {
            "sigmanp": M("e", 1, lambda n, p: (2 * n + p + 6, n + 1, p + 1)),
            "rhonp": M("e", 2, lambda n, p: (2 * n + p + 5, n + 2, p + 1)),
            "taunp": M("e", 3, lambda n, p: (2 * n + p + 5, n + 1, p + 2))},
            (("sigmanp", "rhonp", lambda n, p: -I(n + p + 3) / (Q(p - 1) * I(2 * n + 6))),
             ("sigmanp", "taunp", lambda n, p: -Q(1) * I(n + p + 3) / I(3 * n + p + 7)))),
        SeriesFamily("lambdap", ("p",), {
            "lambdap": M("f", 1, lambda p: (p + 1, 0, p + 2)),
            "omegap": M("f", 3, lambda p: (p, 0, p + 3))},
            (("lambdap", "omegap", lambda p: -I(p + 3) / (Q(1) * I(p + 1))),)),
        SeriesFamily("lambdat", ("n",), {
            "lambdat": M("f", 1, lambda n: (2 * n + 1, n + 1, 0)),
            "nut": M("f", 2, lambda n: (2 * n, n + 2, 0)),
            "omegat": M("f", 3, lambda n: (2 * n, n + 1, 1))},
            (("lambdat", "omegat", lambda n: -I(n + 2) / (Q(1) * I(3 * n + 2))),
             ("lambdat", "nut", lambda n: -I(n + 2) / (Q(1) * I(2 * n + 2))))),
        SeriesFamily("lambdah", ("n",), {
            "lambdah": M("f", 1, lambda n: (2 * n + 2, n + 1, 1)),
            "nuh": M("f", 2, lambda n: (2 * n + 1, n + 2, 1)),
            "omegah": M("f", 3, lambda n: (2 * n + 1, n + 1, 2))},
            (("lambdah", "omegah", lambda n: -I(n + 3) / (Q(1) * I(3 * n + 3))),
             ("lambdah", "nuh", lambda n: -I(n + 3) / (Q(2) * I(2 * n + 2))))),
        SeriesFamily("lambdanp", ("n", "p"), {
            "lambdanp": M("f", 1, lambda n, p: (2 * n + p + 3, n + 1, p + 2)),
            "nunp": M("f", 2, lambda n, p: (2 * n + p + 2, n + 2, p + 2)),
            "omeganp": M("f", 3, lambda n, p: (2 * n + p + 2, n + 1, p + 3))},
            (("lambdanp", "omeganp", lambda n, p: -I(n + p + 4) / (Q(1) * I(3 * n + p + 4))),
             ("lambdanp", "nunp", lambda n, p: -I(n + p + 4) / (Q(p + 3) * I(2 * n + 2))))),
    ))

_CASE8 = SeriesSpec(
    "aq3/case8", (1, 2, -1), {3: "a3*x1"}, {2: "e0"}, (("e0", True), ("a3", False)),
    (
        SeriesFamily("alphap", ("p",), {
            "alphap": M("e", 1, lambda p: (p + 3, 0, p)),
            "gammap": M("e", 3, lambda p: (p + 2, 0, p + 1))},
            (("alphap", "gammap", lambda p: -Q(1) * I(p + 1) / I(p + 3)),)),
        SeriesFamily("alphat", ("m",), {
            "alphat": M("e", 1, lambda m: (1, m + 1, 2 * m)),
            "betat": M("e", 2, lambda m: (0, m + 2, 2 * m)),
            "gammat": M("e", 3, lambda m: (0, m + 1, 2 * m + 1))},
            (("alphat", "betat", lambda m: I(3 * m + 2) / I(2 * m + 2)),
             ("alphat", "gammat", lambda m: -Q(1) * I(3 * m + 2) / I(m + 2)))),
        SeriesFamily("alphah", ("m",), {
            "alphah": M("e", 1, lambda m: (2, m + 1, 2 * m + 1)),
            "betah": M("e", 2, lambda m: (1, m + 2, 2 * m + 1)),
            "gammah": M("e", 3, lambda m: (1, m + 1, 2 * m + 2))},
            (("alphah", "betah", lambda m: I(3 * m + 3) / (Q(1) * I(2 * m + 2))),
             ("alphah", "gammah", lambda m: -Q(1) * I(3 * m + 3) / I(m + 3)))),
        SeriesFamily("alphamp", ("m", "p"), {
            "alphamp": M("e", 1, lambda m, p: (p + 3, m + 1, 2 * m + p + 2)),
            "betamp": M("e", 2, lambda m, p: (p + 2, m + 2, 2 * m + p + 2)),
            "gammamp": M("e", 3, lambda m, p: (p + 2, m + 1, 2 * m + p + 3))},
            (("alphamp", "betamp", lambda m, p: I(3 * m + p + 4) / (Q(p + 2) * I(2 * m + 2))),
             ("alphamp", "gammamp", lambda m, p: -Q(1) * I(3 * m + p + 4) / I(p + m + 4)))),
        SeriesFamily("eps", (), {
            "eps": M("f", 1, lambda: (1, 0, 2)),
            "theta": M("f", 2, lambda: (0, 1, 2)),
            "eta": M("f", 3, lambda: (0, 0, 3))},
            (("eps", "theta", lambda: Q(1) * I(3) / I(4)),
             ("eps", "eta", lambda: -Q(-1) * I(3)))),
        SeriesFamily("epsp", ("p",), {
            "epsp": M("f", 1, lambda p: (p + 2, 0, p + 3)),
            "thetap": M("f", 2, lambda p: (p + 1, 1, p + 3)),
            "etap": M("f", 3, lambda p: (p + 1, 0, p + 4))},
            (("epsp", "thetap", lambda p: I(p + 4) / (Q(p) * I(4))),
             ("epsp", "etap", lambda p: -I(p + 4) / (Q(1) * I(p + 2))))),
        SeriesFamily("epst", ("m",), {
            "epst": M("f", 1, lambda m: (1, m + 1, 2 * m + 4)),
            "thetat": M("f", 2, lambda m: (0, m + 2, 2 * m + 4)),
            "etat": M("f", 3, lambda m: (0, m + 1, 2 * m + 5))},
            (("epst", "thetat", lambda m: Q(1) * I(3 * m + 6) / I(2 * m + 6)),
             ("epst", "etat", lambda m: -I(3 * m + 6) / (Q(1) * I(m + 2))))),
        SeriesFamily("epsmp", ("m", "p"), {
            "epsmp": M("f", 1, lambda m, p: (p + 2, m + 1, 2 * m + p + 5)),
            "thetamp": M("f", 2, lambda m, p: (p + 1, m + 2, 2 * m + p + 5)),
            "etamp": M("f", 3, lambda m, p: (p + 1, m + 1, 2 * m + p + 6))},
            (("epsmp", "thetamp", lambda m, p: I(3 * m + p + 7) / (Q(p) * I(2 * m + 6))),
             ("epsmp", "etamp", lambda m, p: -I(3 * m + p + 7) / (Q(1) * I(p + m + 3))))),
    ))

_CASE10 = SeriesSpec(
    "aq3/case10", (1, 1, -2), {3: "c0"}, {}, (("c0", True),),
    (
        SeriesFamily("r", ("n", "p"), {
            "r": M("e", 1, lambda n, p: (3 + 2 * p - n, n, p)),
            "s": M("e", 2, lambda n, p: (2 + 2 * p - n, n + 1, p)),
            "t": M("e", 3, lambda n, p: (2 + 2 * p - n, n, p + 1))},
            (("r", "s", lambda n, p: -I(n + p + 1) / (Q(p + 1) * I(p + 1 - n))),
             ("r", "t", lambda n, p: -Q(2) * I(n + p + 1) / I(2 * p + 4))),
            when=lambda n, p: 2 + 2 * p - n >= 0 and n != p + 1),
        SeriesFamily("rp", ("p",), {
            "rp": M("e", 1, lambda p: (2 + p, p + 1, p)),
            "tp": M("e", 3, lambda p: (p + 1, p + 1, p + 1))},
            (("rp", "tp", lambda p: -Q(2) * I(2 * p + 2) / I(2 * p + 4)),)),
        SeriesFamily("u", ("n", "p"), {
            "u": M("f", 1, lambda n, p: (2 * p - n + 1, n, p + 1)),
            "v": M("f", 2, lambda n, p: (2 * p - n, n + 1, p + 1)),
            "w": M("f", 3, lambda n, p: (2 * p - n, n, p + 2))},
            (("u", "v", lambda n, p: -I(n + p + 2) / (Q(p + 2) * I(p - 2 - n))),
             ("u", "w", lambda n, p: -I(n + p + 2) / (Q(1) * I(2 * p + 2)))),
            when=lambda n, p: 2 * p - n >= 0 and p != n + 2),
        SeriesFamily("un", ("n",), {
            "un": M("f", 1, lambda n: (n + 5, n, n + 3)),
            "wn": M("f", 3, lambda n: (n + 4, n, n + 4))},
            (("un", "wn", lambda n: -I(2 * n + 4) / (Q(1) * I(2 * n + 6))),)),
    ))

_CASE11 = SeriesSpec(
    "aq3/case11", (2, -1, -1), {}, {1: "d0"}, (("d0", True),),
    (
        SeriesFamily("rt", ("m", "p"), {
            "rt": M("e", 1, lambda m, p: (m + 2, p, 2 * m - p)),
            "st": M("e", 2, lambda m, p: (m + 1, p + 1, 2 * m - p)),
            "tt": M("e", 3, lambda m, p: (m + 1, p, 2 * m - p + 1))},
            (("rt", "st", lambda m, p: I(2 * m + 2) / (Q(m + 1) * I(m - 2 - p))),
             ("rt", "tt", lambda m, p: -Q(1) * I(2 * m + 2) / I(m + p + 2))),
            when=lambda m, p: 2 * m - p >= 0 and m != p + 2),
        SeriesFamily("rtp", ("p",), {
            "rtp": M("e", 1, lambda p: (p + 4, p, p + 4)),
            "ttp": M("e", 3, lambda p: (p + 3, p, p + 5))},
            (("rtp", "ttp", lambda p: -Q(1) * I(2 * p + 6) / I(2 * p + 4)),)),
        SeriesFamily("ut", ("m", "p"), {
            "ut": M("f", 1, lambda m, p: (m + 1, p, 2 * m + 2 - p)),
            "vt": M("f", 2, lambda m, p: (m, p + 1, 2 * m - p + 2)),
            "wt": M("f", 3, lambda m, p: (m, p, 2 * m - p + 3))},
            (("ut", "vt", lambda m, p: I(2 * m + 4) / (Q(m + 3) * I(m + 1 - p))),
             ("ut", "wt", lambda m, p: -I(2 * m + 4) / (Q(2) * I(m + p + 1)))),
            when=lambda m, p: 2 * m + 2 - p >= 0 and p != m + 1),
        SeriesFamily("utm", ("m",), {
            "utm": M("f", 1, lambda m: (m + 1, m + 1, m + 1)),
            "wtm": M("f", 3, lambda m: (m, m + 1, m + 2))},
            (("utm", "wtm", lambda m: -I(2 * m + 4) / (Q(2) * I(2 * m + 2))),)),
    ))

SERIES = {s.key: s for s in (_CASE4, _CASE5, _CASE6, _CASE8, _CASE10, _CASE11)}
SERIES["aq3/case7"] = _CASE6
SERIES["aq3/case9"] = _CASE8


def series_param(fam: SeriesFamily, idx: dict) -> str:
    return "_".join([fam.base] + [str(idx[k]) for k in fam.indices])


def make_series_vertex(tag: str, degree_bound: int, bind: Mapping | None = None) -> ActionFamily:
    """General straightening solution truncated at total degree ``degree_bound``.

    Each series family contributes one free parameter named after its base
    coefficient and indices (``c_0_1``, ``lambdat_0``); ``bind`` fixes any
    parameter to a value or expression.
    """
    from .catalog import UnknownFamily
    if degree_bound < 1:
        raise ValueError("degree_bound must be at least 1")
    spec = SERIES.get(tag)
    if spec is None:
        raise UnknownFamily(f"{tag} has no series form")
    sp = QSpace(3)
    params = dict(spec.core_params)
    images = {"e": [sp.zero()] * 3, "f": [sp.zero()] * 3}
    for gen, core in (("e", spec.core_e), ("f", spec.core_f)):
        for i, text in core.items():
            img = list(images[gen])
            img[i - 1] = parse_expr(text, sp, params)
            images[gen] = img
    for fam in spec.families:
        for idx, monos in fam.instances(degree_bound):
            name = series_param(fam, idx)
            params[name] = False
            u = ParamScalar.param(name, False)
            for coeff, rel in fam.relative(idx).items():
                mb = fam.members[coeff]
                img = list(images[mb.gen])
                img[mb.i - 1] = img[mb.i - 1] + sp.monomial(monos[coeff], u.scale(rel))
                images[mb.gen] = img
    v = VertexAction(KAction.from_exps(*spec.k), images["e"], images["f"])
    out = ActionFamily(sp, (v,), params, (tag,))
    if bind:
        b = {}
        for name, val in bind.items():
            b[name] = parse_scalar(val, params) if isinstance(val, str) else val
        out = out.substitute(b)
    return out


def straightening_ok(fam: ActionFamily) -> list:
    """Nonzero straightening residuals of a single-vertex family."""
    from .relations import RelationId, verify
    rep = verify(fam, [RelationId("e-straighten", 1, 1), RelationId("f-straighten", 1, 1)])
    return rep.failures()
