"""Compatibility of single-vertex actions and labelings of the Dynkin path.

Every defining relation of U_q(sl(m+1)) involves at most two vertices, so an
m-vertex family is a module algebra exactly when each vertex is one and every
pair passes its cross relations: the adjacent ones (a_ij = -1) for
neighbours and the commuting ones (a_ij = 0) for the rest.  Pair results are
cached, which keeps labeling enumeration cheap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .action import ActionFamily, KAction, VertexAction
from .catalog import assemble, dot_name, entry, make_vertex, parse_tag
from .coeff import ParamScalar, format_param
from .qspace import QSpace, RankMismatch
from .relations import RelationId, cross_relations, extract_constraints, verify


class SpaceMismatch(ValueError):
    pass


class Status(str, Enum):
    COMPATIBLE = "Compatible"
    INCOMPATIBLE = "Incompatible"
    CONDITIONAL = "Conditional"


@dataclass
class CompatResult:
    status: Status
    witness: tuple | None = None  # (RelationId, location, residual)
    constraints: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status is not Status.INCOMPATIBLE

    def __str__(self):
        s = self.status.value
        if self.constraints and self.status is Status.CONDITIONAL:
            s += ": " + ", ".join(f"{format_param(c)} = 0" for c in self.constraints)
        elif self.witness:
            rid, at, r = self.witness
            from .relations import format_location
            s += f" ({rid} at {format_location(at)}: {r})"
        return s


def _as_vertex(v) -> tuple[VertexAction, dict]:
    if isinstance(v, ActionFamily):
        if v.m != 1:
            raise ValueError("expected a single-vertex family")
        return v.vertices[0], dict(v.params)
    if isinstance(v, tuple):
        return v
    return v, {}


def _trivial_vertex(space: QSpace) -> VertexAction:
    z = [space.zero()] * space.n
    return VertexAction(KAction.from_exps(*([0] * space.n)), z, z)


def check_pair(vx, vy, mode: str = "adjacent") -> CompatResult:
    """Cross relations between two vertex actions.

    ``vx`` and ``vy`` are single-vertex families, vertices or
    ``(VertexAction, params)`` pairs on the same space.  In ``distant`` mode a
    trivial vertex is placed between them so that the Cartan entry is 0.
    """
    (x, px), (y, py) = _as_vertex(vx), _as_vertex(vy)
    sx, sy = x.e[0].space, y.e[0].space
    if sx != sy:
        raise RankMismatch(f"vertices live on {sx} and {sy}")
    params = {**px, **py}
    if mode == "adjacent":
        fam = ActionFamily(sx, (x, y), params)
        rids = cross_relations(2, 1, 2)
    elif mode == "distant":
        fam = ActionFamily(sx, (x, _trivial_vertex(sx), y), params)
        rids = cross_relations(3, 1, 3)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    rep = verify(fam, rids)
    if rep.passed:
        return CompatResult(Status.COMPATIBLE)
    witness = rep.first_failure()
    cons = extract_constraints(rep)
    inv = fam.invertible()
    if any(not (c.params() - inv) for c in cons):
        return CompatResult(Status.INCOMPATIBLE, witness, cons)
    return CompatResult(Status.CONDITIONAL, witness, cons)


class PairCache:
    """Memoized default-parameter pair checks between catalog tags."""

    def __init__(self, n: int | None = None, space: QSpace | None = None):
        self.n = n
        self.space = space
        self._vertex: dict = {}
        self._pair: dict = {}
        self._self: dict = {}

    def vertex(self, tag: str) -> VertexAction:
        v = self._vertex.get(tag)
        if v is None:
            v, _ = make_vertex(tag, self.n, space=self.space)
            self._vertex[tag] = v
        return v

    def pair(self, a: str, b: str, mode: str) -> CompatResult:
        key = (a, b, mode)
        r = self._pair.get(key)
        if r is None:
            r = check_pair(self.vertex(a), self.vertex(b), mode)
            self._pair[key] = r
        return r

    def single(self, tag: str) -> bool:
        ok = self._self.get(tag)
        if ok is None:
            ok = verify(ActionFamily(self.vertex(tag).e[0].space, (self.vertex(tag),)), fail_fast=True).passed
            self._self[tag] = ok
        return ok


@dataclass
class CompatGraph:
    tags: list
    names: list
    results: dict  # (i, j) with i <= j -> CompatResult
    n: int | None = None

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted(k for k, r in self.results.items() if r.ok)

    def edge_names(self) -> set[frozenset]:
        """Edges as sets of DOT names (a loop is a one-element set)."""
        return {frozenset((self.names[i], self.names[j])) for i, j in self.edges}

    def neighbours(self, i: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return sorted(set(out))


def _space_of(tags, n):
    spaces = {parse_tag(t).space for t in tags}
    if len(spaces) > 1:
        raise SpaceMismatch(f"tags from several spaces: {sorted(spaces)}")
    ranks = {entry(t, n).n for t in tags}
    if len(ranks) > 1:
        raise SpaceMismatch("tags of different rank")


def build_graph(tags: Sequence[str], n: int | None = None, cache: PairCache | None = None) -> CompatGraph:
    """Adjacent-pair compatibility over all unordered pairs, loops included."""
    tags = list(tags)
    _space_of(tags, n)
    cache = cache or PairCache(n)
    results = {}
    for i, j in itertools.combinations_with_replacement(range(len(tags)), 2):
        results[(i, j)] = cache.pair(tags[i], tags[j], "adjacent")
    return CompatGraph(tags, [dot_name(t, n) for t in tags], results, n)


@dataclass
class Rejection:
    labeling: tuple
    pair: tuple  # vertex positions (1-based)
    result: CompatResult


def enumerate_labelings(m: int, tags: Sequence[str], n: int | None = None, cache: PairCache | None = None,
                        confirm: bool = True, rejections: list | None = None) -> list[tuple]:
    """All m-tuples of tags forming a module algebra, in catalog order.

    Adjacent pairs prune a depth-first search; distant pairs are then
    checked.  With ``confirm`` every labeling containing a nontrivial vertex
    is also passed through the full ``relations.verify``.  Labelings rejected
    at the distant stage are appended to ``rejections`` when given.
    """
    if m < 1:
        raise ValueError("m must be positive")
    tags = list(tags)
    if not tags:
        return []
    _space_of(tags, n)
    cache = cache or PairCache(n)
    tags = [t for t in tags if cache.single(t)]
    out = []

    def distant_ok(lab):
        for a in range(m):
            for b in range(a + 2, m):
                r = cache.pair(lab[a], lab[b], "distant")
                if r.status is not Status.COMPATIBLE:
                    if rejections is not None:
                        rejections.append(Rejection(tuple(lab), (a + 1, b + 1), r))
                    return False
        return True

    def dfs(lab):
        if len(lab) == m:
            if distant_ok(lab):
                out.append(tuple(lab))
            return
        for t in tags:
            if lab and cache.pair(lab[-1], t, "adjacent").status is not Status.COMPATIBLE:
                continue
            lab.append(t)
            dfs(lab)
            lab.pop()

    dfs([])
    if confirm:
        for lab in out:
            if all(entry(t, n).trivial for t in lab):
                continue
            fam = assemble([cache.vertex(t) for t in lab], lab)
            if not verify(fam, fail_fast=True).passed:
                raise AssertionError(f"pairwise checks accepted {lab} but full verification fails")
    return out


def export_dot(g: CompatGraph) -> str:
    lines = ["graph compat {"]
    for name in g.names:
        lines.append(f"  {name};")
    for i, j in g.edges:
        r = g.results[(i, j)]
        attr = ""
        if r.status is Status.CONDITIONAL:
            label = ", ".join(f"{format_param(c)} = 0" for c in r.constraints)
            attr = f' [label="{label}"]'
        lines.append(f"  {g.names[i]} -- {g.names[j]}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass
class Discrepancy:
    pair: tuple  # DOT names
    expected: bool
    result: CompatResult


def compare_predicate(g: CompatGraph, predicate) -> list[Discrepancy]:
    """Pairs where a claimed predicate on DOT names disagrees with the computed graph."""
    out = []
    for (i, j), r in sorted(g.results.items()):
        a, b = g.names[i], g.names[j]
        expected = bool(predicate(a, b))
        if expected != r.ok:
            out.append(Discrepancy((a, b), expected, r))
    return out
