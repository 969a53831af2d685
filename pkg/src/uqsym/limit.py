"""Classical limit q -> 1.

With k_t = q^{h_t}, a verified action on A_q(n) degenerates to an action of
sl(m+1) on the commutative polynomial ring by derivations.  ``h_t`` is read
off from the k-exponents; e and f images are specialized at q = 1.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

from .action import ActionFamily
from .coeff import DivisionByZero, ParamScalar, PONE
from .expr import parse_expr
from .qspace import QPolynomial, QSpace
from .relations import RelationId, VerificationReport, cartan

CLASSICAL = object()


class SignObstruction(ValueError):
    pass


class UnboundParameter(ValueError):
    pass


class PoleAtOne(ValueError):
    pass


class SignWarning(UserWarning):
    pass


@dataclass(eq=False)
class LieAction:
    """sl(m+1) acting on C[x_1..x_n]: h diagonal, e and f by derivations."""

    n: int
    h: list  # per vertex: tuple of n integers
    e: list  # per vertex: list of n polynomials over QSpace(n, 1)
    f: list

    @property
    def m(self) -> int:
        return len(self.h)

    @property
    def space(self) -> QSpace:
        return QSpace(self.n, 1)

    @classmethod
    def from_text(cls, n: int, vertices: Sequence) -> "LieAction":
        """Build from dicts ``{"h": ints, "e": exprs, "f": exprs}``."""
        sp = QSpace(n, 1)
        h, e, f = [], [], []
        for v in vertices:
            h.append(tuple(v["h"]))
            e.append([parse_expr(s, sp) for s in v["e"]])
            f.append([parse_expr(s, sp) for s in v["f"]])
        return cls(n, h, e, f)

    def __eq__(self, other):
        return (isinstance(other, LieAction) and self.n == other.n and self.h == other.h
                and self.e == other.e and self.f == other.f)

    def describe(self) -> str:
        lines = []
        for t in range(self.m):
            lines.append(f"vertex {t + 1}: h = {self.h[t]}")
            for name, imgs in (("e", self.e[t]), ("f", self.f[t])):
                for i, p in enumerate(imgs, 1):
                    if p:
                        lines.append(f"  {name}(x{i}) = {p}")
        return "\n".join(lines)


def _at_one(p: QPolynomial, sp: QSpace) -> QPolynomial:
    if p.params():
        raise UnboundParameter(f"parameters {sorted(p.params())} must be bound before the limit")
    try:
        return p.substitute(None, 1)
    except (DivisionByZero, ZeroDivisionError) as exc:
        raise PoleAtOne(f"{p} has a pole at q = 1") from exc


def classical_limit(fam: ActionFamily) -> LieAction:
    sp = QSpace(fam.n, 1)
    h, e, f = [], [], []
    for t, v in enumerate(fam.vertices, 1):
        if any(s < 0 for s in v.k.signs):
            if not v.is_trivial():
                raise SignObstruction(f"vertex {t} has k-signs {v.k.signs} and nonzero e or f")
            warnings.warn(f"vertex {t}: k-signs {v.k.signs} dropped in the limit", SignWarning, stacklevel=2)
        h.append(tuple(v.k.exps))
        e.append([_at_one(p, sp) for p in v.e])
        f.append([_at_one(p, sp) for p in v.f])
    return LieAction(fam.n, h, e, f)


def derivation_apply(images: Sequence[QPolynomial], p: QPolynomial) -> QPolynomial:
    """The derivation with D(x_i) = images[i-1], applied to p (commutative ring)."""
    sp = p.space
    out = sp.zero()
    for mono, c in p.terms.items():
        for i, a in enumerate(mono):
            if not a or not images[i]:
                continue
            rest = list(mono)
            rest[i] -= 1
            out = out + (images[i] * sp.monomial(tuple(rest), c)).scale(a)
    return out


def lie_apply(l: LieAction, t: int, gen: str, p: QPolynomial) -> QPolynomial:
    if gen == "h":
        return QPolynomial(p.space, {m: c * sum(x * y for x, y in zip(l.h[t - 1], m)) for m, c in p.terms.items()})
    return derivation_apply(getattr(l, gen)[t - 1], p)


def _word(l, word, p):
    for t, g in reversed(word):
        if not p:
            return p
        p = lie_apply(l, t, g, p)
    return p


def _bracket_ops(i: int, j: int, kind: str):
    if kind == "kk-commute":
        return [(1, ((i, "h"), (j, "h"))), (-1, ((j, "h"), (i, "h")))]
    if kind == "k-e-conjugation":
        return [(1, ((i, "h"), (j, "e"))), (-1, ((j, "e"), (i, "h"))), (-cartan(i, j), ((j, "e"),))]
    if kind == "k-f-conjugation":
        return [(1, ((i, "h"), (j, "f"))), (-1, ((j, "f"), (i, "h"))), (cartan(i, j), ((j, "f"),))]
    if kind == "ef-commutator":
        ops = [(1, ((i, "e"), (j, "f"))), (-1, ((j, "f"), (i, "e")))]
        if i == j:
            ops.append((-1, ((i, "h"),)))
        return ops
    if kind in ("ee-commute", "ff-commute"):
        g = kind[0]
        return [(1, ((i, g), (j, g))), (-1, ((j, g), (i, g)))]
    if kind in ("e-serre", "f-serre"):
        g = kind[0]
        return [(1, ((i, g), (i, g), (j, g))), (-2, ((i, g), (j, g), (i, g))), (1, ((j, g), (i, g), (i, g)))]
    raise ValueError(kind)


def lie_relation_ids(m: int) -> list[RelationId]:
    out = []
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            out.append(RelationId("kk-commute", i, j))
    for kind in ("k-e-conjugation", "k-f-conjugation", "ef-commutator"):
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                out.append(RelationId(kind, i, j))
    for kind in ("ee-commute", "ff-commute"):
        for i in range(1, m + 1):
            for j in range(i + 2, m + 1):
                out.append(RelationId(kind, i, j))
    for kind in ("e-serre", "f-serre"):
        for i in range(1, m + 1):
            for j in (i - 1, i + 1):
                if 1 <= j <= m:
                    out.append(RelationId(kind, i, j))
    return out


def verify_lie(l: LieAction) -> VerificationReport:
    """Check the sl(m+1) relations on each generator x_s.

    Relation names follow the quantum ones: ``k-e-conjugation(i,j)`` is
    [h_i, e_j] = a_ij e_j, ``ef-commutator(i,j)`` is [e_i, f_j] = delta_ij h_i
    and so on.
    """
    sp = l.space
    rep = VerificationReport()
    for rid in lie_relation_ids(l.m):
        for s in range(1, l.n + 1):
            x = sp.gen(s)
            r = sp.zero()
            for c, word in _bracket_ops(rid.i, rid.j, rid.kind):
                r = r + _word(l, word, x).scale(ParamScalar.const(c))
            rep.residuals[(rid, s)] = r
            if r:
                rep.passed = False
    return rep
