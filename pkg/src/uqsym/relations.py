"""Checking the defining relations of U_q(sl(m+1)) on an action family.

Every relation is an operator identity; since both sides are twisted
derivations of the same kind, it is enough to test it on the generators
x_1..x_n (and on 1 for the unit/counit conditions).  Well-definedness of the
extension to A_q(n) is checked separately through the straightening
residuals of ``x_i x_j - q x_j x_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .action import ActionFamily, apply_word
from .coeff import PONE, ParamScalar, RootOfUnityRisk
from .qspace import QPolynomial, QSpace

KINDS = (
    "unit-counit", "e-straighten", "f-straighten",
    "kk-commute", "k-e-conjugation", "k-f-conjugation", "ef-commutator",
    "ee-commute", "ff-commute", "e-serre", "f-serre",
)


def cartan(i: int, j: int) -> int:
    if i == j:
        return 2
    return -1 if abs(i - j) == 1 else 0


@dataclass(frozen=True, order=True)
class RelationId:
    kind: str
    i: int
    j: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown relation kind {self.kind!r}")

    def __str__(self):
        return f"{self.kind}({self.i},{self.j})"

    def vertices(self) -> frozenset:
        return frozenset((self.i, self.j))

    def sort_key(self):
        return (KINDS.index(self.kind), self.i, self.j)


def relation_ids(m: int) -> list[RelationId]:
    """All relations for m vertices in reporting order."""
    out = []
    for t in range(1, m + 1):
        out.append(RelationId("unit-counit", t, t))
        out.append(RelationId("e-straighten", t, t))
        out.append(RelationId("f-straighten", t, t))
    for i in range(1, m + 1):
        for j in range(i, m + 1):
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


def vertex_relations(m: int, t: int) -> list[RelationId]:
    return [r for r in relation_ids(m) if r.vertices() == {t}]


def cross_relations(m: int, a: int, b: int) -> list[RelationId]:
    """Relations tying vertex a to vertex b (a != b)."""
    return [r for r in relation_ids(m) if r.vertices() == {a, b}]


def relation_operator(rid: RelationId, space: QSpace) -> list[tuple[ParamScalar, tuple]]:
    """The relation as a linear combination of generator words."""
    i, j, kind = rid.i, rid.j, rid.kind
    q = space.qpow
    if kind == "kk-commute":
        if i == j:
            return [(PONE, ((i, "k"), (i, "kinv"))), (-PONE, ())]
        return [(PONE, ((i, "k"), (j, "k"))), (-PONE, ((j, "k"), (i, "k")))]
    if kind == "k-e-conjugation":
        return [(PONE, ((i, "k"), (j, "e"))), (-q(cartan(i, j)), ((j, "e"), (i, "k")))]
    if kind == "k-f-conjugation":
        return [(PONE, ((i, "k"), (j, "f"))), (-q(-cartan(i, j)), ((j, "f"), (i, "k")))]
    if kind == "ef-commutator":
        ops = [(PONE, ((i, "e"), (j, "f"))), (-PONE, ((j, "f"), (i, "e")))]
        if i == j:
            d = q(1) - q(-1)
            if not d:
                raise RootOfUnityRisk("q - q^-1 vanishes")
            c = PONE / d
            ops += [(-c, ((i, "k"),)), (c, ((i, "kinv"),))]
        return ops
    if kind in ("ee-commute", "ff-commute"):
        g = kind[0]
        return [(PONE, ((i, g), (j, g))), (-PONE, ((j, g), (i, g)))]
    if kind in ("e-serre", "f-serre"):
        g = kind[0]
        return [
            (PONE, ((i, g), (i, g), (j, g))),
            (-(q(1) + q(-1)), ((i, g), (j, g), (i, g))),
            (PONE, ((j, g), (i, g), (i, g))),
        ]
    raise ValueError(f"{kind} is not an operator relation")


def apply_relation(fam: ActionFamily, rid: RelationId, p: QPolynomial) -> QPolynomial:
    """Residual operator of ``rid`` applied to ``p``."""
    out = fam.space.zero()
    for c, word in relation_operator(rid, fam.space):
        r = apply_word(fam, word, p) if word else p
        if r.terms:
            out = out + r.scale(c)
    return out


def straighten_e(space: QSpace, images: Sequence[QPolynomial], kscal: Callable[[int], ParamScalar], i: int, j: int) -> QPolynomial:
    """e(x_i x_j) - q e(x_j x_i) through the coproduct, for i > j."""
    xi, xj = space.gen(i), space.gen(j)
    ei, ej = images[i - 1], images[j - 1]
    lhs = xi * ej + (ei * xj).scale(kscal(j))
    rhs = xj * ei + (ej * xi).scale(kscal(i))
    return lhs - rhs.scale(space.qpow(1))


def straighten_f(space: QSpace, images: Sequence[QPolynomial], kinv: Callable[[int], ParamScalar], i: int, j: int) -> QPolynomial:
    """f(x_i x_j) - q f(x_j x_i) through the coproduct, for i > j."""
    xi, xj = space.gen(i), space.gen(j)
    fi, fj = images[i - 1], images[j - 1]
    lhs = (xi * fj).scale(kinv(i)) + fi * xj
    rhs = (xj * fi).scale(kinv(j)) + fj * xi
    return lhs - rhs.scale(space.qpow(1))


def _unit_residual(fam: ActionFamily, t: int) -> QPolynomial:
    sp = fam.space
    one = sp.one()
    out = sp.zero()
    for g in ("k", "kinv"):
        out = out + (apply_word(fam, ((t, g),), one) - one)
    out = out + apply_word(fam, ((t, "e"),), one) + apply_word(fam, ((t, "f"),), one)
    return out


@dataclass
class VerificationReport:
    """Residuals keyed by (relation, location).

    The location is ``s`` for a generator x_s, ``0`` for the unit and a pair
    ``(i, j)`` for the straightening of x_i x_j.
    """

    residuals: dict = field(default_factory=dict)
    passed: bool = True
    invertible: frozenset = frozenset()

    def failures(self):
        return [(k, v) for k, v in self.residuals.items() if not v.is_zero()]

    @property
    def constraints(self) -> list[ParamScalar]:
        return extract_constraints(self)

    def first_failure(self):
        for k, v in self.residuals.items():
            if not v.is_zero():
                return k[0], k[1], v
        return None

    def lines(self, failures_only: bool = False) -> list[str]:
        out = []
        for (rid, at), r in self.residuals.items():
            if failures_only and r.is_zero():
                continue
            out.append(f"RELATION {rid} AT {format_location(at)}: {'OK' if r.is_zero() else r}")
        return out


def format_location(at) -> str:
    if at == 0:
        return "1"
    if isinstance(at, tuple):
        return "*".join(f"x{i}" for i in at)
    return f"x{at}"


def verify(fam: ActionFamily, relations: Iterable[RelationId] | None = None, fail_fast: bool = False) -> VerificationReport:
    """Evaluate each relation on every generator and collect residuals."""
    rids = list(relations) if relations is not None else relation_ids(fam.m)
    rids.sort(key=RelationId.sort_key)
    sp = fam.space
    rep = VerificationReport(invertible=fam.invertible())
    gens = [sp.gen(s) for s in range(1, fam.n + 1)]
    for rid in rids:
        if max(rid.i, rid.j) > fam.m:
            raise ValueError(f"{rid} needs more than {fam.m} vertices")
        if rid.kind == "unit-counit":
            items = [(0, _unit_residual(fam, rid.i))]
        elif rid.kind in ("e-straighten", "f-straighten"):
            v = fam.vertex(rid.i)
            items = []
            for i in range(1, fam.n + 1):
                for j in range(1, i):
                    if rid.kind == "e-straighten":
                        r = straighten_e(sp, v.e, lambda s: v.k.scalar(s, sp), i, j)
                    else:
                        r = straighten_f(sp, v.f, lambda s: v.k.scalar(s, sp, inverse=True), i, j)
                    items.append(((i, j), r))
        else:
            items = [(s, apply_relation(fam, rid, x)) for s, x in enumerate(gens, 1)]
        for at, r in items:
            rep.residuals[(rid, at)] = r
            if r.terms:
                rep.passed = False
                if fail_fast:
                    return rep
    return rep


def _nonunit_degree(key, inv) -> int:
    return sum(abs(e) for n, e in key if n not in inv)


def canonical_constraint(c: ParamScalar, invertible: frozenset) -> ParamScalar:
    """Scale a constraint so its leading term is a bare product of non-invertible parameters."""
    inv = invertible | c.inv
    lead_key, lead_c = min(c.terms.items(), key=lambda kv: (-_nonunit_degree(kv[0], inv), kv[0]))
    unit_part = tuple((n, e) for n, e in lead_key if n in inv)
    scale = ParamScalar._raw({unit_part: lead_c}, inv)
    return c.with_invertible(inv) / scale


def extract_constraints(report: VerificationReport) -> list[ParamScalar]:
    """Distinct canonical coefficients of all nonzero residuals."""
    seen = {}
    for _, r in report.residuals.items():
        for _, c in r.items():
            k = canonical_constraint(c, report.invertible)
            seen.setdefault(k, None)
    return _reduce_by_zeros(_drop_monomial_multiples(list(seen)), report.invertible)


def _reduce_by_zeros(cs: list[ParamScalar], invertible: frozenset) -> list[ParamScalar]:
    """Use constraints of the form p^k = 0 to kill p in the others.

    Such a constraint is replaced by ``p``; terms containing a killed
    parameter are removed from the remaining constraints, which are dropped
    once they vanish.
    """
    zero: set = set()
    cs = list(cs)
    while True:
        new = set()
        for c in cs:
            if len(c.terms) == 1:
                (key, _), = c.terms.items()
                names = [n for n, _ in key if n not in (invertible | c.inv)]
                if len(names) == 1 and names[0] not in zero:
                    new.add(names[0])
        if not new:
            break
        zero |= new
        out = []
        for c in cs:
            t = {k: v for k, v in c.terms.items() if not any(n in zero for n, _ in k)}
            if t:
                out.append(canonical_constraint(ParamScalar._raw(t, c.inv), invertible))
        cs = out
    pinned = [ParamScalar.param(n, False) for n in sorted(zero)]
    rest = [c for c in cs if c not in pinned]
    return _dedupe(pinned + rest)


def _dedupe(cs):
    out = []
    for c in cs:
        if c not in out:
            out.append(c)
    return out


def _drop_monomial_multiples(cs: list[ParamScalar]) -> list[ParamScalar]:
    """Remove constraints that are a single-term multiple of another one."""
    keep = []
    for c in cs:
        if not any(d is not c and _is_multiple(c, d) for d in cs):
            keep.append(c)
    return keep


def _is_multiple(c: ParamScalar, d: ParamScalar) -> bool:
    """True when c = d * t for a single term t with t not a unit."""
    if len(c.terms) != len(d.terms):
        return False
    (kc, vc), (kd, vd) = c.items()[0], d.items()[0]
    dd = dict(kd)
    diff = dict(kc)
    for n, e in dd.items():
        diff[n] = diff.get(n, 0) - e
    diff = {n: e for n, e in diff.items() if e}
    inv = c.inv | d.inv
    if not any(n not in inv for n in diff):
        return False
    if any(e < 0 and n not in inv for n, e in diff.items()):
        return False
    t = ParamScalar._raw({tuple(sorted(diff.items())): vc / vd}, inv)
    return d * t == c
