"""The weight method for U_q(sl(2))-module algebra structures on A_q(n).

Write ``k(x_i) = alpha_i x_i``.  The low-degree parts of the e and f images
are described by a support pattern: which images carry a nonzero constant
(degree 0) and which carry a given generator (degree 1).  Projecting the
straightening equations onto the lowest degrees, together with the weight
condition ``wt(e(x_i)) = q^2 alpha_i`` (``q^-2`` for f), forces the alphas.
For a surviving pattern the images are expanded over all weight-admissible
monomials up to a degree bound, the straightening equations are solved
linearly, and the ef-commutator is solved after normalizing one support
coefficient to an invertible parameter.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .action import ActionFamily, KAction, VertexAction
from .coeff import PONE, PZERO, ParamScalar, QScalar, substitute
from .qspace import QPolynomial, QSpace, grlex_key, monomials_of_degree
from .relations import RelationId, apply_relation, straighten_e, straighten_f, verify


class InconsistentPattern(ValueError):
    pass


def _alpha(i: int) -> str:
    return f"alpha{i}"


def _unit_mono(n, i):
    m = [0] * n
    m[i - 1] = 1
    return tuple(m)


# -- positions and names ----------------------------------------------------------

def position_name(n: int, pos: tuple) -> str:
    """Conventional coefficient name for a support position.

    ``(gen, i)`` is a constant in gen(x_i); ``(gen, i, s)`` is x_s in gen(x_i).
    """
    gen, i = pos[0], pos[1]
    if n == 3:
        if len(pos) == 2:
            return {"e": "abc", "f": "def"}[gen][i - 1] + "0"
        s = pos[2]
        first = min(t for t in (1, 2, 3) if t != i)
        letter = {"e": "ab", "f": "cd"}[gen][0 if s == first else 1]
        return f"{letter}{i}"
    if len(pos) == 2:
        return ("a" if gen == "e" else "b") + str(i)
    return ("c" if gen == "e" else "d") + f"{i}{pos[2]}"


def zero_positions(n: int) -> list[tuple]:
    return [(g, i) for g in ("e", "f") for i in range(1, n + 1)]


def first_positions(n: int) -> list[tuple]:
    return [(g, i, s) for g in ("e", "f") for i in range(1, n + 1) for s in range(1, n + 1) if s != i]


def _support_images(n: int, support: Iterable[tuple], space: QSpace):
    e = [space.zero() for _ in range(n)]
    f = [space.zero() for _ in range(n)]
    for pos in support:
        u = ParamScalar.param(position_name(n, pos), False)
        mono = (0,) * n if len(pos) == 2 else _unit_mono(n, pos[2])
        img = e if pos[0] == "e" else f
        img[pos[1] - 1] = img[pos[1] - 1] + space.monomial(mono, u)
    return e, f


# -- alpha forcing -----------------------------------------------------------------

@dataclass
class Forcing:
    values: dict  # alpha index -> exponent k (alpha = q^k)
    unresolved: list
    consistent: bool = True
    coupled: bool = False


def _alpha_equations(n: int, support: tuple) -> tuple[list, bool]:
    """Equations in the alphas implied by nonzero support coefficients."""
    sp = QSpace(n)
    e, f = _support_images(n, support, sp)
    alpha = lambda s: ParamScalar.param(_alpha(s), True)
    alpha_inv = lambda s: ParamScalar.param(_alpha(s), True, -1)
    unknowns = {position_name(n, p) for p in support}
    eqs, coupled = [], False
    for i in range(1, n + 1):
        for j in range(1, i):
            for r in (straighten_e(sp, e, alpha, i, j), straighten_f(sp, f, alpha_inv, i, j)):
                for c in r.terms.values():
                    us = c.params() & unknowns
                    if len(us) != 1:
                        coupled = coupled or len(us) > 1
                        continue
                    (u,) = us
                    eqs.append(_divide_unknown(c, u))
    # weights: wt(mono) = q^{+-2} alpha_i
    for pos in support:
        gen, i = pos[0], pos[1]
        lhs = PONE if len(pos) == 2 else alpha(pos[2])
        eqs.append(lhs - ParamScalar.q(2 if gen == "e" else -2) * alpha(i))
    return eqs, coupled


def _divide_unknown(c: ParamScalar, u: str) -> ParamScalar:
    t = {}
    for key, v in c.terms.items():
        rest = tuple((n, e - 1) if n == u else (n, e) for n, e in key)
        t[tuple((n, e) for n, e in rest if e)] = v
    return ParamScalar(t, c.inv)


def solve_alphas(eqs: list) -> Forcing:
    values: dict = {}
    pending = list(eqs)
    while True:
        progress = False
        rest = []
        for eq in pending:
            if values:
                eq = substitute(eq, {_alpha(i): ParamScalar.q(k) for i, k in values.items()})
            if eq.is_zero():
                continue
            names = eq.params()
            if not names:
                return Forcing(values, [eq], consistent=False)
            if len(names) == 1:
                (name,) = names
                k = _solve_single(eq, name)
                if k is not None:
                    idx = int(name[len("alpha"):])
                    values[idx] = k
                    progress = True
                    continue
            rest.append(eq)
        pending = rest
        if not progress:
            break
    return Forcing(dict(sorted(values.items())), pending)


def _solve_single(eq: ParamScalar, name: str):
    """Exponent k with alpha = q^k solving an affine equation in alpha or 1/alpha."""
    by_exp = {}
    for key, c in eq.terms.items():
        by_exp[dict(key).get(name, 0)] = c
    exps = set(by_exp)
    if exps == {0, 1}:
        v = -by_exp[0] / by_exp[1]
    elif exps == {0, -1}:
        v = -by_exp[-1] / by_exp[0]
    elif exps == {1} or exps == {-1}:
        v = QScalar.const(0)
    else:
        return None
    me = v.monomial_exponent()
    if me is None or me[0] != 1:
        return None
    return me[1]


def forcing(n: int, support: Iterable[tuple]) -> Forcing:
    support = tuple(sorted(support))
    eqs, coupled = _alpha_equations(n, support)
    fo = solve_alphas(eqs)
    fo.coupled = coupled
    return fo


# -- patterns ------------------------------------------------------------------------

CASE_ORDER_N3 = (
    ((), ()),
    ((("e", 1),), ()),
    ((("f", 3),), ()),
    ((), (("e", 2, 1), ("f", 1, 2))),
    ((), (("e", 3, 2), ("f", 2, 3))),
    ((("e", 2),), ()),
    ((("e", 2),), (("f", 1, 3),)),
    ((("f", 2),), ()),
    ((("f", 2),), (("e", 3, 1),)),
    ((("e", 3),), ()),
    ((("f", 1),), ()),
)


@dataclass(frozen=True)
class WeightPattern:
    n: int
    zero: frozenset
    first: frozenset
    forced: tuple  # exponent k of alpha_i = q^k, or None

    @property
    def name(self) -> str:
        if self.n == 3:
            key = (tuple(sorted(self.zero)), tuple(sorted(self.first)))
            for c, (z, f) in enumerate(CASE_ORDER_N3, 1):
                if key == (tuple(sorted(z)), tuple(sorted(f))):
                    return f"case{c}"
        return self.describe()

    def describe(self) -> str:
        z = ",".join(f"{g}{i}" for g, i in sorted(self.zero)) or "-"
        f = ",".join(f"{g}{i}x{s}" for g, i, s in sorted(self.first)) or "-"
        return f"[{z}|{f}]"

    @property
    def support(self) -> tuple:
        return tuple(sorted(self.zero)) + tuple(sorted(self.first))

    def k_action(self) -> KAction:
        if any(k is None for k in self.forced):
            if self.zero or self.first:
                raise InconsistentPattern(f"pattern {self.describe()} does not force every k-scalar")
            return KAction.from_exps(*([0] * self.n))
        return KAction.from_exps(*self.forced)

    def __str__(self):
        ks = ", ".join("?" if k is None else f"q^{k}" for k in self.forced)
        return f"{self.name}: alpha = ({ks})"


def _make(n, zero, first, fo: Forcing) -> WeightPattern:
    forced = tuple(fo.values.get(i) for i in range(1, n + 1))
    return WeightPattern(n, frozenset(zero), frozenset(first), forced)


def _consistent_subsets(n: int, positions: list) -> list[tuple[tuple, Forcing]]:
    """Supports whose forcing is consistent, found by depth-first search.

    Forcings only accumulate as positions are added, so an inconsistent
    support prunes all its supersets.
    """
    out = []

    def dfs(start, chosen):
        fo = forcing(n, chosen)
        if not fo.consistent:
            return
        out.append((tuple(chosen), fo))
        for idx in range(start, len(positions)):
            dfs(idx + 1, chosen + [positions[idx]])

    dfs(0, [])
    return out


def _ef_degree_one_ok(n: int, support: tuple, fo: Forcing) -> bool:
    """With no constants, the degree-1 part of ef - fe must match (k - k^-1)/(q - q^-1)."""
    sp = QSpace(n)
    e, f = _support_images(n, support, sp)
    exps = [fo.values.get(i, 0) for i in range(1, n + 1)]
    v = VertexAction(KAction.from_exps(*exps), e, f)
    fam = ActionFamily(sp, (v,))
    for s in range(1, n + 1):
        r = apply_relation(fam, RelationId("ef-commutator", 1, 1), sp.gen(s)).homogeneous_component(1)
        for c in r.terms.values():
            if c.is_scalar():
                return False
    return True


@dataclass
class PatternSet:
    n: int
    zero: list
    first: list
    combined: list
    dropped: int = 0
    coupled: bool = False

    def by_name(self, name: str) -> WeightPattern:
        for p in self.combined:
            if p.name == name:
                return p
        if name.startswith("p") and name[1:].isdigit():
            idx = int(name[1:])
            if 1 <= idx <= len(self.combined):
                return self.combined[idx - 1]
        raise KeyError(f"no pattern {name!r} for n = {self.n}")


def enumerate_patterns(n: int) -> PatternSet:
    """Admissible (degree-0, degree-1) support patterns with their forced k-scalars."""
    if n < 2:
        raise ValueError("n must be at least 2")
    zs = _consistent_subsets(n, zero_positions(n))
    fs = _consistent_subsets(n, first_positions(n))
    total = 2 ** len(zero_positions(n))
    dropped = total - len(zs)
    coupled = any(fo.coupled for _, fo in zs + fs)
    zero = [_make(n, z, (), fo) for z, fo in zs]
    first = [_make(n, (), f, fo) for f, fo in fs]
    combined = []
    for (z, _), (f, _) in itertools.product(zs, fs):
        sup = z + f
        fo = forcing(n, sup)
        if not fo.consistent:
            dropped += 1
            continue
        if not z and f and not _ef_degree_one_ok(n, sup, fo):
            dropped += 1
            continue
        combined.append(_make(n, z, f, fo))
    if n == 3:
        order = {p.name: i for i, p in enumerate(combined)}
        combined.sort(key=lambda p: (0, int(p.name[4:])) if p.name.startswith("case") else (1, order[p.name]))
    return PatternSet(n, zero, first, combined, dropped, coupled)


# -- ansatz ---------------------------------------------------------------------------

@dataclass
class AnsatzFamily:
    family: ActionFamily
    pattern: WeightPattern
    unknowns: list  # ordered; earlier ones are kept free by elimination
    eliminated: dict = field(default_factory=dict)  # unknown -> ParamScalar
    constraints: list = field(default_factory=list)

    @property
    def parameter_count(self) -> int:
        return len(self.unknowns)

    def image(self, gen: str, i: int) -> QPolynomial:
        return getattr(self.family.vertices[0], gen)[i - 1]


def admissible_monomials(k: KAction, gen: str, i: int, degree_bound: int) -> list:
    """Monomials M of degree <= bound with wt(M) = q^{+-2} wt(x_i), in grlex order."""
    target = k.exps[i - 1] + (2 if gen == "e" else -2)
    out = []
    for d in range(degree_bound + 1):
        for m in monomials_of_degree(k.n, d):
            if sum(a * b for a, b in zip(k.exps, m)) == target:
                out.append(m)
    return sorted(out, key=grlex_key)


def build_ansatz(p: WeightPattern, degree_bound: int = 6) -> AnsatzFamily:
    if degree_bound < 1:
        raise ValueError("degree_bound must be at least 1")
    k = p.k_action()
    n = p.n
    sp = QSpace(n)
    support_names = [position_name(n, pos) for pos in p.support]
    others = []
    images = {"e": [], "f": []}
    for gen in ("e", "f"):
        for i in range(1, n + 1):
            terms = {}
            idx = 0
            for m in admissible_monomials(k, gen, i, degree_bound):
                d = sum(m)
                if d == 0:
                    if (gen, i) not in p.zero:
                        continue
                    name = position_name(n, (gen, i))
                elif d == 1:
                    s = m.index(1) + 1
                    if (gen, i, s) not in p.first:
                        continue
                    name = position_name(n, (gen, i, s))
                else:
                    idx += 1
                    name = f"{gen}{i}_{idx}"
                    others.append(name)
                terms[m] = ParamScalar.param(name, False)
            images[gen].append(QPolynomial(sp, terms))
    missing = [nm for nm, pos in zip(support_names, p.support)
               if not any(nm in img.params() for img in images[pos[0]])]
    if missing:
        raise InconsistentPattern(f"support positions {missing} have the wrong weight")
    fam = ActionFamily(sp, (VertexAction(k, images["e"], images["f"]),),
                       {u: False for u in support_names + others}, (p.name,))
    return AnsatzFamily(fam, p, support_names + others)


# -- linear phase ---------------------------------------------------------------------

def _linear_form(c: ParamScalar, unknowns: set) -> dict:
    out = {}
    for key, v in c.terms.items():
        if len(key) != 1 or key[0][1] != 1 or key[0][0] not in unknowns:
            raise ValueError(f"equation {c} is not linear homogeneous in the unknowns")
        out[key[0][0]] = v
    return out


def _rref(rows: list[dict], order: dict) -> dict:
    """Reduce linear forms; each pivot is the latest unknown of its row.

    Returns pivot -> form over the free unknowns (pivot = sum c_v v).
    """
    piv: dict = {}
    for row in rows:
        row = dict(row)
        for p, expr in piv.items():
            if p in row:
                c = row.pop(p)
                for v, w in expr.items():
                    s = row.get(v, QScalar.const(0)) + c * w
                    if s.is_zero():
                        row.pop(v, None)
                    else:
                        row[v] = s
        if not row:
            continue
        p = max(row, key=lambda u: order[u])
        lead = row.pop(p)
        expr = {v: -(w / lead) for v, w in row.items()}
        for q_, e2 in piv.items():
            if p in e2:
                c = e2.pop(p)
                for v, w in expr.items():
                    s = e2.get(v, QScalar.const(0)) + c * w
                    if s.is_zero():
                        e2.pop(v, None)
                    else:
                        e2[v] = s
        piv[p] = expr
    return piv


def straightening_residuals(fam: ActionFamily) -> list[QPolynomial]:
    sp = fam.space
    v = fam.vertices[0]
    out = []
    for i in range(1, fam.n + 1):
        for j in range(1, i):
            out.append(straighten_e(sp, v.e, lambda s: v.k.scalar(s, sp), i, j))
            out.append(straighten_f(sp, v.f, lambda s: v.k.scalar(s, sp, inverse=True), i, j))
    return out


def impose_straightening(a: AnsatzFamily) -> AnsatzFamily:
    """Solve the (linear) straightening equations, keeping earlier unknowns free."""
    unknowns = set(a.unknowns)
    order = {u: i for i, u in enumerate(a.unknowns)}
    rows = []
    for r in straightening_residuals(a.family):
        for c in r.terms.values():
            rows.append(_linear_form(c, unknowns))
    piv = _rref(rows, order)
    bind = {}
    for p, expr in piv.items():
        val = PZERO
        for v, w in expr.items():
            val = val + ParamScalar.param(v, False).scale(w)
        bind[p] = val
    fam = a.family.substitute(bind)
    free = [u for u in a.unknowns if u not in piv]
    fam = _prune_params(fam, free)
    return AnsatzFamily(fam, a.pattern, free, {**a.eliminated, **bind}, list(a.constraints))


def _prune_params(fam: ActionFamily, names) -> ActionFamily:
    used = fam.free_params()
    fam.params = {n: fam.params.get(n, False) for n in names if n in used or n in fam.params}
    fam.params = {n: inv for n, inv in fam.params.items() if n in used}
    return fam


# -- bilinear phase --------------------------------------------------------------------

def normalization_position(p: WeightPattern):
    if p.zero:
        return sorted(p.zero)[0]
    es = sorted(x for x in p.first if x[0] == "e")
    if es:
        return es[0]
    return sorted(p.first)[0] if p.first else None


def _ef_equations(fam: ActionFamily) -> list[ParamScalar]:
    sp = fam.space
    out = []
    for s in range(1, fam.n + 1):
        r = apply_relation(fam, RelationId("ef-commutator", 1, 1), sp.gen(s))
        for _, c in r.items():
            out.append(c)
    return out


def _linear_solution(eq: ParamScalar, u: str):
    """u = value when eq is affine in u with a unit coefficient."""
    a, b = {}, {}
    for key, c in eq.terms.items():
        d = dict(key)
        e = d.get(u, 0)
        if e == 0:
            b[key] = c
        elif e == 1:
            a[tuple((n, x) for n, x in key if n != u)] = c
        else:
            return None
    if not a:
        return None
    coef = ParamScalar._raw(a, eq.inv)
    if not coef.is_unit():
        return None
    return -ParamScalar._raw(b, eq.inv) / coef


@dataclass
class SolveResult:
    families: list
    constraints: list  # (ActionFamily, [ParamScalar]) with unresolved relations

    def __iter__(self):
        return iter((self.families, self.constraints))


def impose_ef(a: AnsatzFamily, max_branches: int = 64) -> SolveResult:
    """Solve the ef-commutator after fixing one support coefficient as invertible."""
    fam = a.family
    pos = normalization_position(a.pattern)
    if pos is None:
        rep = verify(fam)
        return SolveResult([fam] if rep.passed else [], [] if rep.passed else [(fam, rep.constraints)])
    norm = position_name(fam.n, pos)
    if norm not in fam.free_params():
        return SolveResult([], [])
    params = dict(fam.params)
    params[norm] = True
    fam = fam.map_images(lambda p: p.map_coefficients(lambda c: c.with_invertible(c.inv | {norm})), params=params)
    order = {u: i for i, u in enumerate(a.unknowns)}
    families, leftovers, seen = [], [], set()
    _ef_search(fam, order, families, leftovers, seen, [max_branches])
    return SolveResult(families, leftovers)


def _ef_search(fam, order, families, leftovers, seen, budget):
    if budget[0] <= 0:
        return
    budget[0] -= 1
    while True:
        eqs = [c for c in _ef_equations(fam) if c]
        step = None
        for eq in eqs:
            names = sorted(eq.params() - fam.invertible(), key=lambda u: -order.get(u, -1))
            for u in names:
                val = _linear_solution(eq, u)
                if val is not None:
                    step = (u, val)
                    break
            if step:
                break
        if not step:
            break
        fam = fam.substitute({step[0]: step[1]})
        fam.params = {n: inv for n, inv in fam.params.items() if n in fam.free_params()}
    if not eqs:
        key = hash(fam)
        if key not in seen and verify(fam).passed:
            seen.add(key)
            families.append(fam)
        return
    if any(not (eq.params() - fam.invertible()) for eq in eqs):
        return  # a unit or constant must vanish: no solutions on this branch
    single = [eq for eq in eqs if eq.is_single_term()]
    if single:
        eq = single[0]
        for u in sorted(eq.params() - fam.invertible()):
            sub = fam.substitute({u: 0})
            sub.params = {n: inv for n, inv in sub.params.items() if n in sub.free_params()}
            _ef_search(sub, order, families, leftovers, seen, budget)
        return
    leftovers.append((fam, eqs))


def solve_pattern(p: WeightPattern, degree_bound: int = 6) -> SolveResult:
    return impose_ef(impose_straightening(build_ansatz(p, degree_bound)))


# -- comparison up to renaming -----------------------------------------------------------

def match_families(f1: ActionFamily, f2: ActionFamily):
    """Find a rescaling renaming of f1's free parameters that turns it into f2.

    Coefficients of the form ``c*u`` in f1 opposite ``d*v`` in f2 bind
    ``u -> (d/c) v``; invertible parameters are matched first.  Returns the
    binding dict or None.
    """
    if f1.n != f2.n or f1.m != f2.m:
        return None
    pairs = []
    for v1, v2 in zip(f1.vertices, f2.vertices):
        if v1.k != v2.k:
            return None
        for p1, p2 in zip(v1.e + v1.f, v2.e + v2.f):
            if set(p1.terms) != set(p2.terms):
                return None
            for m in p1.terms:
                pairs.append((p1.terms[m], p2.terms[m]))
    bind: dict = {}
    inv = f1.invertible()
    for want_inv in (True, False):
        for c1, c2 in pairs:
            c1s = substitute(c1, bind) if bind else c1
            free = [u for u in c1s.params() if u not in bind and (u in inv) == want_inv]
            if len(c1s.terms) != 1 or len(free) != 1:
                continue
            (u,) = free
            (key, c), = c1s.terms.items()
            e = dict(key)[u]
            if abs(e) != 1:
                continue
            rest = ParamScalar._raw({tuple((n, x) for n, x in key if n != u): c}, c1s.inv)
            try:
                val = c2 / rest
            except Exception:
                continue
            if e == -1:
                try:
                    val = val.inverse()
                except Exception:
                    continue
            bind[u] = val
    g = f1.substitute(bind)
    for v1, v2 in zip(g.vertices, f2.vertices):
        if v1.e != v2.e or v1.f != v2.f:
            return None
    return bind
