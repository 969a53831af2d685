"""Actions of U_q(sl(m+1)) on A_q(n) given by generator images.

A vertex carries a diagonal k (``k(x_i) = sign_i q^{exp_i} x_i``) and the images
of ``e`` and ``f`` on each generator.  Images of arbitrary polynomials are
obtained from the twisted Leibniz rules

    e(x_i w) = x_i e(w) + e(x_i) k(w)
    f(x_i w) = k^{-1}(x_i) f(w) + f(x_i) w

applied to normal-ordered monomials with ``x_i`` the lowest-index factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .coeff import PONE, ParamScalar, as_param
from .qspace import QPolynomial, QSpace, RankMismatch

GENS = ("k", "kinv", "e", "f")


class VertexOutOfRange(IndexError):
    pass


@dataclass(frozen=True)
class KAction:
    """Diagonal k: ``k(x_i) = signs[i] * q**exps[i] * x_i``."""

    signs: tuple
    exps: tuple

    def __post_init__(self):
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        object.__setattr__(self, "exps", tuple(int(e) for e in self.exps))
        if len(self.signs) != len(self.exps):
            raise RankMismatch("signs and exponents differ in length")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("k signs must be +1 or -1")

    @classmethod
    def from_exps(cls, *exps: int, signs: Sequence[int] | None = None) -> "KAction":
        return cls(tuple(signs or (1,) * len(exps)), tuple(exps))

    @property
    def n(self) -> int:
        return len(self.exps)

    def is_identity(self) -> bool:
        return all(s == 1 for s in self.signs) and not any(self.exps)

    def scalar(self, i: int, space: QSpace, inverse: bool = False) -> ParamScalar:
        e = self.exps[i - 1]
        c = space.qpow(-e if inverse else e)
        return -c if self.signs[i - 1] < 0 else c

    def weight(self, m, space: QSpace, inverse: bool = False) -> ParamScalar:
        if len(m) != self.n:
            raise RankMismatch(f"monomial of rank {len(m)} against k of rank {self.n}")
        sign = 1
        e = 0
        for s, x, k in zip(self.signs, self.exps, m):
            if k:
                e += x * k
                if s < 0 and k & 1:
                    sign = -sign
        c = space.qpow(-e if inverse else e)
        return -c if sign < 0 else c

    def __str__(self):
        parts = []
        for s, e in zip(self.signs, self.exps):
            t = "1" if e == 0 else ("q" if e == 1 else f"q^{e}")
            parts.append(("-" if s < 0 else "") + t)
        return "(" + ", ".join(parts) + ")"


@dataclass(frozen=True, eq=False)
class VertexAction:
    k: KAction
    e: tuple
    f: tuple

    def __post_init__(self):
        object.__setattr__(self, "e", tuple(self.e))
        object.__setattr__(self, "f", tuple(self.f))
        n = self.k.n
        if len(self.e) != n or len(self.f) != n:
            raise RankMismatch("vertex images do not match the space rank")

    def is_trivial(self) -> bool:
        return all(p.is_zero() for p in self.e + self.f)

    def __eq__(self, other):
        return (isinstance(other, VertexAction) and self.k == other.k
                and self.e == other.e and self.f == other.f)

    def __hash__(self):
        return hash((self.k, self.e, self.f))


@dataclass(eq=False)
class ActionFamily:
    """Images of every Chevalley generator for m vertices on A_q(n).

    ``params`` maps each declared parameter name to its invertibility flag;
    ``labels`` optionally names the catalog entry behind each vertex.
    """

    space: QSpace
    vertices: tuple
    params: dict = field(default_factory=dict)
    labels: tuple = ()
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.vertices = tuple(self.vertices)
        if not self.vertices:
            raise ValueError("a family needs at least one vertex")
        for v in self.vertices:
            if v.k.n != self.space.n:
                raise RankMismatch("k action rank differs from the space rank")
            for p in v.e + v.f:
                if p.space != self.space:
                    raise RankMismatch("generator image lives in another space")
        self.params = dict(self.params)
        self.labels = tuple(self.labels)

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def m(self) -> int:
        return len(self.vertices)

    def vertex(self, t: int) -> VertexAction:
        if not 1 <= t <= len(self.vertices):
            raise VertexOutOfRange(f"vertex {t} outside 1..{len(self.vertices)}")
        return self.vertices[t - 1]

    def invertible(self) -> frozenset:
        return frozenset(n for n, inv in self.params.items() if inv)

    def free_params(self) -> set[str]:
        out = set()
        for v in self.vertices:
            for p in v.e + v.f:
                out |= p.params()
        return out

    def __eq__(self, other):
        return (isinstance(other, ActionFamily) and self.space == other.space
                and self.vertices == other.vertices)

    def __hash__(self):
        return hash((self.space, self.vertices))

    def map_images(self, fn, space: QSpace | None = None, params=None) -> "ActionFamily":
        verts = [VertexAction(v.k, [fn(p) for p in v.e], [fn(p) for p in v.f]) for v in self.vertices]
        return ActionFamily(space or self.space, verts,
                            self.params if params is None else params, self.labels)

    def substitute(self, bindings: Mapping) -> "ActionFamily":
        """Bind parameters; bound names leave the declaration list."""
        params = {n: inv for n, inv in self.params.items() if n not in bindings}
        return self.map_images(lambda p: p.substitute(bindings), params=params)

    def at_q(self, value) -> "ActionFamily":
        """The same family with q fixed to a rational number."""
        space = QSpace(self.space.n, Fraction(value))
        return self.map_images(lambda p: p.substitute(None, value), space=space)

    def describe(self) -> str:
        lines = []
        for t, v in enumerate(self.vertices, 1):
            tag = f" [{self.labels[t - 1]}]" if t - 1 < len(self.labels) and self.labels[t - 1] else ""
            lines.append(f"vertex {t}{tag}: k = {v.k}")
            for i in range(self.n):
                if v.e[i]:
                    lines.append(f"  e(x{i + 1}) = {v.e[i]}")
            for i in range(self.n):
                if v.f[i]:
                    lines.append(f"  f(x{i + 1}) = {v.f[i]}")
        return "\n".join(lines)


def make_vertex_action(space: QSpace, k: KAction, e: Mapping | Sequence = (), f: Mapping | Sequence = ()) -> VertexAction:
    """Build a vertex from sparse images ``{i: poly}`` (1-based) or full lists."""
    def full(images):
        if isinstance(images, Mapping):
            out = [space.zero()] * space.n
            for i, p in images.items():
                out[i - 1] = p
            return out
        images = list(images)
        return images if images else [space.zero()] * space.n
    return VertexAction(k, full(e), full(f))


# -- extension to all of A_q(n) ---------------------------------------------

def _generator_index(m) -> int:
    for i, e in enumerate(m):
        if e:
            return i
    return -1


def _apply_mono(fam: ActionFamily, t: int, gen: str, m) -> QPolynomial:
    key = (t, gen, m)
    hit = fam._cache.get(key)
    if hit is not None:
        return hit
    v = fam.vertices[t - 1]
    sp = fam.space
    if gen == "k" or gen == "kinv":
        out = QPolynomial._raw(sp, {m: v.k.weight(m, sp, inverse=gen == "kinv")})
    else:
        i = _generator_index(m)
        if i < 0:
            out = sp.zero()
        else:
            w = list(m)
            w[i] -= 1
            w = tuple(w)
            xi = sp.gen(i + 1)
            if gen == "e":
                img = v.e[i]
                out = xi * _apply_mono(fam, t, "e", w)
                if img.terms:
                    out = out + img * QPolynomial._raw(sp, {w: v.k.weight(w, sp)})
            else:
                img = v.f[i]
                out = (xi * _apply_mono(fam, t, "f", w)).scale(v.k.scalar(i + 1, sp, inverse=True))
                if img.terms:
                    out = out + img * QPolynomial._raw(sp, {w: PONE})
    fam._cache[key] = out
    return out


def extend_apply(fam: ActionFamily, vertex: int, gen: str, p: QPolynomial) -> QPolynomial:
    """Image of ``p`` under generator ``gen`` of ``vertex``."""
    if gen not in GENS:
        raise ValueError(f"unknown generator {gen!r}")
    fam.vertex(vertex)
    if p.space.n != fam.space.n:
        raise RankMismatch(f"polynomial rank {p.space.n}, family rank {fam.space.n}")
    if p.space != fam.space:
        raise RankMismatch("polynomial and family use different q conventions")
    out = fam.space.zero()
    for m, c in p.terms.items():
        img = _apply_mono(fam, vertex, gen, m)
        if img.terms:
            out = out + img.scale(c)
    return out


def apply_word(fam: ActionFamily, word: Sequence[tuple[int, str]], p: QPolynomial) -> QPolynomial:
    """Apply a product of generators, written left to right (rightmost acts first)."""
    for t, g in reversed(word):
        if not p.terms:
            return p
        p = extend_apply(fam, t, g, p)
    return p


def weight(k: KAction, m, space: QSpace | None = None) -> ParamScalar:
    """k-eigenvalue of the monomial ``m``."""
    return k.weight(tuple(m), space or QSpace(len(m)))


# -- diagonal rescalings --------------------------------------------------------

@dataclass(frozen=True)
class ScalingMap:
    """Algebra automorphism ``x_i -> c_i x_i`` with each c_i a unit."""

    factors: tuple

    def __post_init__(self):
        fs = tuple(as_param(c) for c in self.factors)
        for c in fs:
            if not (c.is_unit() or (c.is_scalar() and c)):
                raise ValueError(f"scaling factor {c} is not invertible")
        object.__setattr__(self, "factors", fs)

    def inverse(self) -> "ScalingMap":
        return ScalingMap(tuple(c.inverse() for c in self.factors))

    def compose(self, other: "ScalingMap") -> "ScalingMap":
        """self after other."""
        return ScalingMap(tuple(a * b for a, b in zip(self.factors, other.factors)))

    def mono_factor(self, m) -> ParamScalar:
        out = PONE
        for c, e in zip(self.factors, m):
            if e:
                out = out * c ** e
        return out

    def apply(self, p: QPolynomial) -> QPolynomial:
        if len(self.factors) != p.space.n:
            raise RankMismatch("scaling map rank differs from polynomial rank")
        t = {}
        for m, c in p.terms.items():
            v = c * self.mono_factor(m)
            if v:
                t[m] = v
        return QPolynomial._raw(p.space, t)


def conjugate(fam: ActionFamily, psi: ScalingMap) -> ActionFamily:
    """Transport the action along psi: each generator g becomes psi o g o psi^-1."""
    if len(psi.factors) != fam.n:
        raise RankMismatch("scaling map rank differs from family rank")
    inv = [c.inverse() for c in psi.factors]
    verts = []
    for v in fam.vertices:
        e = [psi.apply(p).scale(inv[i]) for i, p in enumerate(v.e)]
        f = [psi.apply(p).scale(inv[i]) for i, p in enumerate(v.f)]
        verts.append(VertexAction(v.k, e, f))
    params = dict(fam.params)
    for c in psi.factors:
        for name in c.params():
            params.setdefault(name, True)
    return ActionFamily(fam.space, verts, params, fam.labels)


def check_iso(f1: ActionFamily, f2: ActionFamily, psi: ScalingMap):
    """Return (True, None) when psi carries f1 onto f2, else (False, witness).

    The witness is the first differing ``(vertex, generator, i)``.
    """
    if f1.n != f2.n or f1.m != f2.m:
        raise RankMismatch("families differ in shape")
    g = conjugate(f1, psi)
    for t, (a, b) in enumerate(zip(g.vertices, f2.vertices), 1):
        if a.k != b.k:
            return False, (t, "k", None)
        for name in ("e", "f"):
            for i, (pa, pb) in enumerate(zip(getattr(a, name), getattr(b, name)), 1):
                if pa != pb:
                    return False, (t, name, i)
    return True, None


def scalar_images(values: Iterable) -> ScalingMap:
    return ScalingMap(tuple(values))
