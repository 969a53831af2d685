"""Polynomials in the quantum n-space A_q(n).

Generators satisfy ``x_i x_j = q x_j x_i`` for ``i > j``; monomials are stored
in normal order ``x_1^{m_1} ... x_n^{m_n}`` as exponent tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .coeff import PONE, PZERO, ParamScalar, as_param, check_q_value, format_term, substitute

Monomial = tuple  # exponent tuple of length n


class RankMismatch(ValueError):
    pass


@dataclass(frozen=True)
class QSpace:
    """The algebra A_q(n); ``qval`` fixes q to a rational number when set.

    ``qval = 1`` gives the commutative polynomial ring.
    """

    n: int
    qval: Fraction | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("rank must be positive")
        if self.qval is not None:
            object.__setattr__(self, "qval", Fraction(self.qval))
            if self.qval != 1:
                check_q_value(self.qval)

    def qpow(self, k: int) -> ParamScalar:
        return _qpow_cached(self.qval, k)

    def scalar(self, x) -> ParamScalar:
        """Coerce a scalar into this space's coefficient convention."""
        p = as_param(x)
        if self.qval is not None:
            p = substitute(p, None, self.qval)
        return p

    def gen(self, i: int) -> "QPolynomial":
        if not 1 <= i <= self.n:
            raise IndexError(f"generator x{i} outside 1..{self.n}")
        m = [0] * self.n
        m[i - 1] = 1
        return QPolynomial(self, {tuple(m): PONE})

    def one(self) -> "QPolynomial":
        return QPolynomial(self, {(0,) * self.n: PONE})

    def zero(self) -> "QPolynomial":
        return QPolynomial(self, {})

    def const(self, c) -> "QPolynomial":
        c = self.scalar(c)
        return QPolynomial(self, {(0,) * self.n: c} if c else {})

    def monomial(self, m: Monomial, c=PONE) -> "QPolynomial":
        if len(m) != self.n:
            raise RankMismatch(f"monomial of length {len(m)} in rank {self.n}")
        c = as_param(c)
        return QPolynomial(self, {tuple(m): c} if c else {})

    def __str__(self):
        return f"A_q({self.n})" if self.qval is None else f"A_{self.qval}({self.n})"


@lru_cache(maxsize=None)
def _qpow_cached(qval, k):
    if qval is None:
        return ParamScalar.q(k)
    return ParamScalar.const(qval ** k)


def mono_mul(a: Monomial, b: Monomial) -> tuple[int, Monomial]:
    """Normal-order the product x^a x^b: returns (k, c) with x^a x^b = q^k x^c."""
    if len(a) != len(b):
        raise RankMismatch(f"ranks {len(a)} and {len(b)}")
    return _mono_mul(a, b)


@lru_cache(maxsize=500_000)
def _mono_mul(a, b):
    # moving each x_j of b leftwards past every x_i of a with i > j costs a q
    k = 0
    tail = 0
    for i in range(len(a) - 1, -1, -1):
        k += tail * b[i]
        tail += a[i]
    return k, tuple(x + y for x, y in zip(a, b))


def degree(m: Monomial) -> int:
    return sum(m)


def grlex_key(m: Monomial):
    """Sort key: total degree, then x1 > x2 > ... lexicographically."""
    return (sum(m), tuple(-e for e in m))


def monomials_of_degree(n: int, d: int):
    """All exponent tuples of total degree d, in grlex order."""
    if n == 1:
        return [(d,)]
    out = []
    for a in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - a):
            out.append((a,) + rest)
    return out


def format_monomial(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m, 1):
        if e == 1:
            parts.append(f"x{i}")
        elif e:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


class QPolynomial:
    """Element of A_q(n): map from normal-ordered monomials to ParamScalar."""

    __slots__ = ("space", "terms")

    def __init__(self, space: QSpace, terms: Mapping | None = None):
        self.space = space
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def _raw(cls, space, terms):
        obj = cls.__new__(cls)
        obj.space = space
        obj.terms = terms
        return obj

    @property
    def rank(self) -> int:
        return self.space.n

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def items(self):
        """Terms in graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]))

    def monomials(self):
        return [m for m, _ in self.items()]

    def coefficient(self, m: Monomial) -> ParamScalar:
        return self.terms.get(tuple(m), PZERO)

    def degrees(self) -> set[int]:
        return {sum(m) for m in self.terms}

    def params(self) -> set[str]:
        out = set()
        for c in self.terms.values():
            out |= c.params()
        return out

    def _check(self, other: "QPolynomial"):
        if other.space != self.space:
            if other.space.n != self.space.n:
                raise RankMismatch(f"ranks {self.space.n} and {other.space.n}")
            raise RankMismatch("polynomials use different q conventions")

    def __add__(self, other):
        if not isinstance(other, QPolynomial):
            other = self.space.const(other)
        self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        t = dict(self.terms)
        for m, c in other.terms.items():
            prev = t.get(m)
            if prev is None:
                t[m] = c
            else:
                s = prev + c
                if s.terms:
                    t[m] = s
                else:
                    del t[m]
        return QPolynomial._raw(self.space, t)

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial._raw(self.space, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, QPolynomial):
            other = self.space.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QPolynomial":
        c = as_param(c)
        if not c.terms:
            return self.space.zero()
        if c == PONE:
            return self
        t = {}
        for m, v in self.terms.items():
            p = v * c
            if p.terms:
                t[m] = p
        return QPolynomial._raw(self.space, t)

    def __mul__(self, other):
        if not isinstance(other, QPolynomial):
            try:
                return self.scale(self.space.scalar(other))
            except TypeError:
                return NotImplemented
        self._check(other)
        sp = self.space
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                k, m = _mono_mul(m1, m2)
                c = c1 * c2
                if k:
                    c = c.shift(k) if sp.qval is None else c * sp.qpow(k)
                prev = t.get(m)
                t[m] = c if prev is None else prev + c
        return QPolynomial._raw(sp, {m: c for m, c in t.items() if c.terms})

    def __rmul__(self, other):
        return self.scale(self.space.scalar(other))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        r = self.space.one()
        for _ in range(k):
            r = r * self
        return r

    def homogeneous_component(self, d: int) -> "QPolynomial":
        return QPolynomial._raw(self.space, {m: c for m, c in self.terms.items() if sum(m) == d})

    def map_coefficients(self, fn) -> "QPolynomial":
        t = {}
        for m, c in self.terms.items():
            v = fn(c)
            if v:
                t[m] = v
        return QPolynomial._raw(self.space, t)

    def substitute(self, bindings: Mapping | None = None, q_value=None) -> "QPolynomial":
        """Bind parameters; with ``q_value`` the result lives in the numeric space."""
        space = self.space if q_value is None else QSpace(self.space.n, Fraction(q_value))
        t = {}
        for m, c in self.terms.items():
            v = substitute(c, bindings, q_value)
            if v:
                t[m] = v
        return QPolynomial._raw(space, t)

    def __eq__(self, other):
        if isinstance(other, QPolynomial):
            return self.space == other.space and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.space, frozenset(self.terms.items())))

    def __repr__(self):
        return f"QPolynomial({self})"

    def __str__(self):
        return format_poly(self)


def format_poly(p: QPolynomial) -> str:
    """Parseable text for ``p``, terms in graded-lex order."""
    if not p.terms:
        return "0"
    pieces = []
    for m, c in p.items():
        ms = format_monomial(m)
        for key, qc in c.items():
            sign, body = format_term(qc, key)
            if ms:
                body = ms if body == "1" else f"{body}*{ms}"
            pieces.append((sign, body))
    s = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        s += f" {sign} {body}"
    return s


def poly_from_terms(space: QSpace, terms: Iterable[tuple[Monomial, object]]) -> QPolynomial:
    out = space.zero()
    for m, c in terms:
        out = out + space.monomial(tuple(m), as_param(c))
    return out
