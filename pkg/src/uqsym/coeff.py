"""Exact scalars.

``QScalar`` is an element of Q(q) kept as a reduced quotient of polynomials
with rational coefficients (denominator monic).  ``ParamScalar`` is a Laurent
polynomial in named parameters whose coefficients are ``QScalar``; negative
exponents are only allowed on parameters flagged invertible.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping


class DivisionByZero(ZeroDivisionError):
    pass


class NonInvertibleDivisor(ValueError):
    pass


class RootOfUnityRisk(ValueError):
    pass


class ZeroBinding(ValueError):
    pass


# -- dense univariate polynomials: tuples of coefficients, lowest degree first

def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _trim(a) -> tuple:
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return tuple(_norm(c) for c in a[:n])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    r = list(a)
    for i, c in enumerate(b):
        r[i] += c
    return _trim(r)


def _pneg(a):
    return tuple(-c for c in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        c = a[0]
        return _trim([c * y for y in b])
    if len(b) == 1:
        c = b[0]
        return _trim([x * c for x in a])
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    r[i + j] += x * y
    return _trim(r)


def _val(a):
    for i, c in enumerate(a):
        if c:
            return i
    return len(a)


def _is_mono(a):
    return bool(a) and _val(a) == len(a) - 1


def _pdivmod(a, b):
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    if len(a) <= db:
        return (), _trim(a)
    quo = [0] * (len(a) - db)
    for i in range(len(a) - 1 - db, -1, -1):
        c = a[i + db]
        if c:
            c = _norm(Fraction(c) / lb)
            quo[i] = c
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return _trim(quo), _trim(a[:db])


def _pexact(a, b):
    q, r = _pdivmod(a, b)
    assert not r
    return q


def _monic(a):
    lc = a[-1]
    if lc == 1:
        return a
    return tuple(_norm(Fraction(c) / lc) for c in a)


def _pgcd(a, b):
    if not a:
        return _monic(b) if b else (1,)
    if not b:
        return _monic(a)
    if len(a) == 1 or len(b) == 1:
        return (1,)
    if _is_mono(a) or _is_mono(b):
        k = min(_val(a), _val(b))
        return (0,) * k + (1,)
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    return _monic(a)


def _peval(a, x):
    r = Fraction(0)
    for c in reversed(a):
        r = r * x + c
    return r


_ONE = (1,)


class QScalar:
    """Reduced rational function in q with exact rational coefficients."""

    __slots__ = ("num", "den", "_h")

    def __init__(self, num: Iterable = (), den: Iterable = (1,)):
        num = _trim(tuple(num))
        den = _trim(tuple(den))
        if not den:
            raise DivisionByZero("zero denominator")
        n, d = _reduce(num, den)
        self.num, self.den, self._h = n, d, None

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num, obj.den, obj._h = num, den, None
        return obj

    @classmethod
    def const(cls, c) -> "QScalar":
        c = _norm(Fraction(c)) if not isinstance(c, int) else c
        return cls._raw((c,) if c else (), _ONE)

    @classmethod
    def qpow(cls, k: int) -> "QScalar":
        return _qpow(k)

    # predicates
    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == _ONE and self.den == _ONE

    def is_const(self) -> bool:
        return len(self.num) <= 1 and self.den == _ONE

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError("not a constant")
        return Fraction(self.num[0]) if self.num else Fraction(0)

    def monomial_exponent(self):
        """Return (c, k) when self == c*q^k, else None."""
        if not self.num or not _is_mono(self.num) or not _is_mono(self.den):
            return None
        return self.num[-1], (len(self.num) - 1) - (len(self.den) - 1)

    # arithmetic
    def __add__(self, other):
        other = _as_q(other)
        if other is NotImplemented:
            return other
        a, b = self, other
        if not a.num:
            return b
        if not b.num:
            return a
        if a.den == b.den:
            return QScalar._from(_padd(a.num, b.num), a.den)
        if _is_mono(a.den) and _is_mono(b.den):
            da, db = len(a.den) - 1, len(b.den) - 1
            d = max(da, db)
            na = (0,) * (d - da) + a.num
            nb = (0,) * (d - db) + b.num
            return QScalar._from(_padd(na, nb), (0,) * d + (1,))
        g = _pgcd(a.den, b.den)
        ad, bd = _pexact(a.den, g), _pexact(b.den, g)
        num = _padd(_pmul(a.num, bd), _pmul(b.num, ad))
        return QScalar._from(num, _pmul(a.den, bd))

    __radd__ = __add__

    def __neg__(self):
        return QScalar._raw(_pneg(self.num), self.den)

    def __sub__(self, other):
        other = _as_q(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_q(other)
        if other is NotImplemented:
            return other
        a, b = self, other
        if not a.num or not b.num:
            return ZERO
        if a.den == _ONE and b.den == _ONE:
            return QScalar._raw(_pmul(a.num, b.num), _ONE)
        g1 = _pgcd(a.num, b.den)
        g2 = _pgcd(b.num, a.den)
        an, bd = (a.num, b.den) if g1 == _ONE else (_pexact(a.num, g1), _pexact(b.den, g1))
        bn, ad = (b.num, a.den) if g2 == _ONE else (_pexact(b.num, g2), _pexact(a.den, g2))
        num, den = _pmul(an, bn), _pmul(ad, bd)
        lc = den[-1]
        if lc != 1:
            num = tuple(_norm(Fraction(c) / lc) for c in num)
            den = _monic(den)
        return QScalar._raw(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "QScalar":
        if not self.num:
            raise DivisionByZero("inverse of zero")
        lc = self.num[-1]
        num = self.den
        if lc != 1:
            num = tuple(_norm(Fraction(c) / lc) for c in num)
        return QScalar._raw(num, _monic(self.num))

    def __truediv__(self, other):
        other = _as_q(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _as_q(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        r = ONE
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def shift(self, k: int) -> "QScalar":
        """Multiply by q^k."""
        if k == 0 or not self.num:
            return self
        return self * _qpow(k)

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        d = _peval(self.den, x)
        if d == 0:
            raise DivisionByZero(f"pole at q = {x}")
        return _peval(self.num, x) / d

    def __eq__(self, other):
        if isinstance(other, QScalar):
            return self.num == other.num and self.den == other.den
        o = _as_q(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.num, self.den))
        return self._h

    def __bool__(self):
        return bool(self.num)

    @classmethod
    def _from(cls, num, den):
        n, d = _reduce(num, den)
        return cls._raw(n, d)

    def __repr__(self):
        return f"QScalar({self})"

    def __str__(self):
        return format_q(self)

    def is_single_term(self) -> bool:
        """True when the value prints without surrounding parentheses needs."""
        return len([c for c in self.num if c]) <= 1 and _is_mono(self.den)


def _reduce(num, den):
    if not num:
        return (), _ONE
    if len(den) == 1:
        c = den[0]
        if c != 1:
            num = tuple(_norm(Fraction(x) / c) for x in num)
        return num, _ONE
    if _is_mono(den):
        k = min(_val(num), len(den) - 1)
        num, den = num[k:], den[k:]
    else:
        g = _pgcd(num, den)
        if g != _ONE:
            num, den = _pexact(num, g), _pexact(den, g)
    lc = den[-1]
    if lc != 1:
        num = tuple(_norm(Fraction(x) / lc) for x in num)
        den = _monic(den)
    return num, den


@lru_cache(maxsize=None)
def _qpow(k: int) -> QScalar:
    if k >= 0:
        return QScalar._raw((0,) * k + (1,), _ONE)
    return QScalar._raw(_ONE, (0,) * (-k) + (1,))


def _as_q(x):
    if isinstance(x, QScalar):
        return x
    if isinstance(x, (int, Fraction)) or isinstance(x, Rational):
        return QScalar.const(x)
    return NotImplemented


ZERO = QScalar._raw((), _ONE)
ONE = QScalar._raw(_ONE, _ONE)
Q = QScalar._raw((0, 1), _ONE)


def _fmt_rat(c) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _fmt_laurent(coeffs, shift: int) -> str:
    """Format sum c_i q^(i+shift), highest power first."""
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        e = i + shift
        mag = abs(Fraction(c))
        if e == 0:
            body = _fmt_rat(mag)
        else:
            qs = "q" if e == 1 else f"q^{e}"
            body = qs if mag == 1 else f"{_fmt_rat(mag)}*{qs}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def format_q(x: QScalar) -> str:
    if _is_mono(x.den):
        return _fmt_laurent(x.num, -(len(x.den) - 1))
    ns = _fmt_laurent(x.num, 0)
    if len([c for c in x.num if c]) > 1:
        ns = f"({ns})"
    return f"{ns}*({_fmt_laurent(x.den, 0)})^-1"


def qint(k: int) -> QScalar:
    """(k)_q = (q^k - 1)/(q - 1), for any integer k."""
    if k >= 0:
        return QScalar._raw((1,) * k, _ONE)
    # (q^k - 1)/(q - 1) = -q^k (1 + q + ... + q^(|k|-1))
    return QScalar._raw((-1,) * (-k), (0,) * (-k) + (1,))


# -- parameters ---------------------------------------------------------------

Key = tuple  # tuple of (name, exponent) pairs, sorted by name, exponents != 0


@lru_cache(maxsize=200_000)
def _kmul(a: Key, b: Key) -> Key:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for n, e in b:
        v = d.get(n, 0) + e
        if v:
            d[n] = v
        else:
            del d[n]
    return tuple(sorted(d.items()))


def _kpow(a: Key, k: int) -> Key:
    return tuple((n, e * k) for n, e in a) if k else ()


class ParamScalar:
    """Finite sum of QScalar coefficients times parameter monomials."""

    __slots__ = ("terms", "inv", "_h")

    def __init__(self, terms: Mapping | None = None, invertible: Iterable[str] = ()):
        inv = frozenset(invertible)
        clean = {}
        for key, c in (terms or {}).items():
            key = tuple(sorted((n, e) for n, e in key if e))
            c = _as_q(c)
            if c is NotImplemented:
                raise TypeError("coefficient must be rational or QScalar")
            for n, e in key:
                if e < 0 and n not in inv:
                    raise NonInvertibleDivisor(f"negative power of non-invertible parameter {n}")
            if c.num:
                prev = clean.get(key)
                c = c if prev is None else prev + c
                if c.num:
                    clean[key] = c
                else:
                    del clean[key]
        self.terms, self.inv, self._h = clean, inv, None

    @classmethod
    def _raw(cls, terms, inv):
        obj = cls.__new__(cls)
        obj.terms, obj.inv, obj._h = terms, inv, None
        return obj

    @classmethod
    def const(cls, c) -> "ParamScalar":
        c = _as_q(c)
        return cls._raw({(): c} if c.num else {}, frozenset())

    @classmethod
    def param(cls, name: str, invertible: bool = False, power: int = 1) -> "ParamScalar":
        inv = frozenset([name]) if invertible else frozenset()
        if power < 0 and not invertible:
            raise NonInvertibleDivisor(f"negative power of non-invertible parameter {name}")
        return cls._raw({((name, power),) if power else (): ONE}, inv)

    @classmethod
    def q(cls, k: int = 1) -> "ParamScalar":
        return cls._raw({(): _qpow(k)}, frozenset())

    # predicates and accessors
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def params(self) -> set[str]:
        return {n for key in self.terms for n, _ in key}

    def is_scalar(self) -> bool:
        return all(not key for key in self.terms)

    def scalar(self) -> QScalar:
        if not self.terms:
            return ZERO
        if not self.is_scalar():
            raise ValueError("ParamScalar depends on parameters")
        return self.terms[()]

    def is_single_term(self) -> bool:
        return len(self.terms) == 1

    def is_unit(self) -> bool:
        """Single term whose parameters are all invertible."""
        if len(self.terms) != 1:
            return False
        (key,) = self.terms
        return all(n in self.inv for n, _ in key)

    def items(self):
        return sorted(self.terms.items())

    # arithmetic
    def __add__(self, other):
        other = _as_p(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        t = dict(self.terms)
        for k, c in other.terms.items():
            prev = t.get(k)
            if prev is None:
                t[k] = c
            else:
                s = prev + c
                if s.num:
                    t[k] = s
                else:
                    del t[k]
        return ParamScalar._raw(t, self.inv | other.inv)

    __radd__ = __add__

    def __neg__(self):
        return ParamScalar._raw({k: -c for k, c in self.terms.items()}, self.inv)

    def __sub__(self, other):
        other = _as_p(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_p(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return PZERO
        inv = self.inv | other.inv if other.inv is not self.inv else self.inv
        if len(self.terms) == 1 and len(other.terms) == 1:
            ((k1, c1),) = self.terms.items()
            ((k2, c2),) = other.terms.items()
            return ParamScalar._raw({_kmul(k1, k2): c1 * c2}, inv)
        t: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = _kmul(k1, k2)
                c = c1 * c2
                prev = t.get(k)
                t[k] = c if prev is None else prev + c
        return ParamScalar._raw({k: c for k, c in t.items() if c.num}, inv)

    __rmul__ = __mul__

    def scale(self, c: QScalar) -> "ParamScalar":
        if not c.num:
            return PZERO
        return ParamScalar._raw({k: v * c for k, v in self.terms.items()}, self.inv)

    def inverse(self) -> "ParamScalar":
        if not self.terms:
            raise DivisionByZero("division by zero")
        if len(self.terms) != 1:
            raise NonInvertibleDivisor(f"divisor {self} is not a single term")
        ((k, c),) = self.terms.items()
        for n, _ in k:
            if n not in self.inv:
                raise NonInvertibleDivisor(f"divisor involves non-invertible parameter {n}")
        return ParamScalar._raw({_kpow(k, -1): c.inverse()}, self.inv)

    def __truediv__(self, other):
        other = _as_p(other)
        if other is NotImplemented:
            return other
        if other.is_scalar():
            if not other.terms:
                raise DivisionByZero("division by zero")
            return self.scale(other.terms[()].inverse())
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _as_p(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        r = PONE
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def shift(self, k: int) -> "ParamScalar":
        if not k:
            return self
        return ParamScalar._raw({key: c.shift(k) for key, c in self.terms.items()}, self.inv)

    def with_invertible(self, names: Iterable[str]) -> "ParamScalar":
        return ParamScalar._raw(self.terms, self.inv | frozenset(names))

    def coefficient(self, key: Key) -> QScalar:
        return self.terms.get(tuple(sorted(key)), ZERO)

    def __eq__(self, other):
        o = other if isinstance(other, ParamScalar) else _as_p(other)
        if o is NotImplemented:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self.terms.items()))
        return self._h

    def __repr__(self):
        return f"ParamScalar({self})"

    def __str__(self):
        return format_param(self)


def _as_p(x):
    if isinstance(x, ParamScalar):
        return x
    q = _as_q(x)
    if q is NotImplemented:
        return q
    return ParamScalar._raw({(): q} if q.num else {}, frozenset())


PZERO = ParamScalar._raw({}, frozenset())
PONE = ParamScalar._raw({(): ONE}, frozenset())


def as_param(x) -> ParamScalar:
    p = _as_p(x)
    if p is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as a scalar")
    return p


def format_key(key: Key) -> str:
    return "*".join(n if e == 1 else f"{n}^{e}" for n, e in key)


def format_term(c: QScalar, key: Key) -> tuple[str, str]:
    """Return (sign, body) for one term; body is parseable."""
    neg = False
    if c.is_single_term():
        if c.num[-1] < 0:
            neg, c = True, -c
        cs = "" if c.is_one() else str(c)
    else:
        cs = f"({c})"
    ks = format_key(key)
    if cs and ks:
        body = f"{cs}*{ks}"
    else:
        body = cs or ks or "1"
    return ("-" if neg else "+"), body


def format_param(p: ParamScalar) -> str:
    if not p.terms:
        return "0"
    parts = [format_term(c, k) for k, c in p.items()]
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


# -- substitution -------------------------------------------------------------

def check_q_value(q_value) -> Fraction:
    qv = Fraction(q_value)
    if qv == 0:
        raise ZeroBinding("q must be nonzero")
    if abs(qv) == 1 and qv != 1:
        raise RootOfUnityRisk(f"q = {qv} is a root of unity")
    return qv


def substitute(a, bindings: Mapping | None = None, q_value=None) -> ParamScalar:
    """Bind parameters (and optionally q) in ``a``.

    ``q_value = 1`` is accepted as classical mode; other values of modulus one
    are rejected.  A pole at the chosen q raises DivisionByZero.
    """
    a = as_param(a)
    bindings = {n: as_param(v) for n, v in (bindings or {}).items()}
    qv = None if q_value is None else check_q_value(q_value)
    out = PZERO
    for key, c in a.terms.items():
        if qv is not None:
            c = QScalar.const(c.evaluate(qv))
            if not c:
                continue
        term = ParamScalar._raw({(): c}, a.inv)
        rest = []
        for n, e in key:
            if n in bindings:
                v = bindings[n]
                if qv is not None:
                    v = substitute(v, None, qv)
                if not v.terms and (e < 0 or n in a.inv):
                    raise ZeroBinding(f"invertible parameter {n} bound to zero")
                if e < 0:
                    v = v.inverse()
                    e = -e
                term = term * v ** e
            else:
                rest.append((n, e))
        if rest:
            term = term * ParamScalar._raw({tuple(rest): ONE}, a.inv)
        out = out + term
    # keep invertibility knowledge of unbound names
    return ParamScalar._raw(out.terms, out.inv | a.inv)
