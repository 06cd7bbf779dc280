"""Exact arithmetic in Z[v^(1/2), v^(-1/2)] and its fraction field.

Elements are stored as Laurent polynomials in u = v^(1/2), so a half-integer
power of v is just an odd power of u.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import (DivisionByZero, DivisionInexact, HalfPowerAtEvaluation,
                     NegativeArgument)

IntLike = Union[int, "HalfLaurent"]


class HalfLaurent:
    """Laurent polynomial in u = v^(1/2) with integer coefficients.

    Instances are treated as immutable; the coefficient dict never holds zeros.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for e, a in coeffs.items():
                if a:
                    c[int(e)] = int(a)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> "HalfLaurent":
        obj = object.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    # constructors
    @classmethod
    def const(cls, n: int) -> "HalfLaurent":
        return cls._raw({0: n} if n else {})

    @classmethod
    def u(cls, e: int = 1, coeff: int = 1) -> "HalfLaurent":
        """coeff * u^e."""
        return cls._raw({e: coeff} if coeff else {})

    @classmethod
    def v(cls, e: Union[int, Fraction] = 1, coeff: int = 1) -> "HalfLaurent":
        """coeff * v^e with e an integer or half-integer."""
        return cls.u(_v_to_u(e), coeff)

    # inspection
    def terms(self) -> dict:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def is_unit(self) -> bool:
        return len(self._c) == 1 and next(iter(self._c.values())) in (1, -1)

    def coeff(self, u_exp: int) -> int:
        return self._c.get(u_exp, 0)

    def min_exp(self) -> int:
        return min(self._c)

    def max_exp(self) -> int:
        return max(self._c)

    def is_integral_v(self) -> bool:
        """True when every power of v is an integer."""
        return all(e % 2 == 0 for e in self._c)

    def is_even_v(self) -> bool:
        """True when the element lies in Z[v^2, v^-2]."""
        return all(e % 4 == 0 for e in self._c)

    # arithmetic
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._c:
            return self
        if not self._c:
            return other
        c = dict(self._c)
        for e, a in other._c.items():
            s = c.get(e, 0) + a
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return HalfLaurent._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return HalfLaurent._raw({e: -a for e, a in self._c.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return ZERO
            return HalfLaurent._raw({e: a * other for e, a in self._c.items()})
        if not isinstance(other, HalfLaurent):
            return NotImplemented
        sc, oc = self._c, other._c
        if not sc or not oc:
            return ZERO
        if len(oc) == 1:
            (f, b), = oc.items()
            return HalfLaurent._raw({e + f: a * b for e, a in sc.items()})
        if len(sc) == 1:
            (f, b), = sc.items()
            return HalfLaurent._raw({e + f: a * b for e, a in oc.items()})
        c: dict = {}
        for e, a in sc.items():
            for f, b in oc.items():
                k = e + f
                c[k] = c.get(k, 0) + a * b
        return HalfLaurent._raw({k: x for k, x in c.items() if x})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit():
                raise DivisionInexact("negative power of a non-unit")
            (e, a), = self._c.items()
            return HalfLaurent._raw({e * n: a ** (-n)})
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, u_exp: int) -> "HalfLaurent":
        """Multiply by u^u_exp."""
        if not u_exp:
            return self
        return HalfLaurent._raw({e + u_exp: a for e, a in self._c.items()})

    def divexact(self, other: IntLike) -> "HalfLaurent":
        """Exact quotient; raises DivisionInexact when a remainder is left."""
        other = _coerce(other)
        if not other._c:
            raise DivisionByZero("division by the zero Laurent polynomial")
        if not self._c:
            return ZERO
        if len(other._c) == 1:
            (f, b), = other._c.items()
            c = {}
            for e, a in self._c.items():
                q, r = divmod(a, b)
                if r:
                    raise DivisionInexact(f"{self} is not divisible by {other}")
                c[e - f] = q
            return HalfLaurent._raw(c)
        # long division on the shifted polynomials
        s0, t0 = self.min_exp(), other.min_exp()
        num = _to_poly(self, s0)
        den = _to_poly(other, t0)
        q, r = _poly_divmod_exact(num, den)
        if any(r):
            raise DivisionInexact(f"{self} is not divisible by {other}")
        return _from_poly(q, s0 - t0)

    def __truediv__(self, other):
        return RationalFn(self, other)

    def __rtruediv__(self, other):
        return RationalFn(other, self)

    def __eq__(self, other):
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        if isinstance(other, HalfLaurent):
            return self._c == other._c
        if isinstance(other, RationalFn):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    def bar(self) -> "HalfLaurent":
        return HalfLaurent._raw({-e: a for e, a in self._c.items()})

    def subs_v_squared(self) -> "HalfLaurent":
        """f(v) -> f(v^2)."""
        return HalfLaurent._raw({2 * e: a for e, a in self._c.items()})

    def eval_u(self, x):
        """Evaluate at u = x (any numeric type supporting ** with negatives)."""
        return sum(a * x ** e for e, a in self._c.items())

    # formatting
    def __repr__(self):
        return f"HalfLaurent({str(self)!r})"

    def __str__(self):
        return format_laurent(self)

    def to_json(self) -> dict:
        return {str(e): str(a) for e, a in sorted(self._c.items())}

    @classmethod
    def from_json(cls, d: Mapping[str, str]) -> "HalfLaurent":
        return cls({int(e): int(a) for e, a in d.items()})

    @classmethod
    def parse(cls, text: str) -> "HalfLaurent":
        return _Parser(text).parse()


def _v_to_u(e) -> int:
    e = Fraction(e)
    if (2 * e).denominator != 1:
        raise ValueError(f"v-exponent {e} is not a half-integer")
    return int(2 * e)


def _coerce(x):
    if isinstance(x, HalfLaurent):
        return x
    if isinstance(x, int):
        return HalfLaurent.const(x)
    return NotImplemented


ZERO = HalfLaurent._raw({})
ONE = HalfLaurent._raw({0: 1})


def v_pow(e) -> HalfLaurent:
    """v^e for an integer or half-integer e."""
    return HalfLaurent.v(e)


def u_pow(e: int) -> HalfLaurent:
    return HalfLaurent._raw({e: 1})


def format_laurent(f: HalfLaurent) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for e, a in sorted(f._c.items(), reverse=True):
        if e == 0:
            mono = ""
        elif e == 2:
            mono = "v"
        elif e % 2 == 0:
            mono = f"v^{e // 2}" if e > 0 else f"v^({e // 2})"
        else:
            mono = f"v^({e}/2)"
        mag = abs(a)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        sign = "-" if a < 0 else "+"
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# polynomial helpers on coefficient lists (lowest degree first)
def _to_poly(f: HalfLaurent, shift: int) -> list:
    deg = f.max_exp() - shift
    p = [0] * (deg + 1)
    for e, a in f._c.items():
        p[e - shift] = a
    return p


def _from_poly(p: list, shift: int) -> HalfLaurent:
    return HalfLaurent._raw({i + shift: a for i, a in enumerate(p) if a})


def _trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod_exact(num: list, den: list):
    num = list(num)
    den = _trim(list(den))
    dn = len(den) - 1
    lead = den[-1]
    if len(num) - 1 < dn:
        return [0], num
    q = [0] * (len(num) - dn)
    for k in range(len(num) - 1 - dn, -1, -1):
        c = num[k + dn]
        if c % lead:
            raise DivisionInexact("non-integral quotient coefficient")
        c //= lead
        q[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    return q, num[:dn] if dn else [0]


def _poly_pseudo_rem(a: list, b: list) -> list:
    a = _trim(list(a))
    b = _trim(list(b))
    lb = b[-1]
    while len(a) >= len(b) and a:
        la = a[-1]
        shift = len(a) - len(b)
        a = [x * lb for x in a]
        for j, d in enumerate(b):
            a[j + shift] -= la * d
        a = _trim(a)
    return a


def _content(p: list) -> int:
    g = 0
    for x in p:
        g = math.gcd(g, x)
    return g


def _primitive(p: list) -> list:
    c = _content(p)
    p = [x // c for x in p]
    if p and p[-1] < 0:
        p = [-x for x in p]
    return p


def _poly_gcd(a: list, b: list) -> list:
    """gcd in Z[x] of two nonzero polynomials, primitive with positive lead."""
    a = _trim(list(a))
    b = _trim(list(b))
    ca, cb = _content(a), _content(b)
    g_content = math.gcd(ca, cb)
    a, b = _primitive(a), _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _poly_pseudo_rem(a, b)
        a, b = b, (_primitive(r) if r else [])
    return [g_content * x for x in _primitive(a)]


class RationalFn:
    """Quotient of two HalfLaurent values in reduced canonical form."""

    __slots__ = ("num", "den")

    def __init__(self, num: IntLike, den: IntLike = 1):
        num = _coerce(num)
        den = _coerce(den)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            self.num, self.den = ZERO, ONE
            return
        # strip monomial shifts: both become polynomials with nonzero constant term
        sn, sd = num.min_exp(), den.min_exp()
        pn, pd = _to_poly(num, sn), _to_poly(den, sd)
        g = _poly_gcd(pn, pd)
        if len(g) > 1 or g[0] != 1:
            pn, _ = _poly_divmod_exact(pn, g)
            pd, _ = _poly_divmod_exact(pd, g)
            pn, pd = _trim(pn), _trim(pd)
        if pd[-1] < 0:
            pn = [-x for x in pn]
            pd = [-x for x in pd]
        self.num = _from_poly(pn, sn - sd)
        self.den = _from_poly(pd, 0)

    def is_laurent(self) -> bool:
        return self.den == ONE

    def to_laurent(self) -> HalfLaurent:
        if not self.is_laurent():
            raise DivisionInexact(f"{self} is not a Laurent polynomial")
        return self.num

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        other = _rcoerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFn(self.num * other.den + other.num * self.den,
                          self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        r = object.__new__(RationalFn)
        r.num, r.den = -self.num, self.den
        return r

    def __sub__(self, other):
        other = _rcoerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _rcoerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _rcoerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _rcoerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by zero rational function")
        return RationalFn(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _rcoerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __eq__(self, other):
        other = _rcoerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self.den == ONE:
            return hash(self.num)
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def bar(self) -> "RationalFn":
        return RationalFn(self.num.bar(), self.den.bar())

    def __repr__(self):
        return f"RationalFn({str(self)!r})"

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _rcoerce(x):
    if isinstance(x, RationalFn):
        return x
    if isinstance(x, (int, HalfLaurent)):
        r = object.__new__(RationalFn)
        r.num, r.den = _coerce(x), ONE
        return r
    return NotImplemented


def bar(a):
    return a.bar()


# q-combinatorics: all quantities are in v with [r] = (v^r - v^-r)/(v - v^-1)
def qint(r: int) -> HalfLaurent:
    if r < 0:
        return -qint(-r)
    return HalfLaurent({2 * (r - 1 - 2 * k): 1 for k in range(r)})


def qfactorial(r: int) -> HalfLaurent:
    if r < 0:
        raise NegativeArgument(f"[{r}]! is undefined")
    out = ONE
    for k in range(1, r + 1):
        out = out * qint(k)
    return out


def qdfactorial(k: int) -> HalfLaurent:
    """[k]!! = [k][k-2]...; the convention [-1]!! = [0]!! = 1."""
    if k < -1:
        raise NegativeArgument(f"[{k}]!! is undefined")
    out = ONE
    while k > 0:
        out = out * qint(k)
        k -= 2
    return out


def qbinom(m: int, r: int) -> HalfLaurent:
    if r < 0:
        raise NegativeArgument(f"binomial with r={r}")
    num = ONE
    for k in range(r):
        num = num * qint(m - k)
    return num.divexact(qfactorial(r))


def eval_at_sqrt_prime(f: HalfLaurent, p: int) -> tuple:
    """Return (a, b) with f(sqrt p) = a + b sqrt p, as Fractions."""
    a = Fraction(0)
    b = Fraction(0)
    for e, c in f._c.items():
        if e % 2:
            raise HalfPowerAtEvaluation(f"odd power of v^(1/2) in {f}")
        k = e // 2  # power of v = sqrt p
        if k % 2 == 0:
            a += c * Fraction(p) ** (k // 2)
        else:
            b += c * Fraction(p) ** ((k - 1) // 2)
    return a, b


def truncate_strictly_negative(f: HalfLaurent) -> HalfLaurent:
    return HalfLaurent._raw({e: a for e, a in f._c.items() if e < 0})


def lagrange_in_q(points: Iterable[tuple]) -> list:
    """Interpolating polynomial through (q, value) pairs; coefficients as Fractions."""
    pts = list(points)
    n = len(pts)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(pts):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(pts):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k in range(n):
            coeffs[k] += yi * basis[k] / denom
    return coeffs


_TOKEN = re.compile(r"\s*(?:(\d+)|(v)|(\^)|(\()|(\))|(\+)|(-)|(\*)|(/))")


class _Parser:
    """Recursive-descent parser for literals such as (v^2-1), -3*v^(-1/2), 2v."""

    def __init__(self, text: str):
        self.toks = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"bad coefficient literal {text!r} at {pos}")
            kind = m.lastindex
            self.toks.append((kind, m.group(kind)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> HalfLaurent:
        out = self.expr()
        if self.i != len(self.toks):
            raise ValueError("trailing tokens in coefficient literal")
        return out

    def expr(self):
        sign = 1
        if self.peek()[0] in (6, 7):
            sign = -1 if self.take()[0] == 7 else 1
        out = self.term() * sign
        while self.peek()[0] in (6, 7):
            s = self.take()[0]
            t = self.term()
            out = out + t if s == 6 else out - t
        return out

    def term(self):
        out = self.factor()
        while True:
            k = self.peek()[0]
            if k == 8:
                self.take()
                out = out * self.factor()
            elif k in (1, 2, 4):
                out = out * self.factor()
            else:
                return out

    def factor(self):
        k, val = self.take()
        if k == 1:
            return HalfLaurent.const(int(val))
        if k == 4:
            inner = self.expr()
            if self.take()[0] != 5:
                raise ValueError("unbalanced parentheses")
            base = inner
        elif k == 2:
            base = None
        else:
            raise ValueError(f"unexpected token {val!r}")
        exp = Fraction(1)
        if self.peek()[0] == 3:
            self.take()
            exp = self.exponent()
        if base is None:
            return HalfLaurent.v(exp)
        if exp.denominator != 1:
            raise ValueError("fractional power of a compound expression")
        return base ** int(exp)

    def exponent(self) -> Fraction:
        k, val = self.peek()
        sign = 1
        if k == 7:
            self.take()
            sign = -1
            k, val = self.peek()
        if k == 1:
            self.take()
            return sign * Fraction(int(val))
        if k == 4:
            self.take()
            s = 1
            if self.peek()[0] == 7:
                self.take()
                s = -1
            num = int(self.take()[1])
            den = 1
            if self.peek()[0] == 9:
                self.take()
                den = int(self.take()[1])
            if self.take()[0] != 5:
                raise ValueError("unbalanced exponent")
            return sign * s * Fraction(num, den)
        raise ValueError("bad exponent")
