"""Sparse linear combinations over Z[v^(±1/2)] and tensors of them."""
from __future__ import annotations

from typing import Iterable

from .errors import ContextMismatch
from .scalars import ONE, ZERO, HalfLaurent, RationalFn


def acc(d: dict, key, c) -> None:
    """d[key] += c, dropping zeros."""
    s = d.get(key)
    s = c if s is None else s + c
    if s:
        d[key] = s
    else:
        d.pop(key, None)


def add_into(d: dict, other: dict, scale=ONE) -> None:
    if scale == ONE:
        for k, c in other.items():
            acc(d, k, c)
    else:
        for k, c in other.items():
            acc(d, k, c * scale)


def _scalar(c):
    if isinstance(c, int):
        return HalfLaurent.const(c)
    if isinstance(c, (HalfLaurent, RationalFn)):
        return c
    raise TypeError(f"not a scalar: {c!r}")


class Element:
    """Finite combination of basis keys of an algebra `alg`."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms: dict | None = None):
        self.alg = alg
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    def _same(self, other):
        if not isinstance(other, Element) or other.alg is not self.alg:
            raise ContextMismatch("elements belong to different algebras")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._same(other)
        d = dict(self.terms)
        add_into(d, other.terms)
        return Element(self.alg, d)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Element":
        c = _scalar(c)
        if not c:
            return Element(self.alg)
        return Element(self.alg, {k: x * c for k, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, HalfLaurent, RationalFn)):
            return self.scale(other)
        self._same(other)
        return Element(self.alg, self.alg.mul_vec(self.terms, other.terms))

    def __rmul__(self, other):
        if isinstance(other, (int, HalfLaurent, RationalFn)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, Element):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, key):
        return self.terms.get(key, ZERO)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: self.alg.sort_key(kv[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{self.alg.format_key(k)}" for k, c in self.items())

    __repr__ = __str__


class TensorAlgebra:
    """Tensor product of algebras with the componentwise product."""

    def __init__(self, *factors):
        self.factors = tuple(factors)

    def mul_basis(self, k1: tuple, k2: tuple) -> dict:
        out = {(): ONE}
        for alg, a, b in zip(self.factors, k1, k2):
            prod = alg.mul_basis(a, b)
            nxt = {}
            for pre, c in out.items():
                for k, d in prod.items():
                    acc(nxt, pre + (k,), c * d)
            out = nxt
        return out

    def mul_vec(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for k1, c1 in x.items():
            for k2, c2 in y.items():
                add_into(out, self.mul_basis(k1, k2), c1 * c2)
        return out

    def one_key(self) -> tuple:
        return tuple(f.one_key() for f in self.factors)

    def one(self) -> Element:
        return Element(self, {self.one_key(): ONE})

    def sort_key(self, k):
        return tuple(f.sort_key(x) for f, x in zip(self.factors, k))

    def format_key(self, k) -> str:
        return " ⊗ ".join(f.format_key(x) for f, x in zip(self.factors, k))

    # tensor builders
    def pure(self, *elements: Element) -> Element:
        out = {(): ONE}
        for f, e in zip(self.factors, elements):
            if e.alg is not f:
                raise ContextMismatch("tensor factor from the wrong algebra")
            nxt = {}
            for pre, c in out.items():
                for k, d in e.terms.items():
                    acc(nxt, pre + (k,), c * d)
            out = nxt
        return Element(self, out)


def tensor_apply(maps: Iterable, x: Element, target) -> Element:
    """Apply linear maps factorwise; each map sends a basis key to a dict."""
    maps = list(maps)
    out: dict = {}
    for key, c in x.terms.items():
        parts = {(): c}
        for m, k in zip(maps, key):
            img = m(k)
            nxt = {}
            for pre, d in parts.items():
                for kk, e in img.items():
                    acc(nxt, pre + (kk,), d * e)
            parts = nxt
        add_into(out, parts)
    return Element(target, out)


def flatten_key(k):
    """((a, b), c) -> (a, b, c) for nested tensors."""
    out = []
    for part in k:
        if isinstance(part, tuple) and part and isinstance(part[0], tuple) and \
                isinstance(part[0][0], tuple):
            out.extend(part)
        else:
            out.append(part)
    return tuple(out)
