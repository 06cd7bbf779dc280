"""Bar involution, the rescaled basis K_α ⋄ 𝔘_λ and the dual canonical basis.

The bar map is the anti-automorphism with bar(u_{α_i}) = v^{-1} u_{α_i},
bar(K_α) = K_α and scalars sent through v ↦ v^{-1}.  It is computed slice by
slice: every u_λ of dimension ν is written over Q(u) in the spanning set
u_{α_i} * u_μ (dim μ = ν - α_i) modulo K-dressed classes, which is the word
spanning set assembled one letter at a time.  Words are reversed by the bar,
so bar(u_i * u_μ) = v^{-1} bar(u_μ) * u_i.

The dual canonical basis 𝔏_{α,λ} of a slice is then found by the usual
triangular recursion in the basis K_α ⋄ 𝔘_λ.
"""
from __future__ import annotations

import csv
import io
import random
from fractions import Fraction
from typing import Sequence

from .elements import Element, acc, add_into
from .errors import (GradingMismatch, NotIntegral, NotUnitriangular, ParityObstruction,
                     SpanFailure, TooLarge)
from .ihall import IHallAlgebra
from .linalg import rref
from .scalars import ONE, HalfLaurent, RationalFn, v_pow

WORD_CAP = 8
_PRIME = 2_147_483_647


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _boxes(nu):
    out = [()]
    for m in nu:
        out = [p + (k,) for p in out for k in range(m + 1)]
    return out


def _mod_eval(c: HalfLaurent, x: int) -> int:
    return sum(a * pow(x, e, _PRIME) for e, a in c.items()) % _PRIME


def _solve_identity(m: list) -> list:
    """Inverse of a square matrix of RationalFn by Gauss-Jordan."""
    n = len(m)
    a = [list(row) + [RationalFn(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            raise SpanFailure("singular spanning block")
        a[c], a[piv] = a[piv], a[c]
        inv = RationalFn(1) / a[c][c]
        a[c] = [x * inv if x else x for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y if y else x for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


class DCB:
    """Bar involution and dual canonical basis tables for one iHall algebra.

    `extension` selects the linear extension of ≺ used to order each slice;
    "asc" and "desc" break ties in opposite directions.
    """

    def __init__(self, alg: IHallAlgebra, extension: str = "asc"):
        if extension not in ("asc", "desc"):
            raise ValueError(f"unknown linear extension {extension!r}")
        self.alg = alg
        self.q = alg.q
        self.rs = alg.rs
        self.extension = extension
        self._bar_u = {}
        self._bar_key = {}
        self._slices = {}
        self._tables = {}
        self._homrow = {}

    # ------------------------------------------------------------ rescaling
    def u_scale_exp(self, lam) -> Fraction:
        """Exponent e with 𝔘_λ = v^e u_λ."""
        d = self.rs.dim(lam)
        return Fraction(-self.rs.dim_end(lam)) + Fraction(self.q.euler(d, d), 2)

    def diamond_exp(self, alpha, lam) -> Fraction:
        """Exponent e with K_α ⋄ u_λ = v^e K_α * u_λ."""
        d = self.rs.dim(lam)
        return Fraction(self.q.sym(_sub(alpha, self.q.rho_vec(alpha)), d), 2)

    def ku_scale(self, key) -> HalfLaurent:
        """s with K_α ⋄ 𝔘_λ = s · K_α * u_λ."""
        alpha, lam = key
        return v_pow(self.diamond_exp(alpha, lam) + self.u_scale_exp(lam))

    def rescale_U(self, lam) -> Element:
        return Element(self.alg, {(self.alg.zero_vec(), tuple(lam)): self.ku_scale(
            (self.alg.zero_vec(), tuple(lam)))})

    def diamond(self, alpha, x: Element) -> Element:
        """K_α ⋄ x, extended linearly from K_α ⋄ (K_β * u_λ)."""
        self.alg.check(x)
        out = {}
        for (beta, lam), c in x.terms.items():
            acc(out, (_add(alpha, beta), lam), c * v_pow(self.diamond_exp(alpha, lam)))
        return Element(self.alg, out)

    def to_ku(self, terms: dict) -> dict:
        """Coordinates in the K ⋄ 𝔘 basis."""
        return {k: _exact_div(c, self.ku_scale(k)) for k, c in terms.items()}

    def from_ku(self, terms: dict) -> dict:
        return {k: c * self.ku_scale(k) for k, c in terms.items() if c}

    # ---------------------------------------------------------------- order
    def grading(self, key) -> tuple:
        return self.alg.grading(key)

    def hom_row(self, lam) -> tuple:
        """dim Hom(M(λ), M(γ)) for every root γ."""
        lam = tuple(lam)
        r = self._homrow.get(lam)
        if r is None:
            hom = self.rs.hom
            r = tuple(sum(m * hom[b][g] for b, m in enumerate(lam) if m)
                      for g in range(self.rs.size))
            self._homrow[lam] = r
        return r

    def module_less(self, lam, mu) -> bool:
        """λ ≺ μ: the orbit of λ lies in the closure of the orbit of μ."""
        if self.rs.dim(lam) != self.rs.dim(mu) or tuple(lam) == tuple(mu):
            return False
        a, b = self.hom_row(lam), self.hom_row(mu)
        return all(x >= y for x, y in zip(a, b))

    def less(self, k1, k2) -> bool:
        if self.grading(k1) != self.grading(k2):
            raise GradingMismatch(f"{k1} and {k2} lie in different gradings")
        (a, lam), (b, mu) = k1, k2
        if a == b:
            return self.module_less(lam, mu)
        d = _sub(b, a)
        return all(x >= 0 for x in d)

    def order_key(self, key):
        alpha, lam = key
        return (sum(alpha), -sum(self.hom_row(lam)))

    def slice(self, nu: Sequence[int]) -> list:
        """Basis of grading ν listed along a linear extension of ≺."""
        nu = tuple(nu)
        s = self._slices.get(nu)
        if s is None:
            # topological sort of ≺; among minimal elements "asc" takes the
            # smallest canonical key and "desc" the largest
            rest = sorted(self.alg.basis_with_grading(nu), key=self.alg.sort_key,
                          reverse=self.extension == "desc")
            s = []
            while rest:
                k = next(k for k in rest if not any(self.less(o, k) for o in rest))
                rest.remove(k)
                s.append(k)
            self._slices[nu] = s
        return s

    # ------------------------------------------------------------------ bar
    def _bar_modules(self, nu: tuple) -> None:
        """Fill bar(u_λ) for every λ with dim λ = ν."""
        alg, rs = self.alg, self.rs
        if sum(nu) > WORD_CAP:
            raise TooLarge(f"grading {nu} exceeds the word cap {WORD_CAP}")
        mods = rs.isoclasses_with_dim(nu)
        z = alg.zero_vec()
        if sum(nu) == 0:
            self._bar_u[mods[0]] = {(z, mods[0]): ONE}
            return
        if sum(nu) == 1:
            lam = mods[0]
            self._bar_u[lam] = {(z, lam): v_pow(-1)}
            return
        index = {lam: r for r, lam in enumerate(mods)}
        gens = []
        for i in range(alg.n):
            if nu[i] == 0:
                continue
            si = rs.simple_iso(i)
            rest = tuple(x - (j == i) for j, x in enumerate(nu))
            for mu in rs.isoclasses_with_dim(rest):
                gens.append((si, mu, alg.mul_modules(si, mu)))
        # pick spanning generators by a modular rank computation
        x = random.Random(hash(nu) & 0xffff).randrange(3, _PRIME - 3)
        mat = [[0] * len(gens) for _ in mods]
        for j, (_, _, prod) in enumerate(gens):
            for (g, lam), c in prod.items():
                if not any(g):
                    mat[index[lam]][j] = _mod_eval(c, x)
        _, piv = rref(mat, _PRIME, len(gens))
        if len(piv) < len(mods):
            raise SpanFailure(f"words span rank {len(piv)} of {len(mods)} at grading {nu}")
        block = [[RationalFn(gens[j][2].get((z, lam), 0)) for j in piv] for lam in mods]
        inv = _solve_identity(block)
        # bar(g_j) minus the bar of its K-dressed part, per chosen generator
        rhs = []
        for j in piv:
            si, mu, prod = gens[j]
            img = alg.mul_vec(self.bar_basis((z, mu)), {(z, si): v_pow(-1)})
            img = dict(img)
            for k, c in prod.items():
                if any(k[0]):
                    add_into(img, self.bar_basis(k), -c.bar())
            rhs.append(img)
        for r, lam in enumerate(mods):
            out = {}
            for jj in range(len(piv)):
                c = inv[jj][r]
                if c:
                    cb = c.bar()
                    for k, d in rhs[jj].items():
                        acc(out, k, cb * d)
            final = {}
            for k, c in out.items():
                if isinstance(c, RationalFn):
                    if not c.is_laurent():
                        raise NotIntegral(f"bar(u_{lam}) has coefficient {c}")
                    c = c.to_laurent()
                if c:
                    final[k] = c
            self._bar_u[lam] = final

    def bar_basis(self, key) -> dict:
        """bar(K_α * u_λ) = bar(u_λ) * K_α."""
        key = (tuple(key[0]), tuple(key[1]))
        r = self._bar_key.get(key)
        if r is not None:
            return r
        alpha, lam = key
        if lam not in self._bar_u:
            self._bar_modules(self.rs.dim(lam))
        bu = self._bar_u[lam]
        if any(alpha):
            r = self.alg.mul_vec(bu, {(alpha, self.rs.zero()): ONE})
        else:
            r = bu
        self._bar_key[key] = r
        return r

    def bar_element(self, x: Element) -> Element:
        self.alg.check(x)
        out = {}
        for k, c in x.terms.items():
            add_into(out, self.bar_basis(k), c.bar())
        return Element(self.alg, out)

    def bar_matrix_ku(self, nu) -> dict:
        """{j: {i: A_ij}} with bar(b_j) = Σ_i A_ij b_i in the K ⋄ 𝔘 basis."""
        out = {}
        for j in self.slice(nu):
            sj = self.ku_scale(j).bar()
            img = self.to_ku(self.bar_basis(j))
            out[j] = {i: c * sj for i, c in img.items()}
        return out

    # ------------------------------------------------------------------ dCB
    def solve(self, nu) -> dict:
        """{label: {key: coefficient}} for every 𝔏 of grading ν in K ⋄ 𝔘 coordinates."""
        nu = tuple(nu)
        t = self._tables.get(nu)
        if t is not None:
            return t
        keys = self.slice(nu)
        pos = {k: r for r, k in enumerate(keys)}
        A = self.bar_matrix_ku(nu)
        for j, col in A.items():
            for i, c in col.items():
                if i == j:
                    if c != ONE:
                        raise NotUnitriangular(f"diagonal entry {c} at {j}")
                elif not self.less(j, i):
                    raise NotUnitriangular(f"bar({j}) has a term at {i} outside the cone")
        table = {}
        for j in keys:
            p = {j: ONE}
            for i in keys[pos[j] + 1:]:
                if not self.less(j, i):
                    continue
                r = HalfLaurent()
                for k, pk in p.items():
                    if k != i:
                        a = A[k].get(i)
                        if a:
                            r = r + a * pk.bar()
                if not r:
                    continue
                if r.coeff(0):
                    raise ParityObstruction(f"constant term {r.coeff(0)} at {i} for {j}")
                if r.bar() != -r:
                    raise ParityObstruction(f"residual {r} at {i} for {j} is not skew")
                neg = HalfLaurent({e: a for e, a in r.items() if e < 0})
                if any(e % 2 for e, _ in neg.items()):
                    raise ParityObstruction(f"half-integer power in {neg} at {i} for {j}")
                p[i] = neg
            table[j] = p
        self._tables[nu] = table
        return table

    def entry(self, label) -> dict:
        """𝔏_{α,λ} in K ⋄ 𝔘 coordinates, as K_α ⋄ 𝔏_{0,λ}."""
        alpha, lam = (tuple(label[0]), tuple(label[1]))
        z = self.alg.zero_vec()
        base = self.solve(self.rs.dim(lam))[(z, lam)]
        if not any(alpha):
            return base
        return {(_add(alpha, b), mu): c for (b, mu), c in base.items()}

    def element_of(self, label) -> Element:
        return Element(self.alg, self.from_ku(self.entry(label)))

    def expand(self, x) -> dict:
        """Coefficients of x in the dual canonical basis."""
        terms = x.terms if isinstance(x, Element) else x
        rest = self.to_ku(terms)
        out = {}
        while rest:
            k = min(rest, key=lambda k: (self.grading(k), self.order_key(k),
                                         self.alg.sort_key(k)))
            c = rest[k]
            base = self.entry(k)
            for i, d in base.items():
                acc(rest, i, -c * d)
            if k in rest:
                raise NotUnitriangular(f"expansion did not clear the leading term {k}")
            out[k] = c
        for k, c in out.items():
            if not isinstance(c, HalfLaurent):
                raise NotIntegral(f"coefficient {c} at {k} is not in Z[v^(±1/2)]")
        return out

    def format_label(self, label) -> str:
        alpha, lam = label
        s = "L{" + self.rs.format_iso(lam) + "}"
        if any(alpha):
            s = "K[" + ",".join(str(a) for a in alpha) + "]<>" + s
        return s


def _exact_div(c, s: HalfLaurent):
    (e, a), = s.items()
    if a != 1:
        raise NotIntegral(f"rescaling factor {s} is not a unit")
    return c.shift(-e) if isinstance(c, HalfLaurent) else c * HalfLaurent.u(-e)


def is_positive(c: HalfLaurent) -> bool:
    return all(a > 0 for _, a in c.items())


def expand_tensor(first: DCB, second: DCB, x: Element) -> dict:
    """Coefficients of a tensor element in the product of two dCBs."""
    by_right = {}
    for (k1, k2), c in x.terms.items():
        acc(by_right.setdefault(k2, {}), k1, c)
    mixed = {}
    for k2, left in by_right.items():
        for b1, c in first.expand(left).items():
            acc(mixed.setdefault(b1, {}), k2, c)
    out = {}
    for b1, right in mixed.items():
        for b2, c in second.expand(right).items():
            out[(b1, b2)] = c
    return out


def labels_up_to(d: DCB, max_height: int) -> list:
    """All dCB labels (α, λ) with α ∈ N^I of grading height ≤ max_height."""
    out = []
    for nu in _boxes((max_height,) * d.alg.n):
        if 0 < sum(nu) <= max_height:
            out.extend(d.slice(nu))
    return out


def verify_dcb(alg: IHallAlgebra, max_height: int, extensions=("asc", "desc"),
               universe=None):
    """bar² = id, unitriangularity, translation, 𝔏_{0,β} = 𝔘_β and order independence."""
    from .report import Report
    reps = {e: DCB(alg, e) for e in extensions}
    d = reps[extensions[0]]
    rep = Report("dcb", quiver=alg.q.label, max_height=max_height)
    z = alg.zero_vec()
    gradings = [nu for nu in _boxes((max_height,) * alg.n) if 0 < sum(nu) <= max_height]
    if universe is not None:
        gradings = [nu for nu in gradings if universe(nu)]
    for nu in gradings:
        for k in d.slice(nu):
            x = Element(alg, {k: ONE})
            rep.record("bar squared", d.bar_element(d.bar_element(x)) == x, k)
        tables = {e: r.solve(nu) for e, r in reps.items()}
        t = tables[extensions[0]]
        for e in extensions[1:]:
            rep.record("order independence", tables[e] == t, nu)
        for label, entry in t.items():
            el = Element(alg, d.from_ku(entry))
            rep.record("bar invariant", d.bar_element(el) == el, label)
            ok = entry.get(label) == ONE
            for k, c in entry.items():
                if k != label:
                    ok = ok and d.less(label, k) and c.max_exp() < 0 and c.is_integral_v()
            rep.record("unitriangular", ok, label)
            if any(label[0]):
                rep.record("translation", entry == d.entry(label), label)
            lam = label[1]
            if not any(label[0]) and sum(1 for m in lam if m) == 1 and max(lam) == 1:
                rep.record("root vectors", entry == {label: ONE}, label)
            rep.record("expand unit", d.expand(d.from_ku(entry)) == {label: ONE}, label)
    return rep


def positivity_rows(q, which: str, max_height: int, tiebreak: str = "lex") -> list:
    """(source label, target label, coefficient, positive, integral) for Ω̃ or Δ̃ images."""
    from .qsp import qsp
    Q = qsp(q, tiebreak)
    src = DCB(Q.H)
    dst = DCB(Q.D)
    rows = []
    for label in labels_up_to(src, max_height):
        b = src.element_of(label)
        if which == "omega":
            coeffs = dst.expand(Q.omega(b))
            fmt = dst.format_label
        elif which == "idelta":
            coeffs = expand_tensor(src, dst, Q.idelta(b))
            fmt = lambda k: src.format_label(k[0]) + " (x) " + dst.format_label(k[1])  # noqa: E731
        else:
            raise ValueError(f"unknown map {which!r}")
        order = sorted(coeffs, key=lambda k: str(fmt(k)))
        for k in order:
            c = coeffs[k]
            rows.append((src.format_label(label), fmt(k), c, is_positive(c),
                         isinstance(c, HalfLaurent)))
    return rows


def positivity_csv(rows: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["source", "target", "coefficient", "positive", "integral"])
    for s, t, c, p, i in rows:
        w.writerow([s, t, str(c), str(p).lower(), str(i).lower()])
    return buf.getvalue()


def structure_constants(d: DCB, nu1, nu2) -> list:
    """(b1, b2, b, coefficient, positive) for products of dCB elements."""
    out = []
    for l1 in d.slice(nu1):
        x = d.element_of(l1)
        for l2 in d.slice(nu2):
            y = d.element_of(l2)
            for b, c in sorted(d.expand(x * y).items(), key=lambda kv: d.alg.sort_key(kv[0])):
                out.append((l1, l2, b, c, is_positive(c)))
    return out
