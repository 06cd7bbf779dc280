"""Hall polynomials, automorphism polynomials and their persistent table.

The only quantities obtained from point counts are the extension counts
E^ν(q) = |Ext^1(M(β), M(γ))_{M(ν)}| for pairs of indecomposables taken against
the admissible order.  Those have degree at most dim Ext^1 ≤ 2, so they are
interpolated from prime fields with two held-out verification primes.  Every
other structure constant follows exactly from the PBW factorisation
u_λ = v^{c(λ)} u_{β_1}^{m_1} ... u_{β_N}^{m_N} by straightening words.
"""
from __future__ import annotations

import json
import os
import sys
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DivisionInexact, InterpolationUnstable, NotRhoSymmetric
from .ffrep import rep_context
from .quiver import Isoclass, IQuiver, RootSystem, validate
from .scalars import (ONE, ZERO, HalfLaurent, lagrange_in_q, qdfactorial,
                      qfactorial, u_pow)

PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
SCHEMA = 1

VMV = HalfLaurent({2: 1, -2: -1})  # v - v^{-1}


def next_primes(count: int) -> list:
    return list(PRIMES[:count])


def interpolate_counts(count_at, max_points: int = 10, primes: Sequence[int] = PRIMES) -> list:
    """Adaptive interpolation in q: fit k primes, confirm on the next two.

    `count_at(p)` returns an integer.  The result is the list of integer
    coefficients of the polynomial in q, lowest degree first.
    """
    values = {}

    def val(p):
        if p not in values:
            values[p] = count_at(p)
        return values[p]

    for k in range(1, max_points + 1):
        pts = [(p, val(p)) for p in primes[:k]]
        coeffs = lagrange_in_q(pts)
        if any(c.denominator != 1 for c in coeffs):
            continue
        ok = True
        for p in primes[k:k + 2]:
            if sum(c * p ** i for i, c in enumerate(coeffs)) != val(p):
                ok = False
                break
        if ok:
            out = [int(c) for c in coeffs]
            while len(out) > 1 and out[-1] == 0:
                out.pop()
            return out
    raise InterpolationUnstable(f"no stable interpolant within {max_points} points")


def q_poly_to_laurent(coeffs: Sequence[int], q_shift: int = 0) -> HalfLaurent:
    """Σ c_i q^(i + q_shift) with q = v^2, i.e. u-exponent 4(i + q_shift)."""
    return HalfLaurent({4 * (i + q_shift): c for i, c in enumerate(coeffs) if c})


def a_multiple(m: int) -> HalfLaurent:
    """a_{mβ}(v) = v^{m(3m-1)/2}(v - v^{-1})^m [m]!."""
    if m == 0:
        return ONE
    return u_pow(m * (3 * m - 1)) * VMV ** m * qfactorial(m)


class ComponentHall:
    """Hall structure constants of a connected Dynkin quiver."""

    def __init__(self, q: IQuiver, primes: Sequence[int] = PRIMES):
        self.q = q
        self.primes = tuple(primes)
        self.rs = validate(q)
        rs = self.rs
        self.N = rs.size
        self._pair_rel = {}
        self._normal = {}
        self._g = {}
        self._by_dims = {}
        self.fundamental = {}   # (a, b) root indices -> {ν: E-polynomial coefficients}

    # PBW exponent c(λ) in v-units
    def c_exp(self, lam: Isoclass) -> int:
        rs = self.rs
        s = 0
        seq = [(rs.order[k], lam[rs.order[k]]) for k in range(self.N) if lam[rs.order[k]]]
        for i, (r, m) in enumerate(seq):
            s += m * (m - 1) // 2
            for t, n in seq[i + 1:]:
                s += m * n * rs.hom[r][t]
        return s

    def word(self, lam: Isoclass) -> tuple:
        out = []
        for k, r in enumerate(self.rs.order):
            out.extend([k] * lam[r])
        return tuple(out)

    def iso_of_word(self, w: Iterable[int]) -> Isoclass:
        lam = [0] * self.N
        for k in w:
            lam[self.rs.order[k]] += 1
        return tuple(lam)

    def extension_counts(self, a: int, b: int) -> dict:
        """{ν: coefficients of E^ν(q)} for X = M(β_a) (quotient), Z = M(β_b) (sub)."""
        key = (a, b)
        if key in self.fundamental:
            return self.fundamental[key]
        rs = self.rs
        x, z = rs.root_iso(a), rs.root_iso(b)
        if rs.ext[a][b] == 0:
            split = tuple(i + j for i, j in zip(x, z))
            out = {split: [1]}
        else:
            census = {}

            def at(p):
                if p not in census:
                    census[p] = rep_context(self.q, p).extension_census(x, z)
                return census[p]

            classes = set()
            for p in self.primes[:3]:
                classes.update(at(p))
            out = {}
            for nu in sorted(classes):
                out[nu] = interpolate_counts(lambda p, nu=nu: at(p).get(nu, 0),
                                             primes=self.primes)
            # classes first appearing at larger primes would break the fit above
            extra = set().union(*(at(p) for p in census)) - classes
            if extra:
                raise InterpolationUnstable("middle terms depend on the prime")
            total = [0] * (rs.ext[a][b] + 1)
            for coeffs in out.values():
                for i, c in enumerate(coeffs):
                    total[i] += c
            if total != [0] * rs.ext[a][b] + [1]:
                raise InterpolationUnstable("extension counts do not sum to q^ext")
        self.fundamental[key] = out
        return out

    def relation(self, ka: int, kb: int) -> dict:
        """u_{β_a} u_{β_b} for positions ka > kb, as {ν: coefficient of E_ν}."""
        key = (ka, kb)
        if key in self._pair_rel:
            return self._pair_rel[key]
        rs = self.rs
        a, b = rs.order[ka], rs.order[kb]
        e_ab = self.q.euler(rs.roots[a], rs.roots[b])
        hom_ab = rs.hom[a][b]
        out = {}
        for nu, coeffs in self.extension_counts(a, b).items():
            g = q_poly_to_laurent(coeffs, -hom_ab)
            out[nu] = g * u_pow(2 * (e_ab + self.c_exp(nu)))
        self._pair_rel[key] = out
        return out

    def normal_form(self, w: tuple) -> dict:
        """{λ: coefficient} with w = Σ coefficient · E_λ."""
        memo = self._normal
        if w in memo:
            return memo[w]
        stack = [w]
        # iterative deepening keeps the recursion shallow on long words
        while stack:
            cur = stack[-1]
            if cur in memo:
                stack.pop()
                continue
            i = next((j for j in range(len(cur) - 1) if cur[j] > cur[j + 1]), None)
            if i is None:
                memo[cur] = {self.iso_of_word(cur): ONE}
                stack.pop()
                continue
            rel = self.relation(cur[i], cur[i + 1])
            pending = []
            children = []
            for nu, c in rel.items():
                nw = cur[:i] + self.word(nu) + cur[i + 2:]
                children.append((nw, c))
                if nw not in memo:
                    pending.append(nw)
            if pending:
                if len(stack) > 100000:
                    raise InterpolationUnstable("straightening does not terminate")
                stack.extend(pending)
                continue
            res: dict = {}
            for nw, c in children:
                for lam, d in memo[nw].items():
                    s = res.get(lam, ZERO) + c * d
                    if s:
                        res[lam] = s
                    else:
                        res.pop(lam, None)
            memo[cur] = res
            stack.pop()
        return memo[w]

    def g(self, lam: Isoclass, mu: Isoclass) -> dict:
        """{ν: g^ν_{λμ}} where u_λ·u_μ = v^{⟨λ,μ⟩} Σ_ν g^ν_{λμ} u_ν."""
        key = (lam, mu)
        if key in self._g:
            return self._g[key]
        rs = self.rs
        w = self.word(lam) + self.word(mu)
        nf = self.normal_form(w)
        base = self.c_exp(lam) + self.c_exp(mu) - self.q.euler(rs.dim(lam), rs.dim(mu))
        out = {}
        for nu, c in nf.items():
            val = c * u_pow(2 * (base - self.c_exp(nu)))
            if not val.is_even_v():
                raise DivisionInexact(f"odd power of v in g for {lam},{mu},{nu}")
            out[nu] = val
        self._g[key] = out
        return out


_COMPONENT_CACHE: dict = {}


def component_hall(n: int, arrows: tuple, primes: Sequence[int] = PRIMES) -> ComponentHall:
    key = (n, tuple(sorted(arrows)), tuple(primes))
    if key not in _COMPONENT_CACHE:
        q = IQuiver(n, tuple(arrows), tuple(range(n)))
        _COMPONENT_CACHE[key] = ComponentHall(q, primes)
    return _COMPONENT_CACHE[key]


class HallTable:
    """Hall polynomials f, g and automorphism polynomials a for an iquiver."""

    def __init__(self, q: IQuiver, tiebreak: str = "lex", primes: Sequence[int] = PRIMES):
        self.q = q
        self.rs = validate(q, tiebreak)
        self.primes = tuple(primes)
        rs = self.rs
        self.parts = []
        # local data per connected component and the map of root indices
        self.loc = [None] * rs.size
        for ci, comp in enumerate(rs.components):
            local = {v: i for i, v in enumerate(comp)}
            arrows = tuple((local[s], local[t]) for s, t in q.arrows if s in local)
            ch = component_hall(len(comp), arrows, self.primes)
            self.parts.append((comp, ch))
            for r, d in enumerate(rs.roots):
                if any(d[v] for v in comp):
                    ld = tuple(d[v] for v in comp)
                    self.loc[r] = (ci, ch.rs.index[ld])
        self._g = {}
        self._splits = {}
        self._a = {}
        self._f = {}

    # isoclass bookkeeping between global and component indexing
    def restrict(self, lam: Isoclass) -> list:
        out = [[0] * ch.N for _, ch in self.parts]
        for r, m in enumerate(lam):
            if m:
                ci, lr = self.loc[r]
                out[ci][lr] = m
        return [tuple(x) for x in out]

    def combine(self, locals_: Sequence[Isoclass]) -> Isoclass:
        lam = [0] * self.rs.size
        for r in range(self.rs.size):
            ci, lr = self.loc[r]
            lam[r] = locals_[ci][lr]
        return tuple(lam)

    def g(self, lam: Isoclass, mu: Isoclass) -> dict:
        key = (lam, mu)
        if key in self._g:
            return self._g[key]
        ls, ms = self.restrict(lam), self.restrict(mu)
        acc = [((), ONE)]
        for (comp, ch), l, m in zip(self.parts, ls, ms):
            prod = ch.g(l, m)
            acc = [(pre + (nu,), c * d) for pre, c in acc for nu, d in prod.items()]
        out = {self.combine(pre): c for pre, c in acc}
        self._g[key] = out
        return out

    def hall_g(self, lam, mu, nu) -> HalfLaurent:
        if tuple(a + b for a, b in zip(self.rs.dim(lam), self.rs.dim(mu))) != self.rs.dim(nu):
            return ZERO
        return self.g(lam, mu).get(nu, ZERO)

    def a(self, lam: Isoclass) -> HalfLaurent:
        if lam in self._a:
            return self._a[lam]
        rs = self.rs
        seq = [(r, lam[r]) for r in rs.order if lam[r]]
        e = 0
        out = ONE
        for i, (r, m) in enumerate(seq):
            out = out * a_multiple(m)
            for t, n in seq[i + 1:]:
                e += m * n * rs.hom[r][t]
        out = out * u_pow(4 * e)
        self._a[lam] = out
        return out

    def hall_f(self, lam, mu, nu) -> HalfLaurent:
        """F^ν_{λμ}: submodules of M(ν) isomorphic to M(μ) with quotient M(λ)."""
        key = (lam, mu, nu)
        if key in self._f:
            return self._f[key]
        gval = self.hall_g(lam, mu, nu)
        if gval.is_zero():
            out = ZERO
        else:
            out = (gval * self.a(nu)).divexact(self.a(lam) * self.a(mu))
        self._f[key] = out
        return out

    def products_by_dims(self, d1: tuple, d2: tuple) -> dict:
        """{(λ, μ): {ν: g}} over all λ of dim d1 and μ of dim d2."""
        out = {}
        for lam in self.rs.isoclasses_with_dim(d1):
            for mu in self.rs.isoclasses_with_dim(d2):
                out[(lam, mu)] = self.g(lam, mu)
        return out

    def splits(self, nu: Isoclass) -> dict:
        """{(λ, μ): f^ν_{λμ}} over all nonzero Hall numbers."""
        if nu in self._splits:
            return self._splits[nu]
        d = self.rs.dim(nu)
        out = {}
        for d1 in _sub_vectors(d):
            d2 = tuple(x - y for x, y in zip(d, d1))
            for lam in self.rs.isoclasses_with_dim(d1):
                for mu in self.rs.isoclasses_with_dim(d2):
                    gval = self.g(lam, mu).get(nu)
                    if gval:
                        out[(lam, mu)] = (gval * self.a(nu)).divexact(self.a(lam) * self.a(mu))
        self._splits[nu] = out
        return out

    def iterated_f(self, outers: Sequence[Isoclass], nu: Isoclass) -> HalfLaurent:
        outers = list(outers)
        if not outers:
            return ONE if not any(nu) else ZERO
        if len(outers) == 1:
            return ONE if outers[0] == nu else ZERO
        s = ZERO
        for (lam, kappa), f in self.splits(nu).items():
            if lam == outers[0]:
                s = s + f * self.iterated_f(outers[1:], kappa)
        return s

    def iterated_g(self, outers: Sequence[Isoclass], nu: Isoclass) -> HalfLaurent:
        outers = list(outers)
        if not outers:
            return ONE if not any(nu) else ZERO
        if len(outers) == 1:
            return ONE if outers[0] == nu else ZERO
        rest_dim = [0] * self.q.n
        for lam in outers[1:]:
            for i, x in enumerate(self.rs.dim(lam)):
                rest_dim[i] += x
        s = ZERO
        for kappa in self.rs.isoclasses_with_dim(tuple(rest_dim)):
            inner = self.iterated_g(outers[1:], kappa)
            if inner:
                s = s + self.hall_g(outers[0], kappa, nu) * inner
        return s

    def brace(self, lam: Isoclass, mu: Isoclass) -> int:
        return self.rs.hom_iso(lam, mu) + self.rs.hom_iso(mu, lam)

    def sqrt_aut(self, lam_c: Isoclass) -> HalfLaurent:
        """b_{λ_c} with b² = a_{λ_c}, over ϱ-orbit representatives."""
        rs = self.rs
        for r, m in enumerate(lam_c):
            if m and (rs.rho_root[r] == r or lam_c[rs.rho_root[r]] != m):
                raise NotRhoSymmetric("λ_c must be ϱ-invariant and supported on moved roots")
        reps = [r for r in rs.orbit_representatives() if lam_c[r]]
        out = ONE
        e = 0
        for i, k in enumerate(reps):
            out = out * a_multiple(lam_c[k])
            for l in reps[i + 1:]:
                e += lam_c[k] * lam_c[l] * (rs.hom[k][l] + rs.hom[k][rs.rho_root[l]])
        return out * u_pow(4 * e)

    def ratio_a2f(self, lam_f: Isoclass) -> HalfLaurent:
        """Closed form of a_{2λ}(v) / a_λ(v²) for λ supported on fixed roots."""
        rs = self.rs
        seq = [(r, lam_f[r]) for r in rs.order if lam_f[r]]
        out = ONE
        e = 0
        for i, (r, m) in enumerate(seq):
            if rs.rho_root[r] != r:
                raise NotRhoSymmetric("λ_f must be supported on ϱ-fixed roots")
            out = out * u_pow(6 * m * m) * VMV ** m * qdfactorial(2 * m - 1)
            for t, n in seq[i + 1:]:
                e += 4 * m * n * rs.hom[r][t]
        return out * u_pow(2 * e)

    def ratio_a2f_by_division(self, lam_f: Isoclass) -> HalfLaurent:
        double = tuple(2 * m for m in lam_f)
        return self.a(double).divexact(self.a(lam_f).subs_v_squared())

    # persistence
    def to_json(self, max_dim: int) -> dict:
        entries = {}
        rs = self.rs
        for total in _dims_up_to(self.q.n, max_dim):
            for nu in rs.isoclasses_with_dim(total):
                entries["a|" + rs.format_iso(nu)] = self.a(nu).to_json()
                for (lam, mu), f in sorted(self.splits(nu).items()):
                    key = "f|" + "|".join(rs.format_iso(x) for x in (lam, mu, nu))
                    entries[key] = f.to_json()
        return {"schema": SCHEMA, "quiver": self.q.fingerprint(), "max_dim": max_dim,
                "entries": entries}

    def save(self, path: str, max_dim: int):
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(max_dim), fh, sort_keys=True, indent=1)
        os.replace(tmp, path)

    def load(self, path: str) -> bool:
        """Prime the f cache from a file; returns False if the file does not match."""
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, ValueError):
            return False
        if data.get("schema") != SCHEMA or data.get("quiver") != self.q.fingerprint():
            return False
        rs = self.rs
        for key, val in data["entries"].items():
            kind, *isos = key.split("|")
            if kind == "f":
                lam, mu, nu = (rs.parse_iso(x) for x in isos)
                self._f[(lam, mu, nu)] = HalfLaurent.from_json(val)
        return True


def _sub_vectors(d: tuple):
    import itertools
    for c in itertools.product(*(range(x + 1) for x in d)):
        yield tuple(c)


def _dims_up_to(n: int, max_dim: int):
    import itertools
    for c in itertools.product(range(max_dim + 1), repeat=n):
        if 0 < sum(c) <= max_dim:
            yield tuple(c)


@lru_cache(maxsize=None)
def hall_table(q: IQuiver, tiebreak: str = "lex", primes: Sequence[int] = PRIMES) -> HallTable:
    return HallTable(q, tiebreak, tuple(primes))
