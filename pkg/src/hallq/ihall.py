"""The generic iHall algebra with basis K_α * u_λ.

Basis keys are pairs (α, λ) with α an integer vector on the vertices and λ an
isoclass.  Written with G-numbers g, the product of two module classes
it reads

    u_A * u_B = Σ v^{<X,M>-<ϱX,M>-<A,B>+2<N,L>} g^M_{N,L} f^A_{X,N} f^B_{L,ϱX} a_X
                K_{dim X} * u_M

which is a finite sum of Laurent polynomials, so coefficients never leave Z[v^{±1/2}].
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .elements import Element, acc, add_into
from .errors import ContextMismatch, NonLaurentStructureConstant, RelationViolated
from .hallpoly import hall_table
from .quiver import Isoclass, IQuiver, double_quiver, validate
from .scalars import ONE, HalfLaurent, qbinom, v_pow

VMINV = HalfLaurent({-2: 1, 2: -1})  # v^{-1} - v


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


class IHallAlgebra:
    """H̃(Q, ϱ) over Q(v^{1/2}); instantiate with double_quiver(q) for the double."""

    def __init__(self, q: IQuiver, tiebreak: str = "lex"):
        self.q = q
        self.tiebreak = tiebreak
        self.rs = validate(q, tiebreak)
        self.hall = hall_table(q, tiebreak)
        self.n = q.n
        self._mod = {}
        self._basis = {}

    # ------------------------------------------------------------------ keys
    def zero_vec(self) -> tuple:
        return (0,) * self.n

    def one_key(self):
        return (self.zero_vec(), self.rs.zero())

    def sort_key(self, key):
        alpha, lam = key
        d = self.rs.dim(lam)
        return (sum(d), d, tuple(-m for m in (lam[r] for r in self.rs.order)), alpha)

    def format_key(self, key) -> str:
        alpha, lam = key
        parts = []
        if any(alpha):
            parts.append("K[" + ",".join(str(a) for a in alpha) + "]")
        if any(lam) or not parts:
            parts.append("u{" + self.rs.format_iso(lam) + "}")
        return "*".join(parts)

    def grading(self, key) -> tuple:
        alpha, lam = key
        ra = self.q.rho_vec(alpha)
        return tuple(a + b + c for a, b, c in zip(alpha, ra, self.rs.dim(lam)))

    # ------------------------------------------------------------- elements
    def element(self, terms: dict) -> Element:
        return Element(self, terms)

    def one(self) -> Element:
        return Element(self, {self.one_key(): ONE})

    def zero(self) -> Element:
        return Element(self)

    def K(self, alpha: Sequence[int]) -> Element:
        return Element(self, {(tuple(alpha), self.rs.zero()): ONE})

    def K_vertex(self, i: int, power: int = 1) -> Element:
        a = [0] * self.n
        a[i] = power
        return self.K(a)

    def u(self, lam: Isoclass) -> Element:
        return Element(self, {(self.zero_vec(), tuple(lam)): ONE})

    def u_root(self, d: Sequence[int], m: int = 1) -> Element:
        return self.u(self.rs.root_iso(self.rs.index[tuple(d)], m))

    def u_simple(self, i: int) -> Element:
        return self.u(self.rs.simple_iso(i))

    def basis_with_grading(self, nu: Sequence[int]) -> list:
        """All (α, λ) with α ∈ N^I and α + ϱα + dim λ = ν (α may be zero)."""
        nu = tuple(nu)
        out = []
        for alpha in _boxes(nu):
            rest = _sub(_sub(nu, alpha), self.q.rho_vec(alpha))
            if any(x < 0 for x in rest):
                continue
            for lam in self.rs.isoclasses_with_dim(rest):
                out.append((alpha, lam))
        out.sort(key=self.sort_key)
        return out

    def module_basis(self, max_height: int) -> list:
        """Keys (0, λ) with 1 ≤ |dim λ| ≤ max_height."""
        out = []
        for d in _boxes((max_height,) * self.n):
            if 0 < sum(d) <= max_height:
                for lam in self.rs.isoclasses_with_dim(d):
                    out.append((self.zero_vec(), lam))
        out.sort(key=self.sort_key)
        return out

    # --------------------------------------------------------- multiplication
    def mul_modules(self, a: Isoclass, b: Isoclass) -> dict:
        key = (a, b)
        if key in self._mod:
            return self._mod[key]
        q, rs, hall = self.q, self.rs, self.hall
        da, db = rs.dim(a), rs.dim(b)
        e_ab = q.euler(da, db)
        by_sub = {}
        for (l, y), fb in hall.splits(b).items():
            by_sub.setdefault(y, []).append((l, fb))
        out = {}
        for (x, nn), fa in hall.splits(a).items():
            rx = rs.rho_iso(x)
            if rx not in by_sub:
                continue
            dx = rs.dim(x)
            drx = q.rho_vec(dx)
            dn = rs.dim(nn)
            pre = fa * hall.a(x)
            for l, fb in by_sub[rx]:
                dl = rs.dim(l)
                e_nl = q.euler(dn, dl)
                base = pre * fb
                for m, g in hall.g(nn, l).items():
                    dm = rs.dim(m)
                    e = q.euler(dx, dm) - q.euler(drx, dm) - e_ab + 2 * e_nl
                    acc(out, (dx, m), (base * g).shift(2 * e))
        for c in out.values():
            if not isinstance(c, HalfLaurent):
                raise NonLaurentStructureConstant(f"coefficient {c} is not Laurent")
        self._mod[key] = out
        return out

    def k_twist(self, beta: Sequence[int], lam: Isoclass) -> int:
        """Exponent e with u_λ * K_β = v^e K_β * u_λ."""
        d = self.rs.dim(lam)
        return self.q.sym(beta, d) - self.q.sym(self.q.rho_vec(beta), d)

    def mul_basis(self, k1, k2) -> dict:
        bkey = (k1, k2)
        if bkey in self._basis:
            return self._basis[bkey]
        (a, mu), (b, nu) = k1, k2
        tw = self.k_twist(b, mu)
        ab = _add(a, b)
        out = {}
        for (g, lam), c in self.mul_modules(mu, nu).items():
            acc(out, (_add(ab, g), lam), c.shift(2 * tw))
        self._basis[bkey] = out
        return out

    def mul_vec(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for k1, c1 in x.items():
            for k2, c2 in y.items():
                add_into(out, self.mul_basis(k1, k2), c1 * c2)
        return out

    def check(self, x: Element):
        if x.alg is not self:
            raise ContextMismatch("element from another algebra")

    # ------------------------------------------------------------- generators
    def psi_images(self) -> dict:
        """ψ̃ on the generators B_i, k̃_i, 𝕂_i of the iquantum group."""
        out = {}
        vh = v_pow(Fraction(-1, 2))
        for i in range(self.n):
            out[("B", i)] = self.u_simple(i).scale(vh)
            k = self.K_vertex(i)
            out[("k", i)] = k.scale(v_pow(-1)) if self.q.rho[i] == i else k
            out[("KK", i)] = k
        return out

    def parse_element(self, text: str) -> Element:
        return parse_element(self, text)


def _boxes(nu: tuple):
    import itertools
    for c in itertools.product(*(range(x + 1) for x in nu)):
        yield tuple(c)


@lru_cache(maxsize=None)
def ihall_algebra(q: IQuiver, tiebreak: str = "lex") -> IHallAlgebra:
    return IHallAlgebra(q, tiebreak)


class DoubleAlgebra(IHallAlgebra):
    """H̃(Q^dbl, swap) with helpers for λ ⊕ μ^◇ and K_{α◇}."""

    def __init__(self, q: IQuiver, tiebreak: str = "lex"):
        super().__init__(double_quiver(q), tiebreak)
        self.base = q
        self.base_rs = validate(q, tiebreak)
        n0 = q.n
        self.n0 = n0
        brs, rs = self.base_rs, self.rs
        self._left = [rs.index[d + (0,) * n0] for d in brs.roots]
        self._right = [rs.index[(0,) * n0 + d] for d in brs.roots]

    def join(self, lam: Isoclass, mu: Isoclass) -> Isoclass:
        """λ ⊕ μ^◇."""
        out = [0] * self.rs.size
        for r, m in enumerate(lam):
            out[self._left[r]] += m
        for r, m in enumerate(mu):
            out[self._right[r]] += m
        return tuple(out)

    def split(self, lam: Isoclass) -> tuple:
        return (tuple(lam[i] for i in self._left), tuple(lam[i] for i in self._right))

    def kvec(self, alpha: Sequence[int], beta: Sequence[int]) -> tuple:
        """Exponent vector of K_α * K_{β◇}."""
        return tuple(alpha) + tuple(beta)

    def Kpair(self, alpha, beta) -> Element:
        return self.K(self.kvec(alpha, beta))

    def upair(self, lam, mu) -> Element:
        return self.u(self.join(lam, mu))

    def psi_dbl_images(self) -> dict:
        """ψ̃^dbl on E_i, F_i, K_i, K_i'."""
        vh = v_pow(Fraction(-1, 2))
        n0 = self.n0
        out = {}
        for i in range(n0):
            out[("E", i)] = self.u_simple(i).scale(vh)
            out[("F", i)] = self.u_simple(i + n0).scale(vh)
            out[("K", i)] = self.K_vertex(i + n0)
            out[("Kp", i)] = self.K_vertex(i)
            out[("Kinv", i)] = self.K_vertex(i + n0, -1)
            out[("Kpinv", i)] = self.K_vertex(i, -1)
        return out

    def verify_tU_relations(self, raise_on_fail: bool = True) -> list:
        """Evaluate every defining relation of Ũ; returns [(name, residual)]."""
        g = self.psi_dbl_images()
        c = self.base.cartan()
        n0 = self.n0
        rep = []
        one = self.one()
        for i in range(n0):
            for j in range(n0):
                E, F = g[("E", i)], g[("F", j)]
                rhs = (g[("K", i)] - g[("Kp", i)]).scale(VMINV) if i == j else self.zero()
                rep.append((f"[E{i+1},F{j+1}]", E * F - F * E - rhs))
                for a in ("K", "Kp"):
                    for b in ("K", "Kp"):
                        x, y = g[(a, i)], g[(b, j)]
                        rep.append((f"[{a}{i+1},{b}{j+1}]", x * y - y * x))
                cij = c[i][j]
                Ej, Fj = g[("E", j)], g[("F", j)]
                K, Kp = g[("K", i)], g[("Kp", i)]
                rep.append((f"K{i+1}E{j+1}", K * Ej - (Ej * K).scale(v_pow(cij))))
                rep.append((f"K{i+1}F{j+1}", K * Fj - (Fj * K).scale(v_pow(-cij))))
                rep.append((f"K'{i+1}E{j+1}", Kp * Ej - (Ej * Kp).scale(v_pow(-cij))))
                rep.append((f"K'{i+1}F{j+1}", Kp * Fj - (Fj * Kp).scale(v_pow(cij))))
            for name in ("K", "Kp"):
                rep.append((f"{name}{i+1} inverse", g[(name, i)] * g[(name + "inv", i)] - one))
        for i in range(n0):
            for j in range(n0):
                if i == j:
                    continue
                N = 1 - c[i][j]
                for letter in ("E", "F"):
                    xi, xj = g[(letter, i)], g[(letter, j)]
                    s = self.zero()
                    for r in range(N + 1):
                        term = (xi ** r) * xj * (xi ** (N - r))
                        coef = qbinom(N, r) * (1 if r % 2 == 0 else -1)
                        s = s + term.scale(coef)
                    rep.append((f"Serre {letter}{i+1}{j+1}", s))
        if raise_on_fail:
            for name, res in rep:
                if not res.is_zero():
                    raise RelationViolated(f"relation {name} fails", res)
        return rep


def graded_keys(alg: IHallAlgebra, max_height: int) -> list:
    """All basis keys (α ∈ N^I, λ) of nonzero grading height ≤ max_height."""
    out = []
    for nu in _boxes((max_height,) * alg.n):
        if 0 < sum(nu) <= max_height:
            out.extend(alg.basis_with_grading(nu))
    return out


def verify_associativity(alg: IHallAlgebra, max_height: int = 4):
    """(x*y)*z = x*(y*z) on basis triples whose gradings add up to height ≤ max_height."""
    from .report import Report
    rep = Report("associativity", quiver=alg.q.label, max_height=max_height)
    keys = graded_keys(alg, max_height)
    hts = {k: sum(alg.grading(k)) for k in keys}
    for x in keys:
        for y in keys:
            hxy = hts[x] + hts[y]
            if hxy >= max_height:
                continue
            xy = alg.mul_basis(x, y)
            for z in keys:
                if hxy + hts[z] > max_height:
                    continue
                lhs = alg.mul_vec(xy, {z: ONE})
                rhs = alg.mul_vec({x: ONE}, alg.mul_basis(y, z))
                rep.record("associativity", lhs == rhs, (x, y, z))
    return rep


@lru_cache(maxsize=None)
def double_algebra(q: IQuiver, tiebreak: str = "lex") -> DoubleAlgebra:
    return DoubleAlgebra(q, tiebreak)


# ------------------------------------------------------------------ parsing
def _split_top(text: str) -> list:
    """Split a sum at top-level + and - signs, keeping signs."""
    terms, cur, depth = [], "", 0
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch in "+-" and depth == 0 and cur.strip() and not cur.rstrip().endswith(("^", "*")):
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    if cur.strip():
        terms.append(cur)
    return terms


def _factors(term: str) -> list:
    out, cur, depth = [], "", 0
    for ch in term:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == "*" and depth == 0:
            out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    out.append(cur.strip())
    return [f for f in out if f]


def parse_element(alg: IHallAlgebra, text: str) -> Element:
    """Grammar: sums of `coeff * K[a1,...,an] * u{iso}` with coefficient literals."""
    text = text.strip()
    total = alg.zero()
    for term in _split_top(text):
        term = term.strip()
        sign = 1
        if term[0] in "+-":
            sign = -1 if term[0] == "-" else 1
            term = term[1:].strip()
        coeff = HalfLaurent.const(sign)
        elem = alg.one()
        for f in _factors(term):
            if f.startswith("K[") and f.endswith("]"):
                vec = tuple(int(x) for x in f[2:-1].split(","))
                if len(vec) != alg.n:
                    raise ValueError(f"K exponent {f} has the wrong length")
                elem = elem * alg.K(vec)
            elif f.startswith("u{") and f.endswith("}"):
                elem = elem * alg.u(alg.rs.parse_iso(f[2:-1]))
            else:
                coeff = coeff * HalfLaurent.parse(f)
        total = total + elem.scale(coeff)
    return total
