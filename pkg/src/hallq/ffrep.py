"""Quiver representations over prime fields and the brute-force counting oracle.

Everything here works with explicit matrices over F_p.  Higher modules only use
these routines for certification and for the fundamental extension counts.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import linalg as la
from .errors import RecognitionFailure, ReflectionFailure, TooLarge
from .quiver import Isoclass, IQuiver, RootSystem, validate


@dataclass(frozen=True)
class QuiverRep:
    """Matrices are lists of rows: rows = target dimension, columns = source."""

    p: int
    dims: tuple
    arrows: tuple
    mats: tuple

    def __post_init__(self):
        for (s, t), m in zip(self.arrows, self.mats):
            if len(m) != self.dims[t] or any(len(r) != self.dims[s] for r in m):
                raise ValueError("matrix shape does not match dimension vector")

    def mat(self, k: int) -> list:
        return [list(r) for r in self.mats[k]]


def _freeze(m) -> tuple:
    return tuple(tuple(r) for r in m)


def make_rep(p: int, dims, arrows, mats) -> QuiverRep:
    return QuiverRep(p, tuple(dims), tuple(tuple(a) for a in arrows),
                     tuple(_freeze(m) for m in mats))


def zero_rep(n: int, arrows, p: int) -> QuiverRep:
    d = (0,) * n
    return make_rep(p, d, arrows, [[] for _ in arrows])


def simple_rep(n: int, arrows, k: int, p: int) -> QuiverRep:
    d = tuple(1 if i == k else 0 for i in range(n))
    mats = [la.zeros(d[t], d[s]) for s, t in arrows]
    return make_rep(p, d, arrows, mats)


def direct_sum(reps: Sequence[QuiverRep], n: int | None = None, arrows=None, p=None) -> QuiverRep:
    if not reps:
        return zero_rep(n, arrows, p)
    first = reps[0]
    n = len(first.dims)
    dims = tuple(sum(r.dims[i] for r in reps) for i in range(n))
    mats = []
    for k, (s, t) in enumerate(first.arrows):
        m = la.zeros(dims[t], dims[s])
        ro = co = 0
        for r in reps:
            block = r.mats[k]
            for i in range(r.dims[t]):
                row = m[ro + i]
                for j in range(r.dims[s]):
                    row[co + j] = block[i][j]
            ro += r.dims[t]
            co += r.dims[s]
        mats.append(m)
    return make_rep(first.p, dims, first.arrows, mats)


def conjugate(rep: QuiverRep, gs: Sequence[list]) -> QuiverRep:
    """Change of basis g_i at every vertex: M_a -> g_t M_a g_s^{-1}."""
    p = rep.p
    invs = [la.inverse_mod(g, p) if g else [] for g in gs]
    mats = []
    for k, (s, t) in enumerate(rep.arrows):
        m = rep.mat(k)
        if rep.dims[s] == 0 or rep.dims[t] == 0:
            mats.append(la.zeros(rep.dims[t], rep.dims[s]))
            continue
        mats.append(la.matmul(la.matmul(gs[t], m, p), invs[s], p))
    return make_rep(p, rep.dims, rep.arrows, mats)


def random_invertible(n: int, p: int, rng: random.Random) -> list:
    while True:
        g = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
        if la.det_mod(g, p):
            return g


# ------------------------------------------------------------ reflection functors
def _component_of(n: int, arrows, support) -> set:
    adj = {i: set() for i in range(n)}
    for s, t in arrows:
        adj[s].add(t)
        adj[t].add(s)
    start = next(iter(support))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _reflect_minus(rep: QuiverRep, k: int) -> QuiverRep:
    """k is a source; the new vertex space is the cokernel of M_k -> ⊕ M_j."""
    p = rep.p
    dims = list(rep.dims)
    out_arrows = [idx for idx, (s, t) in enumerate(rep.arrows) if s == k]
    blocks = []
    total = 0
    for idx in out_arrows:
        t = rep.arrows[idx][1]
        blocks.append((idx, total, dims[t]))
        total += dims[t]
    phi = []
    for idx, off, d in blocks:
        phi.extend(rep.mat(idx))
    pi = la.left_nullspace(phi, p, total, dims[k]) if total else []
    c = len(pi)
    new_arrows = list(rep.arrows)
    new_mats = [rep.mat(i) for i in range(len(rep.arrows))]
    dims[k] = c
    for idx, off, d in blocks:
        t = rep.arrows[idx][1]
        new_arrows[idx] = (t, k)
        new_mats[idx] = [row[off:off + d] for row in pi]
    return make_rep(p, dims, new_arrows, new_mats)


def _sym_pair(n: int, arrows, a, k: int) -> int:
    s = 2 * a[k]
    for x, y in arrows:
        if x == k:
            s -= a[y]
        if y == k:
            s -= a[x]
    return s


def bgp_indecomposable(n: int, arrows, beta: Sequence[int], p: int) -> QuiverRep:
    """Indecomposable with dimension vector β, obtained from a simple by reflections."""
    beta = tuple(beta)
    comp = _component_of(n, arrows, [i for i, x in enumerate(beta) if x])
    steps = []
    cur_arrows = [tuple(a) for a in arrows]
    cur = beta
    for _ in range(10000):
        sinks = sorted(i for i in comp if not any(s == i for s, t in cur_arrows))
        if not sinks:
            raise ReflectionFailure("component has no sink")
        k = sinks[0]
        if cur == tuple(1 if i == k else 0 for i in range(n)):
            break
        # s_k β: reflect the k-th coordinate
        c = list(cur)
        c[k] = cur[k] - _sym_pair(n, cur_arrows, cur, k)
        if c[k] < 0:
            raise ReflectionFailure(f"{beta} left the positive cone")
        steps.append(k)
        cur = tuple(c)
        cur_arrows = [(t, s) if k in (s, t) else (s, t) for s, t in cur_arrows]
    else:
        raise ReflectionFailure(f"no simple reached from {beta}")
    rep = simple_rep(n, cur_arrows, k, p)
    for k in reversed(steps):
        rep = _reflect_minus(rep, k)
    if tuple(rep.dims) != beta or tuple(rep.arrows) != tuple(tuple(a) for a in arrows):
        raise ReflectionFailure(f"reflection functors failed to rebuild {beta}")
    return rep


# ------------------------------------------------------------ Hom and Ext
def intertwiner_system(a: QuiverRep, b: QuiverRep):
    """Matrix of f ↦ (B_x f_s − f_t A_x)_x on ⊕ Hom(A_i, B_i); returns (rows, ncols)."""
    n = len(a.dims)
    off = [0] * n
    tot = 0
    for i in range(n):
        off[i] = tot
        tot += a.dims[i] * b.dims[i]
    rows = []
    for k, (s, t) in enumerate(a.arrows):
        am = a.mats[k]
        bm = b.mats[k]
        da_s, db_s, da_t, db_t = a.dims[s], b.dims[s], a.dims[t], b.dims[t]
        for r in range(db_t):
            for c in range(da_s):
                row = [0] * tot
                # (B_x f_s)[r][c] = Σ_j B_x[r][j] f_s[j][c]
                brow = bm[r]
                for j in range(db_s):
                    if brow[j]:
                        row[off[s] + j * da_s + c] += brow[j]
                # (f_t A_x)[r][c] = Σ_j f_t[r][j] A_x[j][c]
                for j in range(da_t):
                    x = am[j][c]
                    if x:
                        row[off[t] + r * da_t + j] -= x
                rows.append(row)
    return rows, tot


def hom_dim(a: QuiverRep, b: QuiverRep) -> int:
    rows, tot = intertwiner_system(a, b)
    if tot == 0:
        return 0
    return tot - la.rank(rows, a.p)


def hom_ext_dims(a: QuiverRep, b: QuiverRep) -> tuple:
    """(dim Hom(A,B), dim Ext^1(A,B)) from the ranks of one linear map."""
    rows, tot = intertwiner_system(a, b)
    rk = la.rank(rows, a.p) if rows and tot else 0
    return tot - rk, len(rows) - rk


def end_basis(m: QuiverRep) -> list:
    rows, tot = intertwiner_system(m, m)
    return la.nullspace(rows, m.p, tot)


def ext_representatives(x: QuiverRep, z: QuiverRep) -> tuple:
    """Row positions of the η-space spanning a complement of the image of δ."""
    rows, tot = intertwiner_system(x, z)
    nrows = len(rows)
    if tot == 0:
        return tuple(range(nrows)), nrows
    cols = la.transpose(rows, nrows, tot)
    basis, piv = la.rref(cols, x.p, nrows)
    chosen = []
    current = [list(r) for r in basis]
    rk = len(current)
    for r in range(nrows):
        e = [0] * nrows
        e[r] = 1
        if la.rank(current + [e], x.p) > rk:
            current.append(e)
            rk += 1
            chosen.append(r)
    return tuple(chosen), nrows


def extension_rep(x: QuiverRep, z: QuiverRep, eta_rows: dict) -> QuiverRep:
    """Middle term with blocks [[Z_a, η_a], [0, X_a]]; Z is the submodule.

    `eta_rows` maps a row index of the intertwiner system to a scalar.
    """
    n = len(x.dims)
    dims = tuple(z.dims[i] + x.dims[i] for i in range(n))
    # rows of the intertwiner system are indexed arrow by arrow, (r, c) inside
    mats = []
    base = 0
    for k, (s, t) in enumerate(x.arrows):
        zt, zs, xt, xs = z.dims[t], z.dims[s], x.dims[t], x.dims[s]
        m = la.zeros(zt + xt, zs + xs)
        for r in range(zt):
            for c in range(zs):
                m[r][c] = z.mats[k][r][c]
        for r in range(xt):
            for c in range(xs):
                m[zt + r][zs + c] = x.mats[k][r][c]
        for r in range(zt):
            for c in range(xs):
                val = eta_rows.get(base + r * xs + c, 0)
                if val:
                    m[r][zs + c] = val % x.p
        base += zt * xs
        mats.append(m)
    return make_rep(x.p, dims, x.arrows, mats)


# ------------------------------------------------------------ context over F_p
class RepContext:
    """Indecomposables, module construction and recognition for one quiver and prime."""

    def __init__(self, q: IQuiver, p: int, rs: RootSystem | None = None):
        self.q = q
        self.p = p
        self.rs = rs or validate(q)
        self._ind = {}
        self._sep = {}
        self._census = {}

    def indecomposable(self, r: int) -> QuiverRep:
        if r not in self._ind:
            rep = bgp_indecomposable(self.q.n, self.q.arrows, self.rs.roots[r], self.p)
            if hom_dim(rep, rep) != 1:
                raise ReflectionFailure(f"End of M({self.rs.roots[r]}) is not the field")
            self._ind[r] = rep
        return self._ind[r]

    def build_module(self, lam: Isoclass) -> QuiverRep:
        reps = []
        for r in self.rs.order:
            reps.extend([self.indecomposable(r)] * lam[r])
        return direct_sum(reps, self.q.n, self.q.arrows, self.p)

    def _separating_roots(self, d: tuple) -> tuple:
        if d in self._sep:
            return self._sep[d]
        cands = self.rs.isoclasses_with_dim(d)
        prints = [self.rs.fingerprint_of(c) for c in cands]
        chosen = []
        classes = [list(range(len(cands)))]
        # greedy: add the root splitting the most classes until all are singletons
        while any(len(c) > 1 for c in classes):
            best, best_score = None, -1
            for b in range(self.rs.size):
                if b in chosen:
                    continue
                score = 0
                for c in classes:
                    score += len({prints[i][b] for i in c}) - 1
                if score > best_score:
                    best, best_score = b, score
            if best_score <= 0:
                raise RecognitionFailure(f"fingerprints fail to separate classes of dim {d}")
            chosen.append(best)
            new = []
            for c in classes:
                groups = {}
                for i in c:
                    groups.setdefault(prints[i][best], []).append(i)
                new.extend(groups.values())
            classes = new
        table = {tuple(prints[i][b] for b in chosen): cands[i] for i in range(len(cands))}
        self._sep[d] = (tuple(chosen), table)
        return self._sep[d]

    def isoclass_of(self, m: QuiverRep) -> Isoclass:
        """Recognize M by Hom fingerprints against the candidates of its dimension."""
        d = tuple(m.dims)
        chosen, table = self._separating_roots(d)
        if not chosen:
            if len(table) != 1:
                raise RecognitionFailure(f"no module of dimension {d}")
            return next(iter(table.values()))
        key = tuple(hom_dim(self.indecomposable(b), m) for b in chosen)
        if key not in table:
            raise RecognitionFailure(f"fingerprint {key} matches no class of dim {d}")
        return table[key]

    def isoclass_of_full(self, m: QuiverRep) -> Isoclass:
        """Back-substitution through the unitriangular Hom matrix (admissible order)."""
        rs = self.rs
        h = [hom_dim(self.indecomposable(b), m) for b in range(rs.size)]
        lam = [0] * rs.size
        for k in range(rs.size - 1, -1, -1):
            b = rs.order[k]
            val = h[b]
            for l in range(k + 1, rs.size):
                g = rs.order[l]
                val -= rs.hom[b][g] * lam[g]
            if val < 0:
                raise RecognitionFailure("negative multiplicity in back-substitution")
            lam[b] = val
        lam = tuple(lam)
        if rs.dim(lam) != tuple(m.dims):
            raise RecognitionFailure("recognized class has the wrong dimension vector")
        return lam

    # ---------------------------------------------------------- submodule census
    def census(self, nu: Isoclass) -> dict:
        """{(quotient class, submodule class): number of submodules} for M(ν)."""
        if nu in self._census:
            return self._census[nu]
        m = self.build_module(nu)
        out: dict = {}
        for sub, quo in enumerate_submodules(m):
            key = (self.isoclass_of(quo), self.isoclass_of(sub))
            out[key] = out.get(key, 0) + 1
        self._census[nu] = out
        return out

    def count_filtrations(self, outers: Sequence[Isoclass], total: Isoclass) -> int:
        outers = list(outers)
        dsum = [0] * self.q.n
        for lam in outers:
            for i, x in enumerate(self.rs.dim(lam)):
                dsum[i] += x
        if tuple(dsum) != self.rs.dim(total):
            return 0
        if not outers:
            return 1 if not any(total) else 0
        if len(outers) == 1:
            return 1 if outers[0] == total else 0
        s = 0
        for (quo, sub), c in self.census(total).items():
            if quo == outers[0]:
                s += c * self.count_filtrations(outers[1:], sub)
        return s

    # ---------------------------------------------------------- automorphisms
    def aut_count(self, lam: Isoclass, cap: int = 200000) -> int:
        m = self.build_module(lam)
        basis = end_basis(m)
        e = len(basis)
        p = self.p
        if p ** e <= cap:
            return _count_units(m, basis)
        # orbit counting: |GL_d| / |points of Rep(d) isomorphic to M|
        d = m.dims
        npts = sum(d[s] * d[t] for s, t in m.arrows)
        if p ** npts > cap:
            raise TooLarge(f"aut_count needs {p}^{e} endomorphisms or {p}^{npts} points")
        orbit = 0
        for pt in _all_reps(self.q, d, p):
            if self.isoclass_of(pt) == lam:
                orbit += 1
        gl = 1
        for di in d:
            gl *= gl_order(di, p)
        if gl % orbit:
            raise RecognitionFailure("orbit size does not divide |GL_d|")
        return gl // orbit

    # ---------------------------------------------------------- extension census
    def extension_census(self, x: Isoclass, z: Isoclass) -> dict:
        """{class of Y: number of classes in Ext^1(M(x), M(z)) with middle term Y}."""
        mx, mz = self.build_module(x), self.build_module(z)
        reps, _ = ext_representatives(mx, mz)
        out: dict = {}
        for coeffs in itertools.product(range(self.p), repeat=len(reps)):
            eta = {r: c for r, c in zip(reps, coeffs) if c}
            y = extension_rep(mx, mz, eta)
            key = self.isoclass_of(y)
            out[key] = out.get(key, 0) + 1
        return out


def _count_units(m: QuiverRep, basis: list) -> int:
    n = len(m.dims)
    p = m.p
    off = []
    tot = 0
    for i in range(n):
        off.append(tot)
        tot += m.dims[i] * m.dims[i]
    count = 0
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        vec = [0] * tot
        for c, b in zip(coeffs, basis):
            if c:
                for j, x in enumerate(b):
                    if x:
                        vec[j] += c * x
        ok = True
        for i in range(n):
            d = m.dims[i]
            if not d:
                continue
            blk = [[vec[off[i] + r * d + c] % p for c in range(d)] for r in range(d)]
            if la.det_mod(blk, p) == 0:
                ok = False
                break
        if ok:
            count += 1
    return count


def _all_reps(q: IQuiver, d: tuple, p: int):
    shapes = [(d[t], d[s]) for s, t in q.arrows]
    sizes = [r * c for r, c in shapes]
    for vals in itertools.product(range(p), repeat=sum(sizes)):
        mats = []
        k = 0
        for (r, c), sz in zip(shapes, sizes):
            flat = vals[k:k + sz]
            k += sz
            mats.append([list(flat[i * c:(i + 1) * c]) for i in range(r)])
        yield make_rep(p, d, q.arrows, mats)


def gl_order(n: int, p: int) -> int:
    out = 1
    for k in range(n):
        out *= p ** n - p ** k
    return out


# ------------------------------------------------------------ subspace enumeration
def rref_subspaces(m: int, k: int, p: int):
    """All k-dimensional subspaces of F_p^m as (rows, pivots) in reduced echelon form."""
    for piv in itertools.combinations(range(m), k):
        pset = set(piv)
        free = [(r, c) for r, pc in enumerate(piv) for c in range(pc + 1, m) if c not in pset]
        for vals in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * m for _ in range(k)]
            for r, pc in enumerate(piv):
                rows[r][pc] = 1
            for (r, c), x in zip(free, vals):
                rows[r][c] = x
            yield rows, piv


def _topological_vertices(n: int, arrows) -> list:
    indeg = [0] * n
    for s, t in arrows:
        indeg[t] += 1
    out = []
    ready = sorted(i for i in range(n) if indeg[i] == 0)
    while ready:
        i = ready.pop(0)
        out.append(i)
        for s, t in arrows:
            if s == i:
                indeg[t] -= 1
                if indeg[t] == 0:
                    ready.append(t)
        ready.sort()
    return out


def _apply(mat: list, vec: list, p: int) -> list:
    return [sum(a * b for a, b in zip(row, vec)) % p for row in mat]


def enumerate_submodules(m: QuiverRep):
    """Yield (submodule, quotient) rep pairs for every subrepresentation of m."""
    n = len(m.dims)
    p = m.p
    order = _topological_vertices(n, m.arrows)
    incoming = {j: [k for k, (s, t) in enumerate(m.arrows) if t == j] for j in range(n)}
    chosen: dict = {}

    def rec(idx):
        if idx == n:
            yield _sub_and_quotient(m, chosen)
            return
        j = order[idx]
        dj = m.dims[j]
        gens = []
        for k in incoming[j]:
            s = m.arrows[k][0]
            rows_s, _ = chosen[s]
            mk = m.mats[k]
            for b in rows_s:
                gens.append(_apply(mk, b, p))
        w_rows, w_piv = la.rref(gens, p, dj) if gens else ([], [])
        wset = set(w_piv)
        comp_cols = [c for c in range(dj) if c not in wset]
        mq = len(comp_cols)
        for k in range(mq + 1):
            for urows, _ in rref_subspaces(mq, k, p):
                lifted = []
                for ur in urows:
                    vec = [0] * dj
                    for c, x in zip(comp_cols, ur):
                        vec[c] = x
                    lifted.append(vec)
                rows, piv = la.rref(w_rows + lifted, p, dj)
                chosen[j] = (rows, piv)
                yield from rec(idx + 1)
        chosen.pop(j, None)

    yield from rec(0)


def _sub_and_quotient(m: QuiverRep, chosen: dict):
    n = len(m.dims)
    p = m.p
    sub_dims = tuple(len(chosen[i][0]) for i in range(n))
    quo_dims = tuple(m.dims[i] - sub_dims[i] for i in range(n))
    nonpiv = []
    for i in range(n):
        ps = set(chosen[i][1])
        nonpiv.append([c for c in range(m.dims[i]) if c not in ps])

    def reduce(vec, i):
        rows, piv = chosen[i]
        v = list(vec)
        for r, pc in zip(rows, piv):
            f = v[pc]
            if f:
                v = [(a - f * b) % p for a, b in zip(v, r)]
        return v

    sub_mats = []
    quo_mats = []
    for k, (s, t) in enumerate(m.arrows):
        mk = m.mats[k]
        rows_s, _ = chosen[s]
        _, piv_t = chosen[t]
        # columns of the restricted map
        cols = [_apply(mk, b, p) for b in rows_s]
        sub_mats.append([[cols[c][pc] for c in range(len(rows_s))] for pc in piv_t])
        qcols = []
        for c in nonpiv[s]:
            e = [0] * m.dims[s]
            e[c] = 1
            y = reduce(_apply(mk, e, p), t)
            qcols.append([y[x] for x in nonpiv[t]])
        quo_mats.append([[qcols[c][r] for c in range(len(nonpiv[s]))]
                         for r in range(len(nonpiv[t]))])
    sub = make_rep(p, sub_dims, m.arrows, sub_mats)
    quo = make_rep(p, quo_dims, m.arrows, quo_mats)
    return sub, quo


@lru_cache(maxsize=None)
def rep_context(q: IQuiver, p: int, tiebreak: str = "lex") -> RepContext:
    return RepContext(q, p, validate(q, tiebreak))
