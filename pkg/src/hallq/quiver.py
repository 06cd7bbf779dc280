"""Dynkin iquivers, Euler forms, positive roots and admissible orders."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import (DimensionMismatch, ExcludedType, InvolutionInvalid,
                     NotDynkin, ReflectionFailure)

DimVector = tuple
Isoclass = tuple


@dataclass(frozen=True)
class IQuiver:
    """Quiver on vertices 0..n-1 with an involution `rho` (a permutation)."""

    n: int
    arrows: tuple
    rho: tuple
    names: tuple = None
    label: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))
        object.__setattr__(self, "rho", tuple(self.rho))
        if self.names is None:
            object.__setattr__(self, "names", tuple(str(i + 1) for i in range(self.n)))
        else:
            object.__setattr__(self, "names", tuple(self.names))

    @classmethod
    def from_one_based(cls, n: int, arrows, rho_pairs=(), label: str = ""):
        rho = list(range(n))
        for i, j in rho_pairs:
            rho[i - 1] = j - 1
            rho[j - 1] = i - 1
        return cls(n, tuple((s - 1, t - 1) for s, t in arrows), tuple(rho), label=label)

    @property
    def fixed_set(self) -> tuple:
        return tuple(i for i in range(self.n) if self.rho[i] == i)

    def is_split(self) -> bool:
        return all(self.rho[i] == i for i in range(self.n))

    def _check(self, a):
        if len(a) != self.n:
            raise DimensionMismatch(f"vector of length {len(a)} on a quiver with {self.n} vertices")

    def euler(self, a: Sequence[int], b: Sequence[int]) -> int:
        self._check(a)
        self._check(b)
        s = sum(x * y for x, y in zip(a, b))
        for i, j in self.arrows:
            s -= a[i] * b[j]
        return s

    def sym(self, a: Sequence[int], b: Sequence[int]) -> int:
        return self.euler(a, b) + self.euler(b, a)

    def rho_vec(self, a: Sequence[int]) -> tuple:
        out = [0] * self.n
        for i, x in enumerate(a):
            out[self.rho[i]] = x
        return tuple(out)

    def cartan(self) -> list:
        c = [[0] * self.n for _ in range(self.n)]
        for i in range(self.n):
            c[i][i] = 2
        for s, t in self.arrows:
            c[s][t] -= 1
            c[t][s] -= 1
        return c

    def components(self) -> list:
        """Connected components as sorted vertex tuples, ordered by least vertex."""
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s, t in self.arrows:
            parent[find(s)] = find(t)
        groups: dict = {}
        for i in range(self.n):
            groups.setdefault(find(i), []).append(i)
        return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])

    def fingerprint(self) -> str:
        text = f"{self.n}|{sorted(self.arrows)}|{self.rho}"
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    def spec_text(self) -> str:
        lines = [f"vertices = {self.n}"]
        lines += [f"arrow {s + 1} {t + 1}" for s, t in self.arrows]
        done = set()
        for i in range(self.n):
            j = self.rho[i]
            if i in done:
                continue
            lines.append(f"involution {i + 1} {j + 1}")
            done.update((i, j))
        return "\n".join(lines) + "\n"


def double_quiver(q: IQuiver) -> IQuiver:
    """Q together with a tagged copy Q◇; the involution swaps i and i◇."""
    n = q.n
    arrows = tuple(q.arrows) + tuple((s + n, t + n) for s, t in q.arrows)
    rho = tuple(range(n, 2 * n)) + tuple(range(n))
    names = tuple(q.names) + tuple(nm + "◇" for nm in q.names)
    return IQuiver(2 * n, arrows, rho, names, label=(q.label + "-dbl") if q.label else "")


def diagonal_base(q: IQuiver) -> IQuiver | None:
    """Recover Q from Q ⊔ Q◇ with the swap (vertices i and i + n/2 paired), else None."""
    n = q.n
    if n % 2:
        return None
    h = n // 2
    if tuple(q.rho) != tuple(range(h, n)) + tuple(range(h)):
        return None
    left = sorted((s, t) for s, t in q.arrows if s < h and t < h)
    right = sorted((s - h, t - h) for s, t in q.arrows if s >= h and t >= h)
    if left != right or len(left) + len(right) != len(q.arrows):
        return None
    label = q.label[:-4] if q.label.endswith("-dbl") else q.label
    return IQuiver(h, tuple(left), tuple(range(h)), label=label)


def grading(q: IQuiver, alpha: Sequence[int], dim_lambda: Sequence[int]) -> tuple:
    """α + ϱα + dim λ."""
    ra = q.rho_vec(alpha)
    return tuple(a + b + c for a, b, c in zip(alpha, ra, dim_lambda))


# ---------------------------------------------------------------- validation
def _positive_definite(c: list) -> bool:
    n = len(c)
    a = [[Fraction(x) for x in row] for row in c]
    for k in range(n):
        if a[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return True


def _check_dynkin(q: IQuiver):
    for s, t in q.arrows:
        if s == t:
            raise NotDynkin("loop at a vertex")
        if not (0 <= s < q.n and 0 <= t < q.n):
            raise NotDynkin("arrow endpoint out of range")
    c = q.cartan()
    for comp in q.components():
        sub = [[c[i][j] for j in comp] for i in comp]
        if not _positive_definite(sub):
            raise NotDynkin(f"component {[q.names[i] for i in comp]} is not of ADE type")


def _check_involution(q: IQuiver):
    rho = q.rho
    if sorted(rho) != list(range(q.n)):
        raise InvolutionInvalid("involution is not a permutation of the vertices")
    if any(rho[rho[i]] != i for i in range(q.n)):
        raise InvolutionInvalid("involution does not square to the identity")
    edges = sorted(tuple(sorted(a)) for a in q.arrows)
    moved = sorted(tuple(sorted((rho[s], rho[t]))) for s, t in q.arrows)
    if edges != moved:
        raise InvolutionInvalid("involution does not preserve the underlying graph")
    # a path with an even number of vertices flipped end to end is excluded
    for comp in q.components():
        if all(rho[i] in comp for i in comp) and any(rho[i] != i for i in comp):
            deg = {i: 0 for i in comp}
            for s, t in q.arrows:
                if s in deg:
                    deg[s] += 1
                    deg[t] += 1
            if max(deg.values(), default=0) <= 2 and len(comp) % 2 == 0:
                raise ExcludedType("type A with an even number of vertices and the "
                                   "diagram flip is not an admissible iquiver")
    arrows = sorted(q.arrows)
    if sorted((rho[s], rho[t]) for s, t in q.arrows) != arrows:
        raise InvolutionInvalid("involution reverses an arrow")


def _tits(q: IQuiver, a) -> int:
    return q.euler(a, a)


def _enumerate_roots(q: IQuiver) -> list:
    """Positive vectors with Tits form 1, grown from the simples."""
    n = q.n
    simples = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for b in frontier:
            for i in range(n):
                c = list(b)
                c[i] += 1
                c = tuple(c)
                if c not in seen and _tits(q, c) == 1:
                    # stay inside one connected component
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return list(seen)


def root_sort_key(d: tuple):
    first = next(i for i, x in enumerate(d) if x)
    return (first, sum(d), tuple(-x for x in d))


_EXPECTED = {"A": lambda m: m * (m + 1) // 2, "D": lambda m: m * (m - 1),
             "E": lambda m: {6: 36, 7: 63, 8: 120}[m]}


def _component_type(q: IQuiver, comp) -> tuple:
    deg = {i: 0 for i in comp}
    for s, t in q.arrows:
        if s in deg:
            deg[s] += 1
            deg[t] += 1
    m = len(comp)
    if max(deg.values(), default=0) <= 2:
        return ("A", m)
    # one branch point; arms decide D versus E
    branch = next(i for i in comp if deg[i] == 3)
    adj = {i: [] for i in comp}
    for s, t in q.arrows:
        if s in adj:
            adj[s].append(t)
            adj[t].append(s)
    arms = []
    for start in adj[branch]:
        length, prev, cur = 1, branch, start
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ("D", m)
    return ("E", m)


@dataclass
class RootSystem:
    quiver: IQuiver
    roots: list            # dimension vectors, canonical order
    index: dict            # dim vector -> root index
    order: list            # admissible order as a list of root indices
    pos: list              # root index -> position in the admissible order
    hom: list              # hom[r][t] = dim Hom(M(β_r), M(β_t))
    ext: list              # ext[r][t] = dim Ext^1(M(β_r), M(β_t))
    rho_root: list         # root index -> root index of ϱβ
    components: list
    types: list
    tiebreak: str = "lex"

    @property
    def size(self) -> int:
        return len(self.roots)

    @property
    def fixed_roots(self) -> list:
        return [r for r in range(self.size) if self.rho_root[r] == r]

    @property
    def moved_roots(self) -> list:
        return [r for r in range(self.size) if self.rho_root[r] != r]

    def orbit_representatives(self) -> list:
        """One root per ϱ-orbit, the earlier in the admissible order."""
        reps = []
        seen = set()
        for r in self.order:
            if r not in seen:
                reps.append(r)
                seen.update((r, self.rho_root[r]))
        return reps

    # isoclass helpers
    def zero(self) -> Isoclass:
        return (0,) * self.size

    def root_iso(self, r: int, m: int = 1) -> Isoclass:
        out = [0] * self.size
        out[r] = m
        return tuple(out)

    def simple_iso(self, i: int) -> Isoclass:
        d = tuple(1 if j == i else 0 for j in range(self.quiver.n))
        return self.root_iso(self.index[d])

    def dim(self, lam: Isoclass) -> tuple:
        n = self.quiver.n
        out = [0] * n
        for r, m in enumerate(lam):
            if m:
                b = self.roots[r]
                for i in range(n):
                    out[i] += m * b[i]
        return tuple(out)

    def rho_iso(self, lam: Isoclass) -> Isoclass:
        out = [0] * self.size
        for r, m in enumerate(lam):
            if m:
                out[self.rho_root[r]] = m
        return tuple(out)

    def hom_iso(self, lam: Isoclass, mu: Isoclass) -> int:
        s = 0
        for r, a in enumerate(lam):
            if a:
                row = self.hom[r]
                for t, b in enumerate(mu):
                    if b:
                        s += a * b * row[t]
        return s

    def ext_iso(self, lam: Isoclass, mu: Isoclass) -> int:
        s = 0
        for r, a in enumerate(lam):
            if a:
                row = self.ext[r]
                for t, b in enumerate(mu):
                    if b:
                        s += a * b * row[t]
        return s

    def dim_end(self, lam: Isoclass) -> int:
        return self.hom_iso(lam, lam)

    def fingerprint_of(self, lam: Isoclass) -> tuple:
        """dim Hom(M(β), M(λ)) for every root β."""
        return tuple(sum(self.hom[b][g] * m for g, m in enumerate(lam) if m)
                     for b in range(self.size))

    def isoclasses_with_dim(self, d: Sequence[int]) -> list:
        return _kostant(self, tuple(d))

    def format_root(self, r: int) -> str:
        return "[" + ",".join(str(x) for x in self.roots[r]) + "]"

    def format_iso(self, lam: Isoclass) -> str:
        parts = []
        for r in self.order:
            m = lam[r]
            if m:
                parts.append(self.format_root(r) + (f"^{m}" if m > 1 else ""))
        return "+".join(parts) if parts else "0"

    def parse_iso(self, text: str) -> Isoclass:
        text = text.strip()
        out = [0] * self.size
        if text in ("", "0"):
            return tuple(out)
        depth = 0
        pieces, cur = [], ""
        for ch in text:
            if ch == "[":
                depth += 1
            elif ch == "]":
                depth -= 1
            if ch == "+" and depth == 0:
                pieces.append(cur)
                cur = ""
            else:
                cur += ch
        pieces.append(cur)
        for piece in pieces:
            piece = piece.strip()
            if "^" in piece.split("]")[-1]:
                body, m = piece.rsplit("^", 1)
                m = int(m)
            else:
                body, m = piece, 1
            vec = tuple(int(x) for x in body.strip().strip("[]").split(","))
            if vec not in self.index:
                raise ValueError(f"{body} is not a positive root")
            out[self.index[vec]] += m
        return tuple(out)


def _kostant_impl(rs: RootSystem, d: tuple, start: int, memo: dict) -> list:
    key = (d, start)
    if key in memo:
        return memo[key]
    if not any(d):
        res = [()]
    elif start == rs.size:
        res = []
    else:
        b = rs.roots[start]
        mmax = min((d[i] // b[i] for i in range(len(d)) if b[i]), default=0)
        res = []
        for m in range(mmax, -1, -1):
            rest = tuple(x - m * y for x, y in zip(d, b))
            for tail in _kostant_impl(rs, rest, start + 1, memo):
                res.append((m,) + tail)
    memo[key] = res
    return res


def _kostant(rs: RootSystem, d: tuple) -> list:
    cache = rs.__dict__.setdefault("_kostant_cache", {})
    if d in cache:
        return cache[d]
    if any(x < 0 for x in d):
        cache[d] = []
        return []
    memo = rs.__dict__.setdefault("_kostant_memo", {})
    out = []
    for tail in _kostant_impl(rs, d, 0, memo):
        out.append(tail + (0,) * (rs.size - len(tail)))
    cache[d] = out
    return out


def _admissible_order(q: IQuiver, roots, hom, ext, rho_root, tiebreak: str) -> list:
    import heapq

    n = len(roots)
    orbit_of = {}
    orbits = []
    for r in range(n):
        if r in orbit_of:
            continue
        o = tuple(sorted({r, rho_root[r]}, key=lambda x: root_sort_key(roots[x])))
        if len(o) == 2:
            a, b = o
            if hom[a][b] or hom[b][a] or ext[a][b] or ext[b][a]:
                raise ReflectionFailure("Hom or Ext between a root and its ϱ-image")
        for x in o:
            orbit_of[x] = len(orbits)
        orbits.append(o)
    succ = [set() for _ in orbits]
    for r in range(n):
        for t in range(n):
            if orbit_of[r] == orbit_of[t]:
                continue
            # Hom(β_r, β_t) ≠ 0 forces r before t; Ext(β_t, β_r) ≠ 0 forces r before t
            if hom[r][t] or ext[t][r]:
                succ[orbit_of[r]].add(orbit_of[t])
    indeg = [0] * len(orbits)
    for s in succ:
        for t in s:
            indeg[t] += 1
    sign = 1 if tiebreak == "lex" else -1

    def prio(o):
        k = root_sort_key(roots[orbits[o][0]])
        return tuple(sign * x if isinstance(x, int) else tuple(sign * y for y in x) for x in k)

    heap = [(prio(o), o) for o in range(len(orbits)) if indeg[o] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        _, o = heapq.heappop(heap)
        members = orbits[o] if tiebreak == "lex" else tuple(reversed(orbits[o]))
        out.extend(members)
        for t in succ[o]:
            indeg[t] -= 1
            if indeg[t] == 0:
                heapq.heappush(heap, (prio(t), t))
    if len(out) != n:
        raise ReflectionFailure("Hom/Ext relation between indecomposables has a cycle")
    return out


@lru_cache(maxsize=None)
def validate(q: IQuiver, tiebreak: str = "lex") -> RootSystem:
    """Check the iquiver and build its root system with Hom/Ext tables over F_2."""
    from . import ffrep

    _check_dynkin(q)
    _check_involution(q)
    comps = q.components()
    types = [_component_type(q, c) for c in comps]
    dims = sorted(_enumerate_roots(q), key=root_sort_key)
    expected = sum(_EXPECTED[t](m) for t, m in types)
    if len(dims) != expected:
        raise NotDynkin(f"found {len(dims)} positive roots, expected {expected}")
    p = 2
    mods = [ffrep.bgp_indecomposable(q.n, q.arrows, b, p) for b in dims]
    for b, m in zip(dims, mods):
        if tuple(m.dims) != b:
            raise ReflectionFailure(f"reflection functors produced dims {m.dims} for {b}")
        if ffrep.hom_dim(m, m) != 1:
            raise ReflectionFailure(f"module for {b} is not a brick")
    n = len(dims)
    hom = [[0] * n for _ in range(n)]
    ext = [[0] * n for _ in range(n)]
    for r in range(n):
        for t in range(n):
            h, e = ffrep.hom_ext_dims(mods[r], mods[t])
            hom[r][t] = h
            ext[r][t] = e
    index = {b: i for i, b in enumerate(dims)}
    rho_root = [index[q.rho_vec(b)] for b in dims]
    order = _admissible_order(q, dims, hom, ext, rho_root, tiebreak)
    pos = [0] * n
    for k, r in enumerate(order):
        pos[r] = k
    rs = RootSystem(q, dims, index, order, pos, hom, ext, rho_root, comps, types, tiebreak)
    return rs


# ---------------------------------------------------------------- spec files
def parse_spec(text: str, label: str = "") -> IQuiver:
    n = None
    arrows = []
    pairs = []
    names = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vertices"):
            n = int(line.split("=", 1)[1])
        elif line.startswith("names"):
            names = tuple(line.split("=", 1)[1].split())
        elif line.startswith("arrow"):
            _, s, t = line.split()
            arrows.append((int(s), int(t)))
        elif line.startswith("involution"):
            _, i, j = line.split()
            pairs.append((int(i), int(j)))
        else:
            raise ValueError(f"unrecognized line {raw!r}")
    if n is None:
        raise ValueError("missing 'vertices = n' line")
    for s, t in arrows:
        if not (1 <= s <= n and 1 <= t <= n):
            raise ValueError(f"arrow {s} {t} out of range")
    rho = list(range(n))
    assigned = set()
    for i, j in pairs:
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"involution {i} {j} out of range")
        if (i in assigned or j in assigned) and (rho[i - 1] != j - 1):
            raise InvolutionInvalid(f"vertex assigned twice in involution {i} {j}")
        rho[i - 1] = j - 1
        rho[j - 1] = i - 1
        assigned.update((i, j))
    q = IQuiver(n, tuple((s - 1, t - 1) for s, t in arrows), tuple(rho), names, label=label)
    return q
