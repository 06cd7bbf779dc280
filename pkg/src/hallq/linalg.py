"""Dense linear algebra over prime fields on lists of rows."""
from __future__ import annotations

from fractions import Fraction


def zeros(r: int, c: int) -> list:
    return [[0] * c for _ in range(r)]


def identity(n: int) -> list:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a: list, b: list, p: int, inner: int | None = None) -> list:
    """a (r x k) times b (k x c) mod p; `inner` gives k when a has no rows."""
    if not a:
        return []
    k = len(a[0]) if inner is None else inner
    c = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * c
        for t in range(k):
            x = row[t]
            if x:
                brow = b[t]
                for j in range(c):
                    acc[j] += x * brow[j]
        out.append([v % p for v in acc])
    return out


def rref(m: list, p: int, ncols: int | None = None):
    """Row-reduced echelon form mod p; returns (rows, pivot columns)."""
    rows = [[x % p for x in r] for r in m]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        pr = [(x * inv) % p for x in rows[r]]
        rows[r] = pr
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                ri = rows[i]
                rows[i] = [(ri[j] - f * pr[j]) % p for j in range(ncols)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(m: list, p: int) -> int:
    """Rank mod p via forward elimination only."""
    rows = [[x % p for x in r] for r in m if any(x % p for x in r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rk = 0
    for c in range(ncols):
        piv = None
        for i in range(rk, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        pr = rows[rk]
        inv = pow(pr[c], p - 2, p)
        for i in range(rk + 1, len(rows)):
            ri = rows[i]
            if ri[c]:
                f = (ri[c] * inv) % p
                rows[i] = [(ri[j] - f * pr[j]) % p for j in range(ncols)]
        rk += 1
        if rk == len(rows):
            break
    return rk


def nullspace(m: list, p: int, ncols: int) -> list:
    """Basis of {x : m x = 0} as a list of vectors."""
    red, piv = rref(m, p, ncols)
    pivset = set(piv)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for r, c in enumerate(piv):
            x[c] = (-red[r][f]) % p
        basis.append(x)
    return basis


def transpose(m: list, nrows: int | None = None, ncols: int | None = None) -> list:
    if nrows is None:
        nrows = len(m)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    return [[m[i][j] for i in range(nrows)] for j in range(ncols)]


def left_nullspace(m: list, p: int, nrows: int, ncols: int) -> list:
    """Rows y with y m = 0."""
    return nullspace(transpose(m, nrows, ncols), p, nrows)


def is_invertible(m: list, p: int) -> bool:
    return rank(m, p) == len(m)


def det_mod(m: list, p: int) -> int:
    n = len(m)
    a = [[x % p for x in r] for r in m]
    d = 1
    for c in range(n):
        piv = None
        for i in range(c, n):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d = (d * a[c][c]) % p
        inv = pow(a[c][c], p - 2, p)
        for i in range(c + 1, n):
            if a[i][c]:
                f = (a[i][c] * inv) % p
                a[i] = [(a[i][j] - f * a[c][j]) % p for j in range(n)]
    return d % p


def inverse_mod(m: list, p: int) -> list:
    n = len(m)
    aug = [list(m[i]) + identity(n)[i] for i in range(n)]
    red, piv = rref(aug, p, 2 * n)
    if piv[:n] != list(range(n)) or len(piv) < n or any(c >= n for c in piv[:n]):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def rank_rational(m: list) -> int:
    """Rank over Q of a matrix with Fraction/int entries."""
    rows = [[Fraction(x) for x in r] for r in m]
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rk = 0
    for c in range(ncols):
        piv = None
        for i in range(rk, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        pr = rows[rk]
        for i in range(rk + 1, len(rows)):
            if rows[i][c]:
                f = rows[i][c] / pr[c]
                rows[i] = [rows[i][j] - f * pr[j] for j in range(ncols)]
        rk += 1
    return rk
