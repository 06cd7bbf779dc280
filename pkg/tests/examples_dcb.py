"""Interval-module expansions of Ω̃ in type A, as closed formulas."""
from hallq.dcb import DCB
from hallq.qsp import qsp
from hallq.scalars import ONE, HalfLaurent, v_pow

from conftest import linear, quasi_split

V = v_pow


def interval_iso(rs, n, *intervals):
    """Isoclass of ⊕ M([s,t]) over one-based intervals; empty intervals are skipped."""
    out = [0] * rs.size
    for s, t in intervals:
        if s > t:
            continue
        d = tuple(1 if s - 1 <= i <= t - 1 else 0 for i in range(n))
        out[rs.index[d]] += 1
    return tuple(out)


def interval_vec(n, s, t):
    return tuple(1 if s - 1 <= i <= t - 1 else 0 for i in range(n))


def split_interval_checks(nv: int) -> dict:
    """Ω̃(𝔘_[s,t]) = Σ_{k=-1}^{t-s} v^{t-s-k} 𝕂_[s+k+1,t] ⋄ (𝔘_[s+k+1,t] ⊕ 𝔘_[s,s+k]◇)."""
    Q = qsp(linear(nv))
    H, D = Q.H, Q.D
    dh, dd = DCB(H), DCB(D)
    z = (0,) * nv
    res = {"U form": [], "dCB": [], "L = U+U": []}
    for s in range(1, nv + 1):
        for t in range(s, nv + 1):
            img = Q.omega(dh.rescale_U(interval_iso(H.rs, nv, (s, t))))
            want, elt = {}, D.zero()
            for k in range(-1, t - s + 1):
                X = D.join(interval_iso(H.rs, nv, (s + k + 1, t)), interval_iso(H.rs, nv, (s, s + k)))
                g = interval_vec(nv, s + k + 1, t) + z
                want[(g, X)] = V(t - s - k)
                elt = elt + dd.diamond(g, dd.rescale_U(X)).scale(V(t - s - k))
                res["L = U+U"].append(dd.entry((D.zero_vec(), X)) == {(D.zero_vec(), X): ONE})
            res["U form"].append(img == elt)
            res["dCB"].append(dd.expand(img) == want)
    return res


def quasi_split_interval_checks(n: int, m: int) -> dict:
    """Ω̃(𝔘_[1,m]) for the quasi-split A_{2n+1}, in the 𝔘 basis and in the dCB."""
    N = 2 * n + 1
    Q = qsp(quasi_split(n))
    H, D = Q.H, Q.D
    rs = H.rs
    dh, dd = DCB(H), DCB(D)
    z = (0,) * N
    Z = D.zero_vec()

    def X(a, b):
        return D.join(interval_iso(rs, N, *a), interval_iso(rs, N, *b))

    def KU(g, x):
        return dd.diamond(g + z, dd.rescale_U(x))

    img = Q.omega(dh.rescale_U(interval_iso(rs, N, (1, m))))
    res = {}
    if m <= n + 1:
        want, elt = {}, D.zero()
        for k in range(m + 1):
            x = X([(2 * n + 2 - m, 2 * n + 1 - k)], [(1, k)])
            c = V(1 if (m == n + 1 and k != m) else 0)
            want[(interval_vec(N, k + 1, m) + z, x)] = c
            elt = elt + KU(interval_vec(N, k + 1, m), x).scale(c)
            res.setdefault("L = U+U", []).append(dd.entry((Z, x)) == {(Z, x): ONE})
        res["U form"] = [img == elt]
        res["dCB"] = [dd.expand(img) == want]
        return res
    # m > n+1: first the 𝔘 form, then the 𝔏 building blocks, then the dCB expansion
    elt = dd.rescale_U(X([], [(1, m)]))
    for k in range(n + 1):
        for l in range(m - n):
            elt = elt + KU(interval_vec(N, n + 1 - k, n + 1 + l),
                           X([(n + 1 - l, n + 1 + k)], [(1, n - k), (n + 2 + l, m)])).scale(V(1))
    for k in range(m - n - 1):
        for l in range(1, m - n - k):
            elt = elt + KU(interval_vec(N, n + 1 - k - l, n + 1 + k + l),
                           X([(n + 1 - k, n + 1 + k)], [(1, n - k - l), (n + 2 + k + l, m)])
                           ).scale(V(2) - ONE)
    res["U form"] = [img == elt]
    for k in range(m - n - 1):
        for l in range(1, m - n - k):
            x = X([(n + 1 - k, n + 1 + k)], [(1, n - k - l), (n + 2 + k + l, m)])
            res.setdefault("L = U+U inner", []).append(dd.entry((Z, x)) == {(Z, x): ONE})
    for k in range(n + 1):
        for l in range(m - n):
            x = X([(n + 1 - l, n + 1 + k)], [(1, n - k), (n + 2 + l, m)])
            ent = dd.entry((Z, x))
            if k == l:
                want = {(Z, x): ONE}
                name = "L k=l"
            elif k < l:
                y = X([(n + 1 - k, n + 1 + k)], [(1, n - l), (n + 2 + l, m)])
                want = {(Z, x): ONE, (interval_vec(N, n + 1 - l, n - k) + z, y): -V(-1)}
                name = "L k<l"
            else:
                y = X([(n + 1 - l, n + 1 + l)], [(1, n - k), (n + 2 + k, m)])
                want = {(Z, x): ONE, (interval_vec(N, n + 2 + l, n + 1 + k) + z, y): -V(-1)}
                name = "L k>l"
            res.setdefault(name, []).append(ent == want)
    expected = {}

    def add(key, c):
        expected[key] = expected.get(key, HalfLaurent()) + c

    add((Z, X([], [(1, m)])), ONE)
    for k in range(n + 1):
        for l in range(m - n):
            add((interval_vec(N, n + 1 - k, n + 1 + l) + z,
                 X([(n + 1 - l, n + 1 + k)], [(1, n - k), (n + 2 + l, m)])), V(1))
    for k in range(m - n):
        for l in range(k + 1, m - n):
            add((interval_vec(N, n + 1 - l, n + 1 + l) + z,
                 X([(n + 1 - k, n + 1 + k)], [(1, n - l), (n + 2 + l, m)])), V(2))
    for l in range(min(n, m - n - 1) + 1):
        for k in range(l + 1, n + 1):
            add((interval_vec(N, n + 1 - k, n + 1 + k) + z,
                 X([(n + 1 - l, n + 1 + l)], [(1, n - k), (n + 2 + k, m)])), ONE)
    expected = {k: c for k, c in expected.items() if c}
    res["dCB"] = [dd.expand(img) == expected]
    res["coefficients"] = [set(map(str, expected.values())) <= {"1", "v", "v^2", "v^2 + 1"}]
    return res
