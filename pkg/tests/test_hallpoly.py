import itertools

import pytest

from hallq.errors import NotRhoSymmetric
from hallq.ffrep import rep_context
from hallq.hallpoly import HallTable, hall_table, interpolate_counts
from hallq.scalars import ONE, HalfLaurent, eval_at_sqrt_prime, qdfactorial, qint

from conftest import A1, A2, A3, A3Q

V = HalfLaurent.v
VMV = V(1) - V(-1)


def iso(rs, *parts):
    out = [0] * rs.size
    for d, m in parts:
        out[rs.index[tuple(d)]] += m
    return tuple(out)


def test_interpolation_from_counts():
    # Lines in F_q^2
    assert interpolate_counts(lambda p: p + 1) == [1, 1]
    assert interpolate_counts(lambda p: 7) == [7]


def test_a1_hall_polynomials():
    ht = hall_table(A1)
    assert ht.hall_f((1,), (1,), (2,)) == V(2) + 1
    assert ht.hall_f((2,), (0,), (2,)) == ONE
    assert ht.iterated_f([(1,), (1,)], (2,)) == ht.hall_f((1,), (1,), (2,))
    assert ht.iterated_f([(1,), (1,), (1,)], (3,)) == (V(2) + 1) * (V(4) + V(2) + 1)


def test_a2_hall_polynomials():
    ht = hall_table(A2)
    rs = ht.rs
    s1, s2, p = (iso(rs, (d, 1)) for d in ((1, 0), (0, 1), (1, 1)))
    assert ht.hall_f(s1, s2, p) == ONE
    assert ht.hall_f(s2, s1, p).is_zero()
    assert ht.hall_f(p, rs.zero(), p) == ONE
    assert ht.hall_f(s1, s1, p).is_zero()


@pytest.mark.parametrize("q", [A2, A3Q], ids=lambda q: q.label)
def test_iterated_counts(q):
    ht = hall_table(q)
    rs = ht.rs
    ctx = rep_context(q, 2)
    simples = [rs.simple_iso(i) for i in range(q.n)]
    for word in itertools.product(range(q.n), repeat=3):
        outers = [simples[i] for i in word]
        total = tuple(sum(rs.dim(s)[k] for s in outers) for k in range(q.n))
        for nu in rs.isoclasses_with_dim(total):
            a, b = eval_at_sqrt_prime(ht.iterated_f(outers, nu), 2)
            assert b == 0 and a == ctx.count_filtrations(outers, nu)


def test_riedtmann_peng_g():
    ht = hall_table(A3)
    rs = ht.rs
    for d in [(1, 1, 1), (1, 2, 1)]:
        for nu in rs.isoclasses_with_dim(d):
            for (lam, mu), f in ht.splits(nu).items():
                assert ht.hall_g(lam, mu, nu) * ht.a(nu) == f * ht.a(lam) * ht.a(mu)
                assert f.is_even_v() and ht.hall_g(lam, mu, nu).is_even_v()


def test_aut_closed_forms():
    ht = hall_table(A1)
    assert ht.a((1,)) == V(2) - 1
    assert ht.a((2,)) == V(5) * VMV ** 2 * qint(2)
    rs = hall_table(A3Q).rs
    q = hall_table(A3Q)
    lc = iso(rs, ((1, 0, 0), 1), ((0, 0, 1), 1))
    assert q.sqrt_aut(lc) == V(2) - 1
    assert q.sqrt_aut(rs.zero()) == ONE
    assert q.sqrt_aut(lc) ** 2 == q.a(lc)
    with pytest.raises(NotRhoSymmetric):
        q.sqrt_aut(iso(rs, ((1, 0, 0), 1)))
    with pytest.raises(NotRhoSymmetric):
        q.sqrt_aut(iso(rs, ((0, 1, 0), 2)))


def test_ratio_closed_form():
    ht = hall_table(A1)
    assert ht.ratio_a2f((1,)) == V(3) * VMV
    assert ht.ratio_a2f((0,)) == ONE
    assert ht.ratio_a2f((2,)) == V(12) * VMV ** 2 * qdfactorial(3)
    for m in range(4):
        assert ht.ratio_a2f((m,)) == ht.ratio_a2f_by_division((m,))


def test_brace():
    ht = hall_table(A2)
    rs = ht.rs
    s1, p = iso(rs, ((1, 0), 1)), iso(rs, ((1, 1), 1))
    assert ht.brace(s1, rs.zero()) == 0
    assert ht.brace(p, p) == 2
    assert ht.brace(s1, p) == 1


def test_persistence_round_trip(tmp_path):
    ht = HallTable(A2)
    path = str(tmp_path / "t.json")
    ht.save(path, 3)
    fresh = HallTable(A2)
    assert fresh.load(path)
    rs = ht.rs
    for key, val in fresh._f.items():
        assert val == ht.hall_f(*key)
    assert not HallTable(A3).load(path)
