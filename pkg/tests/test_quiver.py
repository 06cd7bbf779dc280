import itertools

import pytest

from hallq.errors import DimensionMismatch, ExcludedType, InvolutionInvalid, NotDynkin
from hallq.ffrep import hom_ext_dims, rep_context
from hallq.quiver import (IQuiver, diagonal_base, double_quiver, grading, parse_spec,
                          validate)

from conftest import A1, A2, A3, A3Q, linear, quasi_split

D4 = IQuiver.from_one_based(4, [(2, 1), (3, 2), (4, 2)], [], "D4")
D4Q = IQuiver.from_one_based(4, [(2, 1), (3, 2), (4, 2)], [(3, 4)], "D4q")
E6 = IQuiver.from_one_based(6, [(1, 2), (2, 3), (3, 4), (4, 5), (3, 6)], [], "E6")


@pytest.mark.parametrize("q,count", [(A1, 1), (A2, 3), (A3, 6), (linear(4), 10), (D4, 12),
                                     (A3Q, 6), (quasi_split(2), 15), (D4Q, 12), (E6, 36)],
                         ids=lambda x: getattr(x, "label", str(x)))
def test_root_counts(q, count):
    assert validate(q).size == count


def test_a2_roots_and_order():
    rs = validate(A2)
    assert sorted(rs.roots) == [(0, 1), (1, 0), (1, 1)]
    # the only admissible order for 1 -> 2
    assert [rs.roots[r] for r in rs.order] == [(0, 1), (1, 1), (1, 0)]


def test_quasi_split_a3_rho_on_roots():
    rs = validate(A3Q)
    act = {rs.roots[r]: rs.roots[rs.rho_root[r]] for r in range(rs.size)}
    assert act[(1, 0, 0)] == (0, 0, 1)
    assert act[(0, 0, 1)] == (1, 0, 0)
    assert act[(0, 1, 0)] == (0, 1, 0)
    assert act[(1, 1, 1)] == (1, 1, 1)


def test_rejections():
    with pytest.raises(ExcludedType):
        validate(IQuiver.from_one_based(2, [(1, 2)], [(1, 2)]))
    with pytest.raises(ExcludedType):
        validate(IQuiver.from_one_based(4, [(1, 2), (2, 3), (4, 3)], [(1, 4), (2, 3)]))
    with pytest.raises(NotDynkin):
        validate(IQuiver.from_one_based(3, [(1, 2), (2, 3), (3, 1)]))
    with pytest.raises(NotDynkin):
        validate(IQuiver.from_one_based(5, [(1, 5), (2, 5), (3, 5), (4, 5)]))
    # swapping the ends of 1 -> 2 -> 3 does not preserve arrows
    with pytest.raises(InvolutionInvalid):
        validate(IQuiver.from_one_based(3, [(1, 2), (2, 3)], [(1, 3)]))


def test_euler_form():
    assert A2.euler((1, 0), (0, 1)) == -1
    assert A2.euler((0, 1), (1, 0)) == 0
    for q in (A3, D4, E6):
        c = q.cartan()
        for i in range(q.n):
            e = tuple(int(k == i) for k in range(q.n))
            assert q.sym(e, e) == 2
            for j in range(q.n):
                f = tuple(int(k == j) for k in range(q.n))
                assert q.sym(e, f) == c[i][j]
    with pytest.raises(DimensionMismatch):
        A2.euler((1,), (1, 0))


@pytest.mark.parametrize("q", [A2, A3, A3Q, D4, D4Q], ids=lambda q: q.label)
def test_root_tables(q):
    rs = validate(q)
    for r, t in itertools.product(range(rs.size), repeat=2):
        a, b = rs.roots[r], rs.roots[t]
        assert rs.hom[r][t] - rs.ext[r][t] == q.euler(a, b)
        # rho-equivariance
        assert rs.hom[rs.rho_root[r]][rs.rho_root[t]] == rs.hom[r][t]
    for r in range(rs.size):
        assert q.euler(rs.roots[r], rs.roots[r]) == 1
        if rs.rho_root[r] != r:
            assert rs.hom[r][rs.rho_root[r]] == 0
    # Ext(M(β_r), M(β_t)) != 0 forces r after t, and orbits are interleaved
    for r, t in itertools.product(range(rs.size), repeat=2):
        if rs.ext[r][t]:
            assert rs.pos[r] > rs.pos[t]
    k = 0
    while k < rs.size:
        r = rs.order[k]
        s = rs.rho_root[r]
        if s != r:
            assert rs.order[k + 1] == s
            k += 2
        else:
            k += 1


@pytest.mark.parametrize("p", [3])
def test_tables_independent_of_field(p):
    rs = validate(A3Q)
    ctx = rep_context(A3Q, p)
    for r, t in itertools.product(range(rs.size), repeat=2):
        assert hom_ext_dims(ctx.indecomposable(r), ctx.indecomposable(t)) == (rs.hom[r][t], rs.ext[r][t])


def test_revlex_order_is_admissible():
    lex, rev = validate(quasi_split(2), "lex"), validate(quasi_split(2), "revlex")
    assert sorted(lex.order) == sorted(rev.order)
    for r, t in itertools.product(range(rev.size), repeat=2):
        if rev.ext[r][t]:
            assert rev.pos[r] > rev.pos[t]


def test_double_quiver():
    d = double_quiver(A2)
    assert d.n == 4 and set(d.arrows) == {(0, 1), (2, 3)}
    assert d.rho == (2, 3, 0, 1)
    assert d.names[2] == "1◇"
    assert diagonal_base(d) == A2
    assert diagonal_base(A3Q) is None
    dd = double_quiver(d)
    assert validate(dd).size == 12
    assert validate(double_quiver(A1)).size == 2


def test_grading():
    assert grading(A1, (0,), (1,)) == (1,)
    assert grading(A1, (1,), (0,)) == (2,)
    assert grading(A3Q, (1, 0, 0), (0, 1, 0)) == (1, 1, 1)


def test_spec_round_trip():
    for q in (A3Q, D4Q, double_quiver(A2)):
        back = parse_spec(q.spec_text())
        assert (back.n, set(back.arrows), back.rho) == (q.n, set(q.arrows), q.rho)
    with pytest.raises(ValueError):
        parse_spec("arrow 1 2\n")
