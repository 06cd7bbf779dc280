import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from hallq.ffrep import (conjugate, direct_sum, end_basis, hom_dim, make_rep, random_invertible,
                         rep_context, simple_rep)
from hallq.quiver import IQuiver, validate

from conftest import A1, A2, A3, A3Q

D4 = IQuiver.from_one_based(4, [(2, 1), (3, 2), (4, 2)], [], "D4")


def iso(rs, *parts):
    """Isoclass from (dimension vector, multiplicity) pairs."""
    out = [0] * rs.size
    for d, m in parts:
        out[rs.index[tuple(d)]] += m
    return tuple(out)


def test_indecomposables():
    ctx = rep_context(A2, 2)
    m = ctx.indecomposable(ctx.rs.index[(1, 1)])
    assert m.dims == (1, 1) and m.mats == (((1,),),)
    s1 = ctx.indecomposable(ctx.rs.index[(1, 0)])
    assert s1.mats == ((),)
    d4 = rep_context(D4, 2)
    top = max(d4.rs.roots, key=sum)
    assert top == (1, 2, 1, 1)
    assert len(end_basis(d4.indecomposable(d4.rs.index[top]))) == 1


def test_hom_dims():
    ctx = rep_context(A2, 3)
    s1, s2 = (simple_rep(2, A2.arrows, k, 3) for k in (0, 1))
    p12 = ctx.indecomposable(ctx.rs.index[(1, 1)])
    assert hom_dim(s1, s1) == 1
    # 1 -> 2: the projective-injective M(1,1) has S2 as sub and S1 as top
    assert hom_dim(s2, p12) == 1
    assert hom_dim(p12, s1) == 1
    assert hom_dim(s1, p12) == 0
    assert hom_dim(p12, s2) == 0


def test_recognition():
    ctx = rep_context(A2, 2)
    rs = ctx.rs
    s = direct_sum([simple_rep(2, A2.arrows, 0, 2), simple_rep(2, A2.arrows, 1, 2)])
    assert ctx.isoclass_of(s) == iso(rs, ((1, 0), 1), ((0, 1), 1))
    nonsplit = make_rep(2, (1, 1), A2.arrows, [[[1]]])
    assert ctx.isoclass_of(nonsplit) == iso(rs, ((1, 1), 1))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=6, max_size=6), st.integers(0, 10 ** 6),
       st.sampled_from([2, 3]))
def test_recognition_after_conjugation(mults, seed, p):
    ctx = rep_context(A3Q, p)
    lam = tuple(mults)
    m = ctx.build_module(lam)
    rng = random.Random(seed)
    g = [random_invertible(d, p, rng) for d in m.dims]
    c = conjugate(m, g)
    assert ctx.isoclass_of(c) == lam
    assert ctx.isoclass_of_full(c) == lam


def test_filtration_counts():
    rs = validate(A1)
    a, two = (1,), (2,)
    assert rep_context(A1, 2).count_filtrations([a, a], two) == 3
    assert rep_context(A1, 3).count_filtrations([a, a], two) == 4
    rs2 = validate(A2)
    s1, s2 = iso(rs2, ((1, 0), 1)), iso(rs2, ((0, 1), 1))
    top = iso(rs2, ((1, 1), 1))
    for p in (2, 3):
        ctx = rep_context(A2, p)
        assert ctx.count_filtrations([s1, s2], top) == 1
        assert ctx.count_filtrations([s2, s1], top) == 0
        assert ctx.count_filtrations([top, rs2.zero()], top) == 1
    assert rep_context(A1, 2).count_filtrations([a, a, a], (3,)) == 21
    assert rs.size == 1


def test_aut_counts():
    rs = validate(A2)
    s1 = iso(rs, ((1, 0), 1))
    assert rep_context(A2, 2).aut_count(s1) == 1
    assert rep_context(A1, 2).aut_count((2,)) == 6
    both = iso(rs, ((1, 0), 1), ((0, 1), 1))
    assert rep_context(A2, 3).aut_count(both) == 4


@pytest.mark.parametrize("q", [A2, A3Q], ids=lambda q: q.label)
@pytest.mark.parametrize("p", [2, 3])
def test_riedtmann_peng(q, p):
    """Submodule counts against extension counts: F a_λ a_μ |Hom(λ,μ)| = |Ext(λ,μ)_ν| a_ν."""
    ctx = rep_context(q, p)
    rs = ctx.rs
    dims = [d for d in itertools.product(range(3), repeat=q.n) if 0 < sum(d) <= 3]
    isos = [lam for d in dims for lam in rs.isoclasses_with_dim(d)]
    for lam, mu in itertools.product(isos, repeat=2):
        if sum(rs.dim(lam)) + sum(rs.dim(mu)) > 3:
            continue
        ext = ctx.extension_census(lam, mu)
        homs = p ** rs.hom_iso(lam, mu)
        total = tuple(a + b for a, b in zip(rs.dim(lam), rs.dim(mu)))
        for nu in rs.isoclasses_with_dim(total):
            f = ctx.count_filtrations([lam, mu], nu)
            lhs = f * ctx.aut_count(lam) * ctx.aut_count(mu) * homs
            assert lhs == ext.get(nu, 0) * ctx.aut_count(nu), (lam, mu, nu)


def test_counts_are_isomorphism_invariant():
    ctx = rep_context(A3, 3)
    rs = ctx.rs
    nu = iso(rs, ((1, 1, 0), 1), ((0, 1, 1), 1), ((0, 1, 0), 1))
    m = ctx.build_module(nu)
    rng = random.Random(7)
    c = conjugate(m, [random_invertible(d, 3, rng) for d in m.dims])
    from hallq.ffrep import enumerate_submodules
    def census(mod):
        out = {}
        for sub, quo in enumerate_submodules(mod):
            k = (ctx.isoclass_of(quo), ctx.isoclass_of(sub))
            out[k] = out.get(k, 0) + 1
        return out
    assert census(c) == census(m) == ctx.census(nu)
