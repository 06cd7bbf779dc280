import pytest

from hallq import hopf
from hallq.elements import Element
from hallq.errors import ContextMismatch
from hallq.ihall import double_algebra, ihall_algebra
from hallq.scalars import ONE, ZERO, HalfLaurent, v_pow

from conftest import A1, A2, A3Q

V = HalfLaurent.v


def test_borel_coproduct_examples():
    B = hopf.borel_algebra(A2)
    T = B.tensor
    for i in range(2):
        e = tuple(int(k == i) for k in range(2))
        want = T.pure(B.u_simple(i), B.one()) + T.pure(B.K(e), B.u_simple(i))
        assert B.coproduct(B.u_simple(i)) == want
    assert B.coproduct(B.one()) == T.pure(B.one(), B.one())
    a = hopf.borel_algebra(A1)
    d = a.coproduct(a.u((2,)))
    assert d.terms[(((1,), (1,)), ((0,), (1,)))] == V(1) * (V(2) + 1)


def test_counit_antipode_pairing():
    B = hopf.borel_algebra(A3Q)
    assert B.counit(B.K((1, 0, 1))) == ONE
    assert B.counit(B.u_simple(0)) == ZERO
    for i in range(3):
        e = tuple(int(k == i) for k in range(3))
        neg = tuple(-x for x in e)
        assert B.antipode(B.u_simple(i)) == -(B.K(neg) * B.u_simple(i))
    rs = B.rs
    for r in range(rs.size):
        b = B.u(rs.root_iso(r))
        assert B.pairing(b, b) == V(2) - 1
        for t in range(rs.size):
            if t != r:
                assert B.pairing(b, B.u(rs.root_iso(t))) == ZERO
    a, b = (1, 0, 0), (0, 1, 1)
    assert B.pairing(B.K(a), B.K(b)) == v_pow(A3Q.sym(a, b))


def test_star_on_group_likes():
    B = hopf.borel_algebra(A3Q)
    for a, b in [((1, 0, 0), (0, 0, 1)), ((0, 1, 0), (1, 1, 0)), ((1, 0, 0), (1, 0, 0))]:
        got = B.star(B.K(a), B.K(b))
        s = tuple(x + y for x, y in zip(a, b))
        assert got.terms == {(s, B.rs.zero()): v_pow(A3Q.sym(A3Q.rho_vec(b), a))}
    x = B.u_simple(1)
    assert B.star(B.one(), x).terms == x.terms


def test_phi_iso_examples():
    H = ihall_algebra(A1)
    B = hopf.borel_algebra(A1)
    assert hopf.phi_iso(H.u((2,)), B).terms == {((0,), (2,)): ONE}
    assert hopf.phi_iso(H.K((1,)), B).terms == {((1,), (0,)): V(1)}
    with pytest.raises(ContextMismatch):
        hopf.phi_iso(ihall_algebra(A2).one(), B)
    y = hopf.phi_iso(H.u((1,)) * H.K((1,)), B)
    assert hopf.phi_iso_inverse(y, H) == H.u((1,)) * H.K((1,))


def test_double_coproduct_and_counit_examples():
    hop = hopf.double_hopf(A2)
    D = hop.D
    T = hop.tensor
    rs = hop.rs
    z = (0, 0)
    for i in range(2):
        e = tuple(int(k == i) for k in range(2))
        s = rs.simple_iso(i)
        x = D.upair(s, rs.zero())
        want = T.pure(x, D.one()) + T.pure(D.K(z + e), x)
        assert hop.coproduct(x) == want
    nonzero = [rs.root_iso(r) for r in range(rs.size)]
    for lam in nonzero:
        assert hop.counit(D.upair(lam, rs.zero())) == ZERO
        assert hop.counit(D.upair(rs.zero(), lam)) == ZERO
    assert hop.counit(D.one()) == ONE


@pytest.mark.parametrize("q", [A1, A2], ids=lambda q: q.label)
def test_generator_coproducts(q):
    assert hopf.verify_generator_coproducts(q).ok


def test_pairing_and_isos():
    assert hopf.verify_pairing(A2, 2).ok
    assert hopf.verify_phi_isos(A3Q, 2).ok
    assert hopf.verify_double_transport(A1, 2).ok


def test_borel_axioms_small():
    r = hopf.verify_borel_axioms(A3Q, 2)
    assert r.ok and r.total > 0


def _antipode_defects(hop) -> int:
    """Basis elements u_λ⊕u_μ◇ (height ≤ 2 per side) where m(S⊗id)Δ ≠ ηε."""
    rs, D = hop.rs, hop.D
    bad = 0
    for r in range(rs.size):
        for lam, mu in [(rs.root_iso(r), rs.zero()), (rs.zero(), rs.root_iso(r)),
                        (rs.root_iso(r), rs.root_iso(r))]:
            x = D.upair(lam, mu)
            left = D.zero()
            for (k1, k2), c in hop.coproduct(x).terms.items():
                left = left + (hop.antipode(Element(D, {k1: ONE})) * Element(D, {k2: ONE})).scale(c)
            bad += left != D.one().scale(hop.counit(x))
    return bad


@pytest.mark.parametrize("variant,weighted,broken", [
    ("displayed", False, False), ("alternative", False, True), ("displayed", True, True)])
def test_antipode_conventions(variant, weighted, broken):
    """Only the unweighted displayed exponent satisfies the antipode axiom in A2."""
    hop = hopf.double_hopf(A2, variant=variant, weighted=weighted)
    assert (_antipode_defects(hop) > 0) == broken
