import pytest
from hypothesis import given, strategies as st

from drinfeld_gl2.algebra import AIdeal, APoly, FunctionField, QuotientRing, RatFunc, gf, valuation
from drinfeld_gl2.algebra.ideal import parse_ratfunc
from drinfeld_gl2.drinfeld import (GOOD, NOT_STABLE, POTENTIALLY_GOOD, STABLE_RANK1, AdditivePoly,
                                   DrinfeldModule, SkewPoly, bad_primes, j_invariant, reduce_module,
                                   reduction_type, skew_mul, torsion_polynomial)

from conftest import example, module, poly
from strategies import polys


def K2():
    return FunctionField(gf(2))


def sk(q, *coeffs):
    K = FunctionField(gf(q))
    return SkewPoly(K, [K(poly(c, q)) for c in coeffs])


def test_skew_commutation_rule():
    K = K2()
    tau = SkewPoly.tau(K)
    t = sk(2, "t")
    assert skew_mul(tau, t) == sk(2, "0", "t^2")
    assert skew_mul(sk(2, "t", "1"), sk(2, "t", "1")) == sk(2, "t^2", "t^2+t", "1")
    f = sk(2, "t", "t+1", "t^3")
    assert skew_mul(f, sk(2, "1")) == f


@given(st.data())
def test_skew_ring_laws(data):
    q = data.draw(st.sampled_from((2, 3, 4)))
    F = gf(q)
    K = FunctionField(F)

    def draw():
        return SkewPoly(K, [K(data.draw(polys(F, 2))) for _ in range(data.draw(st.integers(0, 3)))])
    f, g, h = draw(), draw(), draw()
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    if f and g:
        assert (f * g).deg == f.deg + g.deg
    # d0 is a ring homomorphism
    assert (f * g).constant_term() == K.mul(f.constant_term(), g.constant_term())


def test_phi_of_examples():
    F = gf(2)
    carlitz = DrinfeldModule(FunctionField(F), [APoly.t(F), APoly.const(F, 1)])
    assert carlitz.phi_of(APoly.t(F)) == carlitz.phi_t
    assert carlitz.phi_of(poly("t^2", 2)) == sk(2, "t^2", "t^2+t", "1")


@given(st.data())
def test_phi_is_ring_homomorphism(data):
    q = data.draw(st.sampled_from((2, 3, 4)))
    F = gf(q)
    dm = DrinfeldModule.rank2(F, data.draw(polys(F, 2)), data.draw(polys(F, 2, nonzero=True)))
    a, b = data.draw(polys(F, 2)), data.draw(polys(F, 2))
    assert dm.phi_of(a * b) == dm.phi_of(a) * dm.phi_of(b)
    assert dm.phi_of(a + b) == dm.phi_of(a) + dm.phi_of(b)
    assert dm.phi_of(a).constant_term() == RatFunc(a) if a else not dm.phi_of(a)
    if a:
        assert dm.phi_of(a).deg == 2 * a.deg


@given(st.data())
def test_reduced_phi_is_ring_homomorphism(data):
    F = gf(3)
    P = AIdeal(poly("t^2+1", 3))
    dm = DrinfeldModule.rank2(F, data.draw(polys(F, 2)), poly("t+1", 3))
    red = reduce_module(dm, P)
    a, b = data.draw(polys(F, 3)), data.draw(polys(F, 3))
    assert red.phi_of(a * b) == red.phi_of(a) * red.phi_of(b)
    assert red.phi_of(a).constant_term() == (a % P.gen)


def test_j_invariant_examples():
    assert j_invariant(example(2)) == parse_ratfunc("t^9/(t^2+t+1)", gf(2))
    for q in (3, 5):
        F = gf(q)
        j = j_invariant(example(q))
        assert j == RatFunc(APoly.const(F, F.from_int(-1)), APoly.monomial(F, q - 1))
    assert not j_invariant(module(3, "0", "t"))


def test_reduction_type_examples():
    ex2 = example(2)
    rep = reduction_type(ex2, AIdeal(poly("t^2+t+1", 2)))
    assert rep.kind == STABLE_RANK1 and rep.v_j == -1
    assert reduction_type(ex2, AIdeal(poly("t", 2))).kind == GOOD
    assert [str(P) for P in bad_primes(ex2)] == ["(t^2+t+1)"]
    for q in (3, 5):
        rep = reduction_type(example(q), AIdeal(APoly.t(gf(q))))
        assert rep.kind == STABLE_RANK1 and rep.v_j == -(q - 1)


@pytest.mark.parametrize("q,a1,a2,kind,v_j", [
    (2, "1", "t", STABLE_RANK1, -1),
    (2, "0", "t", POTENTIALLY_GOOD, None),
    (3, "t", "t^3", POTENTIALLY_GOOD, 1),
    (3, "t", "t^5", NOT_STABLE, -1),
    (3, "t", "t^8", NOT_STABLE, -4),
    (3, "t^2", "t^8", GOOD, 0),
])
def test_reduction_kinds(q, a1, a2, kind, v_j):
    rep = reduction_type(module(q, a1, a2), AIdeal(APoly.t(gf(q))))
    assert rep.kind == kind and rep.v_j == v_j


@given(st.data())
def test_potential_good_iff_nonnegative_j_valuation(data):
    q = data.draw(st.sampled_from((2, 3)))
    F = gf(q)
    a1, a2 = data.draw(polys(F, 4)), data.draw(polys(F, 4, nonzero=True))
    dm = DrinfeldModule.rank2(F, a1, a2)
    P = AIdeal(data.draw(st.sampled_from([APoly.t(F), poly("t+1", q)])))
    rep = reduction_type(dm, P)
    vj = valuation(j_invariant(dm), P)
    assert (float("inf") if rep.v_j is None else rep.v_j) == vj
    assert (rep.kind in (GOOD, POTENTIALLY_GOOD)) == (vj >= 0)
    if rep.kind == GOOD:
        assert rep.potential_rank == 2


@given(st.data())
def test_reduction_type_twist_invariant(data):
    q = data.draw(st.sampled_from((2, 3)))
    F = gf(q)
    dm = DrinfeldModule.rank2(F, data.draw(polys(F, 3)), data.draw(polys(F, 3, nonzero=True)))
    b = RatFunc(data.draw(polys(F, 2, nonzero=True)), data.draw(polys(F, 2, nonzero=True)))
    tw = dm.twist(b)
    assert j_invariant(tw) == j_invariant(dm)
    for P in (AIdeal(APoly.t(F)), AIdeal(poly("t+1", q))):
        r1, r2 = reduction_type(dm, P), reduction_type(tw, P)
        assert (r1.kind, r1.potential_rank, r1.v_j) == (r2.kind, r2.potential_rank, r2.v_j)


def test_torsion_polynomial_examples():
    ex2 = example(2)
    red = reduce_module(ex2, AIdeal(poly("t", 2)))
    assert str(torsion_polynomial(red, AIdeal(poly("t", 2)))) == "x^4"
    assert str(torsion_polynomial(red, AIdeal(poly("t+1", 2)))) == "x^4 + x"
    F = gf(2)
    carlitz = DrinfeldModule(FunctionField(F), [APoly.t(F), APoly.const(F, 1)])
    tp = torsion_polynomial(carlitz, AIdeal(APoly.t(F)))
    assert str(tp) == "x^2 + (t)*x"
    assert tp.degree == 2


@given(st.data())
def test_additive_polynomial_is_linear(data):
    F = gf(3)
    R = QuotientRing(poly("t^3+2*t+1", 3))
    dm = DrinfeldModule(R, [APoly.t(F), data.draw(polys(F, 2)) % R.m, poly("t+2", 3)],
                        characteristic=AIdeal(R.m))
    A = AdditivePoly.from_skew(dm.phi_of(data.draw(polys(F, 2))))
    x, y = R(data.draw(polys(F, 2))), R(data.draw(polys(F, 2)))
    c = APoly.const(F, data.draw(st.integers(0, 2)))
    assert A(R.add(x, y)) == R.add(A(x), A(y))
    assert A(R.mul(c, x)) == R.mul(c, A(x))


def test_rank_and_zero_top_coefficient():
    F = gf(2)
    with pytest.raises(ValueError):
        DrinfeldModule(FunctionField(F), [APoly.t(F), APoly.const(F, 1), APoly(F)])
    with pytest.raises(ValueError):
        j_invariant(DrinfeldModule(FunctionField(F), [APoly.t(F), APoly.const(F, 1)]))
