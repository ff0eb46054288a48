import pytest
from hypothesis import given, strategies as st

from drinfeld_gl2 import wild2
from drinfeld_gl2.algebra import APoly, RatFunc, gf
from drinfeld_gl2.algebra.ideal import INFINITY, valuation
from drinfeld_gl2.drinfeld import j_invariant

from conftest import example, module, poly
from strategies import polys

F2 = gf(2)


def rat(text, q=2):
    return RatFunc(poly(text, q))


# --- resolvent quadratic ------------------------------------------------------

def test_resolvent_of_x3_plus_1():
    F = gf(5)
    c0, c1, c2 = wild2.resolvent_quadratic(APoly(F), APoly.const(F, 1))
    assert (c0, c1, c2) == (RatFunc.coerce(9, F), RatFunc.coerce(-3, F), RatFunc.coerce(1, F))


@pytest.mark.parametrize("q", (5, 7, 4))
def test_resolvent_discriminant_equals_cubic_discriminant(q):
    F = gf(q)
    for b, c in (("t", "1"), ("t^2+1", "t"), ("1", "t^3+t")):
        B, C = RatFunc(poly(b, q)), RatFunc(poly(c, q))
        coeffs = wild2.resolvent_quadratic(B, C)
        assert wild2.quadratic_discriminant(coeffs) == wild2.cubic_discriminant(B, C)


def test_inseparable_cubic_rejected():
    F = gf(5)
    with pytest.raises(ValueError):
        wild2.resolvent_quadratic(APoly(F), APoly(F))


def test_artin_schreier_form():
    coeffs = (rat("t^3"), rat("t"), rat("1"))
    assert wild2.artin_schreier_form(coeffs) == rat("t")
    with pytest.raises(ValueError):
        wild2.artin_schreier_form((rat("1"), rat("0"), rat("1")))
    with pytest.raises(ValueError):
        wild2.artin_schreier_form(tuple(RatFunc(poly(x, 3)) for x in ("1", "1", "1")))


# --- Artin-Schreier reduction ------------------------------------------------

def test_reduction_removes_even_poles():
    assert wild2.reduce_at_infinity(rat("t^2+t")) == rat("0")
    c = wild2.as_class(rat("t^4+t^3"))
    assert c.v_inf == -3 and c.verdict == wild2.YES
    assert wild2.as_class(rat("t^2")).v_inf == -1
    assert wild2.as_class(rat("t^2+t+1")).verdict == wild2.INCONCLUSIVE


@given(polys(F2, 4), polys(F2, 3, nonzero=True), polys(F2, 3))
def test_class_invariant_under_w2_plus_w(num, den, w):
    u = RatFunc(num) / RatFunc(den)
    W = RatFunc(w)
    a, b = wild2.as_class(u), wild2.as_class(u + W * W + W)
    assert (a.v_inf, a.verdict) == (b.v_inf, b.verdict)
    # the reduced representative has no even pole left at infinity
    v = valuation(a.representative, INFINITY)
    assert v == float("inf") or v >= 0 or v % 2 == 1


# --- infinity classes and the abelianization check ---------------------------------

def test_example_classes():
    dm = example(2)
    assert wild2.v_inf_j(dm) == -7
    classes = [wild2.infinity_class(dm, 0), wild2.infinity_class(dm, 1), wild2.combined_class(dm)]
    assert [c.v_inf for c in classes] == [-5, -5, -3]
    assert all(c.verdict == wild2.YES for c in classes)
    assert wild2.classes_distinct(dm) and wild2.abelianization_full(dm)


def test_combined_class_is_sum():
    dm = module(2, "t^2+1", "t^3+t")
    u0, u1 = wild2.infinity_class(dm, 0), wild2.infinity_class(dm, 1)
    assert u0.original + u1.original == wild2.combined_class(dm).original


@pytest.mark.parametrize("a1,a2,expected", [
    ("t^3", "t^2+t+1", True),      # v = -7
    ("t^2", "t+1", True),          # v = -5
    ("t", "1", False),             # v = -3
    ("t^2", "t^2", False),         # v = -4
    ("0", "t", False),             # j = 0
])
def test_abelianization_examples(a1, a2, expected):
    assert wild2.abelianization_full(module(2, a1, a2)) is expected


@given(polys(F2, 3), polys(F2, 3, nonzero=True), polys(F2, 2, nonzero=True))
def test_abelianization_twist_invariant(a1, a2, c):
    dm = module(2, str(a1), str(a2))
    tw = module(2, str(a1 * c), str(a2 * c * c * c))
    assert j_invariant(dm) == j_invariant(tw)
    assert wild2.abelianization_full(dm) == wild2.abelianization_full(tw)


def test_requires_q2():
    with pytest.raises(ValueError):
        wild2.abelianization_full(example(3))
