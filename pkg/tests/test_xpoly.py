import random

import pytest
import sympy
from hypothesis import given, strategies as st

from drinfeld_gl2.algebra import APoly, gf
from drinfeld_gl2.algebra.xpoly import (XPoly, berkowitz_charpoly, format_xpoly, gcd_over_function_field,
                                        power_poly, resultant_x)

from conftest import poly
from strategies import polys


def xp(q, *coeffs):
    """XPoly from coefficient strings, low power of x first."""
    return XPoly(gf(q), [poly(c, q) for c in coeffs])


def test_resultant_examples():
    assert resultant_x(xp(2, "t", "0", "1"), xp(2, "t+1", "1", "1")) == poly("t+1", 2)
    P = xp(3, "t", "2*t+1", "1")
    assert not resultant_x(P, P)
    a, b = poly("t^2+1", 3), poly("2*t", 3)
    one = APoly.const(gf(3), 1)
    assert resultant_x(XPoly(gf(3), [-a, one]), XPoly(gf(3), [-b, one])) == a - b


def _sympy_resultant(P, Q, p):
    x, t = sympy.symbols("x t")

    def expr(R):
        return sum(sympy.Poly(list(reversed(c.c)) or [0], t).as_expr() * x ** k for k, c in enumerate(R.c))
    r = sympy.resultant(expr(P), expr(Q), x)
    coeffs = sympy.Poly(sympy.expand(r), t).all_coeffs() if r != 0 else [0]
    return [int(c) % p for c in reversed(coeffs)]


@pytest.mark.parametrize("p", (2, 3, 5))
def test_resultant_matches_sympy(p):
    rng = random.Random(p)
    F = gf(p)
    for _ in range(15):
        P = XPoly(F, [APoly(F, [rng.randrange(p) for _ in range(3)]) for _ in range(rng.randint(2, 3))]
                  + [APoly.const(F, 1)])
        Q = XPoly(F, [APoly(F, [rng.randrange(p) for _ in range(3)]) for _ in range(rng.randint(1, 3))]
                  + [APoly.const(F, rng.randrange(1, p))])
        ours = list(resultant_x(P, Q).c)
        theirs = _sympy_resultant(P, Q, p)
        while theirs and theirs[-1] == 0:
            theirs.pop()
        assert ours == theirs


@given(st.data())
def test_resultant_vanishes_iff_common_factor(data):
    F = gf(data.draw(st.sampled_from((2, 3))))
    one = APoly.const(F, 1)
    common = XPoly(F, [data.draw(polys(F, 2)), one])
    P = XPoly(F, [data.draw(polys(F, 2)), data.draw(polys(F, 2)), one])
    Q = XPoly(F, [data.draw(polys(F, 2)), one])
    share = data.draw(st.booleans())
    if share:
        P, Q = P * common, Q * common
    r = resultant_x(P, Q)
    g = gcd_over_function_field(P, Q)
    assert (not r) == (len(g) > 1)
    if share:
        assert not r


def test_power_poly_examples():
    P = xp(2, "t", "0", "1")
    assert power_poly(P, 1) == P
    assert power_poly(P, 2) == xp(2, "t^2", "0", "1")
    Q = xp(5, "t", "4*t+4", "1")
    assert power_poly(Q, 2) == xp(5, "t^2", "4*t^2+4", "1")


@given(st.data())
def test_power_poly_functorial(data):
    q = data.draw(st.sampled_from((2, 3, 5)))
    F = gf(q)
    P = XPoly(F, [data.draw(polys(F, 2)), data.draw(polys(F, 2)), APoly.const(F, 1)])
    m, n = data.draw(st.integers(1, 3)), data.draw(st.integers(1, 3))
    assert power_poly(P, m * n) == power_poly(power_poly(P, m), n)


@pytest.mark.parametrize("q", (3, 5, 7))
def test_power_poly_specialized_roots(q):
    """Specialize t to a constant c: roots of P^(n) are n-th powers of the roots of P."""
    from drinfeld_gl2.algebra.extfield import ExtField
    import numpy as np
    F = gf(q)
    rng = random.Random(q)
    E = ExtField(q, 2)
    for _ in range(10):
        P = XPoly(F, [APoly(F, [rng.randrange(q) for _ in range(2)]) for _ in range(2)] + [APoly.const(F, 1)])
        n = rng.randint(2, 4)
        Pn = power_poly(P, n)
        c = rng.randrange(q)

        def ev(R, x):
            acc = E.zero()
            for coeff in reversed(R.c):
                acc = E.add(E.mul(acc, x), E.scalar(coeff(c) if coeff else 0))
            return acc
        roots = [np.array(v) for v in np.ndindex(*(q,) * 2) if not ev(P, np.array(v)).any()]
        for r in roots:
            assert not ev(Pn, E.pow(r, n)).any()


def test_berkowitz_matches_sympy():
    F = gf(5)
    rng = random.Random(1)
    for _ in range(5):
        M = [[APoly(F, [rng.randrange(5) for _ in range(2)]) for _ in range(3)] for _ in range(3)]
        ours = berkowitz_charpoly(M)
        x, t = sympy.symbols("x t")
        S = sympy.Matrix(3, 3, lambda i, j: sympy.Poly(list(reversed(M[i][j].c)) or [0], t).as_expr())
        cp = sympy.Poly(S.charpoly(x).as_expr(), x).all_coeffs()
        for a, b in zip(ours, cp):
            b = sympy.Poly(b, t).all_coeffs() if b != 0 else [0]
            b = [int(v) % 5 for v in reversed(b)]
            while b and b[-1] == 0:
                b.pop()
            assert list(a.c) == b


def test_format():
    assert format_xpoly(xp(3, "t^2+t+2", "1", "1")) == "x^2 + (1)*x + (t^2+t+2)"
    assert format_xpoly(xp(2, "t", "0", "1")) == "x^2 + (0)*x + (t)"
