import random

import pytest

from drinfeld_gl2.algebra import AIdeal, APoly, gf, primes_of_degree
from drinfeld_gl2.drinfeld import GOOD, reduce_module, reduction_type
from drinfeld_gl2.frobenius import (frob_charpoly_exact, frob_matrix, irreducibility_bound, torsion_basis,
                                    verify_frobenius_relation)

from conftest import example, module, poly
from oracles import frobenius_fixed_module_charpoly, trim


def ideal(text, q):
    return AIdeal(poly(text, q))


def good_primes(dm, max_deg):
    return [P for d in range(1, max_deg + 1) for P in primes_of_degree(dm.F, d)
            if reduction_type(dm, P).kind == GOOD]


# --- frozen values ----------------------------------------------------------

@pytest.mark.parametrize("method", ["crt", "skew"])
@pytest.mark.parametrize("q,prime,c1,c0", [
    (3, "t-1", "-1", "t-1"),
    (3, "t-2", "-1", "t-2"),
    (2, "t", "0", "t"),
    (2, "t+1", "1", "t+1"),
    (5, "t-1", "-1", "t-1"), (5, "t-2", "-1", "t-2"), (5, "t-3", "-1", "t-3"), (5, "t-4", "-1", "t-4"),
])
def test_frobenius_polynomial_values(q, prime, c1, c0, method):
    fp = frob_charpoly_exact(example(q), ideal(prime, q), method=method)
    assert -fp.trace == poly(c1, q) and fp.constant == poly(c0, q)


@pytest.mark.parametrize("method", ["crt", "skew"])
def test_degree_two_prime_q3(method):
    """Independently determined value at (t^2+t+2); see the P(1) oracle test below."""
    fp = frob_charpoly_exact(example(3), ideal("t^2+t+2", 3), method=method)
    assert str(fp) == "x^2 + (1)*x + (t^2+t+2)"


def test_degree_two_prime_q3_fixed_module_oracle():
    """P(1) must generate the Fitting ideal of F_p as an A-module via phi."""
    P = [2, 1, 1]
    cp = frobenius_fixed_module_charpoly(3, [1], [0, 0, 2], P)    # a1 = 1, a2 = -t^2
    F = gf(3)
    for c1, ok in (("1", True), ("2", False)):
        P1 = APoly.const(F, 1) + poly(c1, 3) + poly("t^2+t+2", 3)
        assert (list(P1.monic().c) == cp) == ok


# --- oracles ------------------------------------------------------------------

@pytest.mark.parametrize("q", (2, 3, 5))
def test_p_at_one_matches_fixed_module_charpoly(q):
    rng = random.Random(q)
    F = gf(q)
    for _ in range(6):
        a1 = APoly(F, [rng.randrange(q) for _ in range(3)])
        a2 = APoly(F, [rng.randrange(q) for _ in range(3)] + [rng.randrange(1, q)])
        dm = module(q, str(a1), str(a2))
        # the oracle reads the given model, so a2 must already be a unit at P
        unit_primes = [P for P in good_primes(dm, 3 if q < 5 else 2) if a2 % P.gen]
        for P in unit_primes[:6]:
            fp = frob_charpoly_exact(dm, P)
            p1 = APoly.const(F, 1) - fp.trace + fp.constant
            cp = frobenius_fixed_module_charpoly(q, list(a1.c), list(a2.c), list(P.gen.c))
            assert list(p1.monic().c) == trim(cp)


@pytest.mark.parametrize("q", (2, 3))
def test_routes_agree_and_invariants(q):
    for dm in (example(q), module(q, "t+1", "t^2+1")):
        for P in good_primes(dm, 4):
            a = frob_charpoly_exact(dm, P, method="crt")
            b = frob_charpoly_exact(dm, P, method="skew")
            assert (a.trace, a.constant) == (b.trace, b.constant)
            a.check_invariants()
            assert AIdeal(a.constant) == P
            assert 2 * a.trace.deg <= P.degree
            assert verify_frobenius_relation(dm, a)


@pytest.mark.parametrize("q", (2, 3))
def test_frob_matrix_agrees_with_exact_polynomial(q):
    rng = random.Random(10 + q)
    dm = example(q)
    primes = good_primes(dm, 4)
    levels = primes_of_degree(dm.F, 1) + primes_of_degree(dm.F, 2)
    done = 0
    while done < 20:
        P, L = rng.choice(primes), rng.choice(levels)
        if P == L:
            continue
        s = frob_matrix(dm, P, L)
        assert s.charpoly() == frob_charpoly_exact(dm, P).reduce(L)
        done += 1


def test_frob_matrix_example_q2():
    s = frob_matrix(example(2), ideal("t", 2), ideal("t+1", 2))
    one, zero = APoly.const(gf(2), 1), APoly(gf(2))
    assert s.matrix == ((one, one), (zero, one))
    assert s.charpoly() == (one, zero, one)


def test_frob_matrix_example_q3():
    s = frob_matrix(example(3), ideal("t-1", 3), ideal("t", 3))
    assert s.trace == poly("1", 3) and s.det == poly("2", 3)


def test_charpoly_basis_independent():
    dm = example(3)
    P, L = ideal("t-1", 3), ideal("t", 3)
    base = frob_matrix(dm, P, L).charpoly()
    for basis in ((1, 3), (2, 5), (4, 7)):
        try:
            s = frob_matrix(dm, P, L, basis=basis)
        except ValueError:
            continue          # the chosen points were dependent
        assert s.charpoly() == base


def test_torsion_examples():
    red = reduce_module(example(2), ideal("t", 2))
    tb = torsion_basis(red, ideal("t+1", 2))
    assert tb.size == 4 and tb.E.size == 4
    red3 = reduce_module(example(3), ideal("t-1", 3))
    assert torsion_basis(red3, ideal("t", 3)).size == 9
    with pytest.raises(ValueError):
        torsion_basis(red, ideal("t", 2))


@pytest.mark.parametrize("q,level", [(2, "t^2+t+1"), (3, "t^2+1"), (2, "t^3+t+1")])
def test_kernel_has_norm_squared_points(q, level):
    dm = example(q)
    P = good_primes(dm, 2)[0]
    L = ideal(level, q)
    tb = torsion_basis(reduce_module(dm, P), L)
    assert tb.size == L.norm ** 2


def test_composite_levels():
    dm = example(2)
    tb = torsion_basis(reduce_module(dm, ideal("t", 2)), ideal("t^2+1", 2), composite=True)
    assert tb.size == 16
    s = frob_matrix(dm, ideal("t", 2), ideal("t^2+1", 2), composite=True)
    assert s.charpoly() == frob_charpoly_exact(dm, ideal("t", 2)).reduce(ideal("t^2+1", 2))


def test_bad_prime_rejected():
    with pytest.raises(ValueError):
        frob_charpoly_exact(example(2), ideal("t^2+t+1", 2))


def test_irreducibility_bound_examples():
    for q in (2, 3):
        ib = irreducibility_bound(example(q))
        assert (ib.bound, ib.n, ib.degree) == (2, 1, 1)
    ib = irreducibility_bound(example(2), n=3)
    assert ib.bound == 6
    ib = irreducibility_bound(module(3, "1", "t"))
    assert ib.n == 16 and ib.bound == 32
