import random
from itertools import product

import pytest

from drinfeld_gl2 import groups
from drinfeld_gl2.algebra import AIdeal, APoly, gf

from conftest import poly
from oracles import TruncRing, commutator_order_brute, generated, gl2_brute


def power_of_t(q, k):
    return AIdeal(APoly.monomial(gf(q), k, 1))


def to_quotmat(ideal, m):
    F = ideal.F
    a, b, c, d = (APoly(F, list(x)) for x in m)
    return groups.QuotMat.from_polys(ideal, ((a, b), (c, d)))


# --- orders against brute-force enumeration ----------------------------------

@pytest.mark.parametrize("p,k", [(2, 1), (2, 2), (3, 1), (2, 3)])
def test_gl2_and_sl2_orders(p, k):
    ideal = power_of_t(p, k)
    R = TruncRing(p, k)
    n = len(gl2_brute(R))
    assert groups.gl2_order(ideal) == n
    assert groups.gl2(ideal, cap=10 ** 5).order == n
    assert groups.sl2(ideal, cap=10 ** 5).order == groups.sl2_order(ideal) == n // (p ** k - p ** (k - 1))


@pytest.mark.parametrize("p,k", [(2, 1), (2, 2), (3, 1)])
def test_commutator_order_matches_brute(p, k):
    ideal = power_of_t(p, k)
    C = groups.commutator_subgroup(groups.gl2(ideal))
    assert C.order == commutator_order_brute(TruncRing(p, k))


@pytest.mark.parametrize("seed", range(5))
def test_closure_matches_brute_generation(seed):
    rng = random.Random(seed)
    p, k = 2, 2
    R = TruncRing(p, k)
    G = gl2_brute(R)
    gens = rng.sample(G, 2)
    ideal = power_of_t(p, k)
    H = groups.closure([to_quotmat(ideal, g) for g in gens], ideal)
    expected = {to_quotmat(ideal, g).entries for g in generated(R, gens)}
    assert H.elements == expected


def test_composite_order_formula():
    I = AIdeal(poly("t^2+t", 2))
    assert groups.gl2_order(I) == 36
    assert groups.gl2(I).order == 36


def test_cap_is_enforced():
    with pytest.raises(groups.GroupTooLarge):
        groups.gl2(power_of_t(3, 2), cap=100).elements


# --- standard subgroups and criteria ------------------------------------------

def test_borel_and_torus_are_reducible():
    lam = AIdeal(poly("t^2+t+1", 2))
    B, T = groups.borel(lam), groups.torus(lam)
    assert B.order == 3 * 3 * 4 and T.order == 9
    assert not groups.is_irreducible_action(B)
    assert len(groups.stable_lines(T)) == 2
    assert not groups.contains_sl2_modl(B)
    assert groups.contains_sl2_modl(groups.gl2(lam))


def test_contains_sl2_agrees_with_exhaustive_on_subgroups():
    lam = AIdeal(poly("t", 3))
    G = groups.gl2(lam)
    rng = random.Random(1)
    els = sorted(G.elements)
    for _ in range(40):
        H = groups.closure([rng.choice(els) for _ in range(rng.randint(1, 2))], lam)
        assert groups.contains_sl2_modl(H) == groups.contains_sl2_exhaustive(H)


def test_det_image():
    lam = AIdeal(poly("t", 3))
    assert len(groups.gl2(lam).det_image()) == 2
    assert groups.sl2(lam).det_image() == {1}


def test_matrix_inverse_and_reduce():
    I = power_of_t(3, 2)
    m = groups.parse_matrix("[[1,t],[2t+1,2]]", I)
    ident = groups.QuotMat.from_polys(I, ((poly("1", 3), poly("0", 3)), (poly("0", 3), poly("1", 3))))
    assert (m * m.inverse()).entries == ident.entries
    assert str(m.reduce(AIdeal(poly("t", 3)))) == "[[1,0],[1,2]]"
    with pytest.raises(ValueError):
        m.reduce(AIdeal(poly("t+1", 3)))


@pytest.mark.parametrize("text", ["[[1,0],[0]]", "[1,0],[0,1]", "[[1,0,0],[0,1]]"])
def test_parse_matrix_rejects(text):
    with pytest.raises(ValueError):
        groups.parse_matrix(text, power_of_t(2, 1))


def test_noninvertible_generator_rejected():
    I = power_of_t(2, 1)
    with pytest.raises(ValueError):
        groups.MatGroup(I, [groups.parse_matrix("[[1,1],[1,1]]", I)])


# --- filtration ------------------------------------------------------------------

@pytest.mark.parametrize("q", (2, 3))
def test_filtration_of_full_group(q):
    lam = AIdeal(poly("t", q))
    fil = groups.filtration(groups.gl2(lam ** 2))
    assert fil.level == 2 and fil.is_full(1)
    assert fil.reduction.order == groups.gl2_order(lam)
    # the commutator layer is trace zero for q > 2 and strictly smaller for q = 2
    if q == 3:
        assert fil.is_trace_zero(1, which="h")
    else:
        assert len(fil.h(1)) < 16


def test_filtration_of_sl2_is_trace_zero():
    lam = AIdeal(poly("t", 3))
    fil = groups.filtration(groups.sl2(lam ** 2))
    assert fil.is_trace_zero(1)


def test_filtration_requires_prime_power():
    with pytest.raises(ValueError):
        groups.filtration(groups.gl2(AIdeal(poly("t", 2))))


# --- full-GL_2 criterion at level lambda^2 -------------------------------------------

def test_full_gl2_full_group_q3():
    lam = AIdeal(poly("t", 3))
    rep = groups.full_gl2_criterion(groups.gl2(lam ** 2))
    assert rep.verdict is True and rep.conditions["c"] is True
    assert rep.conditions["d"] == "n/a"


def test_full_gl2_full_group_q2():
    lam = AIdeal(poly("t", 2))
    rep = groups.full_gl2_criterion(groups.gl2(lam ** 2))
    assert rep.verdict is True
    assert rep.conditions["d"] is True and rep.conditions["e"] is True


def test_full_gl2_sl2_fails_det():
    lam = AIdeal(poly("t", 3))
    rep = groups.full_gl2_criterion(groups.sl2(lam ** 2))
    assert rep.conditions["a"] is False and rep.verdict is False


def test_full_gl2_congruence_kernel_missing():
    """A lift of GL_2(F_3) with trivial first layer fails condition (c)."""
    lam = AIdeal(poly("t", 3))
    I = lam ** 2
    G = groups.gl2(lam)
    # element indices of F_3 are the constants themselves, so lift entrywise
    lifted = [to_quotmat(I, [(x,) for x in g]) for g in G.gens]
    H = groups.closure(lifted, I)
    rep = groups.full_gl2_criterion(H)
    assert H.order == groups.gl2_order(lam)
    assert rep.conditions["c"] is False and rep.verdict is False


def test_full_gl2_evidence_mode():
    ev = groups.FullGL2Evidence(norm=2, a=True, b=True, d=True, e=None)
    rep = groups.full_gl2_criterion(ev)
    assert rep.verdict is None and rep.conditions["c"] == "n/a" and rep.mode == "certificate"
    ev = groups.FullGL2Evidence(norm=3, a=True, b=True, c=True)
    assert groups.full_gl2_criterion(ev).verdict is True


# --- q = 2 abelianization ---------------------------------------------------------

def test_gl2_f2_sign_is_homomorphism():
    lam = AIdeal(poly("t", 2))
    G = groups.gl2(lam)
    alg = G.alg
    signs = {g: groups.gl2_f2_sign(alg, g) for g in G.elements}
    assert sorted(signs.values()).count(-1) == 3
    for x, y in product(G.elements, repeat=2):
        assert signs[alg.mul(x, y)] == signs[x] * signs[y]


def test_beta_kernel_is_commutator_subgroup():
    a = AIdeal(poly("t^2+t", 2))
    K = groups.beta_kernel(a)
    C = groups.commutator_subgroup(groups.gl2(a))
    assert K.same_as(C) and K.order == 9


def test_beta_requires_q2():
    with pytest.raises(ValueError):
        groups.beta(AIdeal(poly("t", 3)), (1, 0, 0, 1))
