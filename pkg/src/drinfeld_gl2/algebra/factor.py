"""Factorization in F_q[t] and enumeration of monic irreducibles."""

import random
from functools import lru_cache

from .poly import APoly, gcd, is_irreducible, monic_polys_of_degree

ROOT_SEARCH_LIMIT = 64


def squarefree_decomposition(f):
    """Return [(g, k)] with f = lc * prod g^k and each g squarefree (not necessarily coprime-free)."""
    f = f.monic()
    out = []
    k = 1
    while f.deg > 0:
        df = f.derivative()
        if not df:
            # f is a p-th power; recurse on its root and scale multiplicities
            root_parts = squarefree_decomposition(f.pth_root())
            out.extend((g, m * f.F.p * k) for g, m in root_parts)
            break
        c = gcd(f, df)
        w = f // c
        i = 1
        while w.deg > 0:
            y = gcd(w, c)
            z = w // y
            if z.deg > 0:
                out.append((z, i * k))
            i += 1
            w, c = y, c // y
        if c.deg > 0:
            root_parts = squarefree_decomposition(c.pth_root())
            out.extend((g, m * f.F.p * k) for g, m in root_parts)
        break
    return out


def distinct_degree(f):
    """Split a monic squarefree f into [(g, d)] where g is the product of its degree-d factors."""
    F = f.F
    t = APoly.t(F)
    out = []
    h = t % f
    d = 0
    while f.deg >= 2 * (d + 1):
        d += 1
        h = h.powmod(F.q, f)
        g = gcd(f, h - t)
        if g.deg > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.deg > 0:
        out.append((f, f.deg))
    return out


def _roots_exhaustive(f):
    F = f.F
    return [APoly(F, (F.neg(a), 1)) for a in F.elements() if f(a) == 0]


def equal_degree(f, d, rng):
    """Cantor-Zassenhaus: split monic squarefree f whose factors all have degree d."""
    if f.deg == d:
        return [f]
    F = f.F
    if d == 1 and F.q <= ROOT_SEARCH_LIMIT:
        return _roots_exhaustive(f)
    n = f.deg
    while True:
        a = APoly(F, [rng.randrange(F.q) for _ in range(n)])
        if a.deg < 1:
            continue
        if F.p == 2:
            # trace map t + t^2 + ... + t^(2^(e d - 1))
            b, acc = a % f, a % f
            for _ in range(F.e * d - 1):
                b = (b * b) % f
                acc = acc + b
            g = gcd(f, acc)
        else:
            g = gcd(f, a.powmod((F.q ** d - 1) // 2, f) - 1)
        if 0 < g.deg < n:
            return equal_degree(g, d, rng) + equal_degree(f // g, d, rng)


def factor_poly(f, seed=0):
    """Monic irreducible factors with multiplicity, sorted canonically."""
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    counts = {}
    for part, mult in squarefree_decomposition(f):
        for g, d in distinct_degree(part):
            for h in equal_degree(g, d, rng):
                counts[h] = counts.get(h, 0) + mult
    return sorted(counts.items(), key=lambda kv: kv[0].sort_key())


@lru_cache(maxsize=None)
def _monic_irreducibles(F, d):
    return tuple(f for f in monic_polys_of_degree(F, d) if is_irreducible(f))


def monic_irreducibles(F, d):
    """Monic irreducible polynomials of degree d in canonical order."""
    if d < 1:
        raise ValueError("degree must be positive")
    return list(_monic_irreducibles(F, d))


def prime_divisors(f):
    return [g for g, _ in factor_poly(f)]
