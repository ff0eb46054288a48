"""Finite extensions realized absolutely as F_p[z]/(H).

Torsion points of reduced Drinfeld modules live in such fields.  Elements are
int64 coordinate vectors in the basis 1, z, ..., z^(D-1); everything that is
F_p-linear (Frobenius, multiplication by a fixed element, additive
polynomials) is handled as a D x D matrix.
"""

from functools import lru_cache

import numpy as np

from . import linalg


def _trim(a):
    a = np.asarray(a, dtype=np.int64)
    nz = np.nonzero(a)[0]
    return a[: nz[-1] + 1] if nz.size else a[:0]


def _poly_mod(a, h, p):
    """Remainder of a by the monic h over F_p (arrays, low degree first)."""
    a = np.array(a, dtype=np.int64) % p
    n = len(h) - 1
    for s in range(len(a) - 1, n - 1, -1):
        c = a[s]
        if c:
            a[s - n: s + 1] = (a[s - n: s + 1] - c * h) % p
    return a[:n]


def _poly_gcd(a, b, p):
    a, b = _trim(a % p), _trim(b % p)
    while b.size:
        inv = pow(int(b[-1]), p - 2, p)
        b = (b * inv) % p
        a = a.copy()
        n = len(b) - 1
        for s in range(len(a) - 1, n - 1, -1):
            c = a[s]
            if c:
                a[s - n: s + 1] = (a[s - n: s + 1] - c * b) % p
        a, b = b, _trim(a[:n])
    return a


class _Reducer:
    """Multiplication modulo a fixed monic H of degree D."""

    def __init__(self, h, p):
        self.p = p
        self.h = np.asarray(h, dtype=np.int64)
        D = len(h) - 1
        self.D = D
        # rows: z^(D+k) mod H for k = 0..D-2
        red = np.zeros((max(D - 1, 0), D), dtype=np.int64)
        if D > 1:
            cur = (-self.h[:D]) % p
            red[0] = cur
            for k in range(1, D - 1):
                top = cur[-1]
                cur = np.concatenate(([0], cur[:-1]))
                if top:
                    cur = (cur - top * self.h[:D]) % p
                red[k] = cur
        self.red = red

    def reduce(self, prod):
        D, p = self.D, self.p
        prod = np.asarray(prod, dtype=np.int64)
        low = np.zeros(D, dtype=np.int64)
        low[: min(D, len(prod))] = prod[:D]
        high = prod[D:]
        if high.size:
            low = low + linalg.matmul_mod(high[None, :], self.red[: high.size], p)[0]
        return low % p

    def mul(self, a, b):
        return self.reduce(np.convolve(a, b) % self.p)

    def mul_x(self, a):
        top = a[-1]
        out = np.concatenate(([0], a[:-1]))
        if top:
            out = (out - top * self.h[: self.D]) % self.p
        return out

    def pow(self, a, n):
        result = np.zeros(self.D, dtype=np.int64)
        result[0] = 1
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result


def is_irreducible_mod_p(h, p):
    """Ben-Or style irreducibility test for a monic h over F_p."""
    h = np.asarray(h, dtype=np.int64)
    D = len(h) - 1
    if D == 1:
        return True
    if h[0] == 0:
        return False
    red = _Reducer(h, p)
    x = np.zeros(D, dtype=np.int64)
    x[1] = 1
    xp = x
    for k in range(1, D // 2 + 1):
        xp = red.pow(xp, p)
        diff = xp.copy()
        diff[1] = (diff[1] - 1) % p
        g = _poly_gcd(h, diff, p)
        if len(g) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def first_irreducible(p, D):
    """Lexicographically first monic irreducible of degree D over F_p.

    Candidates are ordered like APoly: higher coefficients compared first.
    """
    for n in range(p ** D):
        low = [(n // p ** i) % p for i in range(D)]
        h = np.array(low + [1], dtype=np.int64)
        if is_irreducible_mod_p(h, p):
            return tuple(int(c) for c in h)
    raise RuntimeError(f"no irreducible of degree {D} over F_{p}")


class ExtField:
    """F_{p^D} = F_p[z]/(H) with H the first irreducible of degree D."""

    def __init__(self, p, D, base=None, degree_over_base=None):
        self.p = p
        self.D = D
        self.modulus = first_irreducible(p, D)
        self.base = base
        self.degree_over_base = degree_over_base
        self._red = _Reducer(np.array(self.modulus, dtype=np.int64), p)
        self._frob = None

    @property
    def size(self):
        return self.p ** self.D

    def __repr__(self):
        return f"ExtField(p={self.p}, D={self.D})"

    def zero(self):
        return np.zeros(self.D, dtype=np.int64)

    def one(self):
        v = self.zero()
        v[0] = 1
        return v

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return self._red.mul(a, b)

    def pow(self, a, n):
        return self._red.pow(a, n)

    def scalar(self, c):
        v = self.zero()
        v[0] = c % self.p
        return v

    def encode(self, a):
        """Integer key giving the canonical element order."""
        n = 0
        for c in reversed(a.tolist()):
            n = n * self.p + int(c)
        return n

    def frobenius_matrix(self):
        """Matrix of x -> x^p (columns are images of the basis)."""
        if self._frob is None:
            D, p = self.D, self.p
            z = self.zero()
            if D > 1:
                z[1] = 1
            else:
                z[0] = 0
            zp = self.pow(z, p) if D > 1 else self.one()
            cols = [self.one()]
            for _ in range(1, D):
                cols.append(self.mul(cols[-1], zp))
            self._frob = np.array(cols, dtype=np.int64).T
        return self._frob

    def mul_matrix(self, a):
        """Matrix of x -> a*x."""
        cols = [np.array(a, dtype=np.int64) % self.p]
        for _ in range(1, self.D):
            cols.append(self._red.mul_x(cols[-1]))
        return np.array(cols, dtype=np.int64).T

    def subfield_basis(self, k):
        """F_p-basis (rows) of the subfield fixed by x -> x^(p^k)."""
        Phi = linalg.matpow_mod(self.frobenius_matrix(), k, self.p)
        M = (Phi - np.eye(self.D, dtype=np.int64)) % self.p
        return linalg.nullspace(M, self.p)
