"""Polynomials in x with coefficients in A = F_q[t]: resultants and char polys."""

from .ideal import RatFunc
from .poly import APoly


class XPoly:
    """Polynomial in x over A; coefficients low power first."""

    __slots__ = ("F", "c")

    def __init__(self, F, coeffs):
        c = list(coeffs)
        while c and not c[-1]:
            c.pop()
        self.F = F
        self.c = tuple(c)

    @property
    def deg(self):
        return len(self.c) - 1

    @property
    def lc(self):
        return self.c[-1] if self.c else APoly(self.F)

    def coeff(self, k):
        return self.c[k] if 0 <= k < len(self.c) else APoly(self.F)

    def is_monic(self):
        return bool(self.c) and self.c[-1].is_one()

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        return isinstance(other, XPoly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __add__(self, other):
        n = max(len(self.c), len(other.c))
        return XPoly(self.F, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __neg__(self):
        return XPoly(self.F, [-a for a in self.c])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, APoly):
            return XPoly(self.F, [a * other for a in self.c])
        if not self.c or not other.c:
            return XPoly(self.F, [])
        out = [APoly(self.F)] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            for j, b in enumerate(other.c):
                out[i + j] = out[i + j] + a * b
        return XPoly(self.F, out)

    def __call__(self, x):
        acc = APoly(self.F)
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def reduce(self, modulus):
        """Coefficients reduced modulo an APoly (the image in (A/m)[x])."""
        return [a % modulus for a in self.c]

    def __repr__(self):
        return f"XPoly({self})"

    def __str__(self):
        return format_xpoly(self)


def format_xpoly(P):
    """Render as ``x^2 + (c1)*x + (c0)``; every lower coefficient is kept."""
    if not P.c:
        return "0"
    parts = []
    for k in range(P.deg, -1, -1):
        a = P.c[k]
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        if k == P.deg and a.is_one():
            parts.append(mono or "1")
        elif mono:
            parts.append(f"({a})*{mono}")
        else:
            parts.append(f"({a})")
    return " + ".join(parts)


def xpoly_from_monic_quadratic(F, a, b):
    """x^2 - a*x + b."""
    return XPoly(F, [b, -a, APoly.const(F, 1)])


def bareiss_det(M):
    """Fraction-free determinant over A."""
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    F = M[0][0].F
    M = [list(row) for row in M]
    sign = 1
    prev = APoly.const(F, 1)
    for k in range(n - 1):
        if not M[k][k]:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return APoly(F)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                quo, rem = divmod(num, prev)
                if rem:
                    raise ArithmeticError("inexact division in fraction-free elimination")
                M[i][j] = quo
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign > 0 else -det


def sylvester_matrix(P, Q):
    F = P.F
    m, n = P.deg, Q.deg
    size = m + n
    zero = APoly(F)
    rows = []
    for i in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[i + k] = P.c[m - k]
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[i + k] = Q.c[n - k]
        rows.append(row)
    return rows


def resultant_x(P, Q):
    """Sylvester resultant Res_x(P, Q) in A."""
    if not P or not Q:
        raise ValueError("resultant of a zero polynomial")
    F = P.F
    if P.deg == 0:
        return P.c[0] ** Q.deg
    if Q.deg == 0:
        return Q.c[0] ** P.deg
    return bareiss_det(sylvester_matrix(P, Q))


def berkowitz_charpoly(M):
    """Coefficients of det(xI - M), highest power first, without division."""
    n = len(M)
    F = M[0][0].F
    one = APoly.const(F, 1)
    vect = [one]
    for r in range(n):
        a = M[r][r]
        R = [M[r][j] for j in range(r)]
        C = [M[i][r] for i in range(r)]
        t = [one, -a]
        v = C
        for _ in range(r):
            dot = APoly(F)
            for x, y in zip(R, v):
                dot = dot + x * y
            t.append(-dot)
            v = [sum((M[i][j] * v[j] for j in range(r)), APoly(F)) for i in range(r)]
        new = []
        for i in range(r + 2):
            acc = APoly(F)
            for j in range(len(vect)):
                if 0 <= i - j < len(t):
                    acc = acc + t[i - j] * vect[j]
            new.append(acc)
        vect = new
    return vect


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    F = A[0][0].F
    return [[sum((A[i][l] * B[l][j] for l in range(k)), APoly(F)) for j in range(m)]
            for i in range(n)]


def companion(P):
    """Companion matrix of a monic P (acts on the basis 1, x, ..., x^(r-1))."""
    if not P.is_monic():
        raise ValueError("companion matrix needs a monic polynomial")
    F = P.F
    r = P.deg
    zero, one = APoly(F), APoly.const(F, 1)
    M = [[zero] * r for _ in range(r)]
    for i in range(1, r):
        M[i][i - 1] = one
    for i in range(r):
        M[i][r - 1] = -P.c[i]
    return M


def power_poly(P, n):
    """Monic polynomial whose roots are the n-th powers of the roots of P."""
    if n < 1:
        raise ValueError("n must be positive")
    if not P.is_monic():
        raise ValueError("power_poly needs a monic polynomial")
    F = P.F
    if P.deg == 0:
        return P
    C = companion(P)
    result = None
    base = C
    k = n
    while k:
        if k & 1:
            result = base if result is None else mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    coeffs = berkowitz_charpoly(result)
    return XPoly(F, list(reversed(coeffs)))


# --- Euclid over the rational function field, for cross-checks -------------

def _trim_rat(c):
    while c and not c[-1]:
        c.pop()
    return c


def gcd_over_function_field(P, Q):
    """Monic gcd of P and Q viewed in F_q(t)[x], as a list of RatFunc (low first)."""
    a = _trim_rat([RatFunc(c) for c in P.c])
    b = _trim_rat([RatFunc(c) for c in Q.c])
    while b:
        r = list(a)
        inv = b[-1].inverse()
        while len(r) >= len(b) and r:
            coef = r[-1] * inv
            shift = len(r) - len(b)
            for i, y in enumerate(b):
                r[shift + i] = r[shift + i] - coef * y
            r = _trim_rat(r)
        a, b = b, r
    if not a:
        return a
    inv = a[-1].inverse()
    return [c * inv for c in a]
