"""Finite fields F_q with q = p^e.

Elements are plain ints in ``range(q)``.  For e > 1 the int encodes the
coefficient vector of a polynomial in the generator ``g`` in base p, so
``1`` is the unit and ``p`` is ``g`` itself.  All arithmetic goes through
precomputed tables, which is fine for the small fields used here.
"""

from dataclasses import dataclass
from functools import lru_cache

# Conway polynomials (low -> high coefficients); the generator is primitive.
MODULUS_TABLE = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (2, 2, 1),
    16: (1, 1, 0, 0, 1),
    25: (2, 4, 1),
    27: (1, 2, 0, 1),
}


def _prime_power(q):
    if q < 2:
        raise ValueError(f"field size must be at least 2, got {q}")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e


@dataclass(frozen=True)
class FieldSpec:
    p: int
    e: int
    modulus: tuple = (0, 1)
    symbol: str = "g"

    @property
    def q(self):
        return self.p ** self.e


def field_spec(q, modulus=None):
    p, e = _prime_power(q)
    if e == 1:
        return FieldSpec(p, 1, (0, 1))
    if modulus is None:
        if q not in MODULUS_TABLE:
            raise ValueError(f"no built-in modulus for q={q}; pass one explicitly")
        modulus = MODULUS_TABLE[q]
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) != e + 1 or modulus[-1] != 1:
        raise ValueError(f"modulus for q={q} must be monic of degree {e}")
    if not _irreducible_mod_p(modulus, p):
        raise ValueError(f"modulus {modulus} is reducible over F_{p}")
    return FieldSpec(p, e, modulus)


def _irreducible_mod_p(f, p):
    # brute force over monic divisors; e is tiny
    n = len(f) - 1
    for k in range(1, n // 2 + 1):
        for idx in range(p ** k):
            g = [(idx // p ** i) % p for i in range(k)] + [1]
            r = list(f)
            for s in range(n - k, -1, -1):
                c = r[s + k]
                if c:
                    for i in range(k + 1):
                        r[s + i] = (r[s + i] - c * g[i]) % p
            if not any(r):
                return False
    return True


class GF:
    """Arithmetic in F_q backed by lookup tables."""

    __slots__ = ("spec", "p", "e", "q", "_add", "_mul", "_neg", "_inv", "_log", "_exp")

    def __init__(self, spec):
        self.spec = spec
        self.p, self.e, self.q = spec.p, spec.e, spec.q
        p, e, q = self.p, self.e, self.q
        digits = [[(x // p ** i) % p for i in range(e)] for x in range(q)]

        def enc(v):
            return sum(c * p ** i for i, c in enumerate(v))

        self._add = [[enc([(a + b) % p for a, b in zip(digits[x], digits[y])]) for y in range(q)]
                     for x in range(q)]
        self._neg = [enc([(-a) % p for a in digits[x]]) for x in range(q)]
        mod = spec.modulus

        def mulvec(u, v):
            prod = [0] * (2 * e - 1)
            for i, a in enumerate(u):
                if a:
                    for j, b in enumerate(v):
                        prod[i + j] = (prod[i + j] + a * b) % p
            for s in range(len(prod) - 1, e - 1, -1):
                c = prod[s]
                if c:
                    for i in range(e + 1):
                        prod[s - e + i] = (prod[s - e + i] - c * mod[i]) % p
            return prod[:e]

        self._mul = [[enc(mulvec(digits[x], digits[y])) for y in range(q)] for x in range(q)]
        # discrete log tables via a primitive element
        gen = next(x for x in range(1, q) if self._order(x) == q - 1)
        self._exp = [1] * (q - 1)
        for k in range(1, q - 1):
            self._exp[k] = self._mul[self._exp[k - 1]][gen]
        self._log = [None] * q
        for k, x in enumerate(self._exp):
            self._log[x] = k
        self._inv = [None] + [self._exp[(-self._log[x]) % (q - 1)] for x in range(1, q)]

    def _order(self, x):
        k, y = 1, x
        while y != 1:
            y = self._mul[y][x]
            k += 1
        return k

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, GF) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._inv[a]

    def div(self, a, b):
        return self._mul[a][self.inv(b)]

    def pow(self, a, n):
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if n == 0 else 0
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def order(self, a):
        """Multiplicative order of a nonzero element."""
        from math import gcd
        return (self.q - 1) // gcd(self._log[a], self.q - 1)

    def from_int(self, n):
        # integers land in the prime subfield, whose encoding is the residue itself
        return n % self.p

    @property
    def gen(self):
        """The element named by the generator symbol (``t`` is reserved for A)."""
        return self.p if self.e > 1 else 1

    def sqrt_char2(self, a):
        """The unique square root in characteristic 2."""
        return self.pow(a, self.q // 2)

    def elements(self):
        return range(self.q)

    def digits(self, a):
        return [(a // self.p ** i) % self.p for i in range(self.e)]

    def to_str(self, a):
        if self.e == 1:
            return str(a)
        terms = []
        for i in range(self.e - 1, -1, -1):
            c = (a // self.p ** i) % self.p
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
                continue
            mono = self.spec.symbol if i == 1 else f"{self.spec.symbol}^{i}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) if terms else "0"

    def is_monomial_str(self, a):
        """True when the printed form of a has a single term."""
        return self.e == 1 or sum(1 for c in self.digits(a) if c) <= 1


@lru_cache(maxsize=None)
def _gf_from_spec(spec):
    return GF(spec)


def gf(q, modulus=None):
    """Cached field of size q (modulus optional for nonprime q)."""
    return _gf_from_spec(field_spec(q, None if modulus is None else tuple(modulus)))
