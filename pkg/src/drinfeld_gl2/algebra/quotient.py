"""Coefficient rings: the function field F_q(t) and quotients A/(m).

Both expose the same small interface (zero, one, add, mul, frob, ...) so that
skew polynomials and Drinfeld modules can be written once.
"""

from functools import lru_cache

from .ideal import AIdeal, RatFunc
from .poly import APoly, inverse_mod, xgcd


class FunctionField:
    """F = F_q(t) with RatFunc elements."""

    def __init__(self, F):
        self.F = F

    def __eq__(self, other):
        return isinstance(other, FunctionField) and other.F == self.F

    def __hash__(self):
        return hash(("F(t)", self.F))

    def __repr__(self):
        return f"FunctionField(q={self.F.q})"

    @property
    def zero(self):
        return RatFunc(APoly(self.F))

    @property
    def one(self):
        return RatFunc(APoly.const(self.F, 1))

    def __call__(self, x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, APoly):
            return RatFunc(x)
        if isinstance(x, int):
            # ints are field elements of F_q in their table encoding
            return RatFunc(APoly.const(self.F, x))
        raise TypeError(f"cannot coerce {x!r} into F_q(t)")

    def from_poly(self, a):
        return RatFunc(a)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inverse()

    def is_zero(self, a):
        return not a

    def frob(self, a, i=1):
        return a.frobenius(i) if i else a

    def to_str(self, a):
        return str(a)


class QuotientRing:
    """A/(m) with elements stored as reduced APoly values.

    When m is irreducible this is the residue field F_m.
    """

    def __init__(self, modulus):
        if isinstance(modulus, AIdeal):
            modulus = modulus.gen
        if modulus.deg < 1:
            raise ValueError("modulus must have positive degree")
        self.m = modulus.monic()
        self.F = self.m.F
        self.size = self.F.q ** self.m.deg
        self._is_field = None

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and other.m == self.m

    def __hash__(self):
        return hash(("A/m", self.m))

    def __repr__(self):
        return f"QuotientRing(({self.m}), q={self.F.q})"

    @property
    def ideal(self):
        return AIdeal(self.m)

    @property
    def is_field(self):
        if self._is_field is None:
            self._is_field = self.ideal.is_prime()
        return self._is_field

    @property
    def degree(self):
        return self.m.deg

    @property
    def zero(self):
        return APoly(self.F)

    @property
    def one(self):
        return APoly.const(self.F, 1)

    def __call__(self, x):
        if isinstance(x, APoly):
            return x % self.m
        if isinstance(x, RatFunc):
            return x.reduce_mod(self.m)
        if isinstance(x, int):
            return APoly.const(self.F, x)
        raise TypeError(f"cannot coerce {x!r} into {self!r}")

    def from_poly(self, a):
        return a % self.m

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return (a * b) % self.m

    def is_unit(self, a):
        g, _, _ = xgcd(a, self.m)
        return g.is_one()

    def inv(self, a):
        return inverse_mod(a, self.m)

    def pow(self, a, n):
        if n < 0:
            return self.inv(a).powmod(-n, self.m)
        return a.powmod(n, self.m)

    def is_zero(self, a):
        return not a

    def frob(self, a, i=1):
        """a^(q^i), the q-power Frobenius iterated i times."""
        i %= self.frob_period
        for _ in range(i):
            a = a.frobenius(1) % self.m
        return a

    @property
    def frob_period(self):
        # x -> x^(q^deg m) is the identity on a field; for rings use a safe multiple
        if self.is_field:
            return self.m.deg
        return 10 ** 9

    def elements(self):
        """Canonical order: by index of the reduced representative."""
        return [APoly.from_index(self.F, n) for n in range(self.size)]

    def index(self, a):
        return a.index()

    def element(self, n):
        return APoly.from_index(self.F, n)

    def units(self):
        return [a for a in self.elements() if a and self.is_unit(a)]

    def to_str(self, a):
        return str(a)

    def tables(self):
        return _ring_tables(self.m)


@lru_cache(maxsize=64)
def _ring_tables(m):
    """Add, mul, neg and inverse tables on indices 0..|A/m|-1."""
    F = m.F
    n = F.q ** m.deg
    elems = [APoly.from_index(F, i) for i in range(n)]
    add = [[(a + b).index() for b in elems] for a in elems]
    mul = [[((a * b) % m).index() for b in elems] for a in elems]
    neg = [(-a).index() for a in elems]
    inv = [None] * n
    for i in range(n):
        for j in range(n):
            if mul[i][j] == 1:
                inv[i] = j
                break
    return add, mul, neg, inv
