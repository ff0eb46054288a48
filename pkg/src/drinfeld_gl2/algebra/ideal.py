"""Nonzero ideals of A, rational functions, and valuations."""

import re

from .factor import factor_poly, monic_irreducibles
from .poly import APoly, gcd, is_irreducible, parse_poly


class AIdeal:
    """Nonzero ideal of A, stored by its monic generator."""

    __slots__ = ("gen",)

    def __init__(self, gen):
        if not gen:
            raise ValueError("the zero ideal is not allowed")
        self.gen = gen.monic()

    @property
    def F(self):
        return self.gen.F

    @property
    def degree(self):
        return self.gen.deg

    @property
    def norm(self):
        return self.F.q ** self.gen.deg

    def is_prime(self):
        return is_irreducible(self.gen)

    def factor(self):
        """Prime factorization as [(prime ideal, exponent)]."""
        if self.gen.deg == 0:
            return []
        return [(AIdeal(g), k) for g, k in factor_poly(self.gen)]

    def contains(self, a):
        return not (a % self.gen)

    def divides(self, other):
        """self | other, i.e. other is contained in self."""
        return not (other.gen % self.gen)

    def __mul__(self, other):
        return AIdeal(self.gen * other.gen)

    def __pow__(self, k):
        return AIdeal(self.gen ** k)

    def __eq__(self, other):
        return isinstance(other, AIdeal) and self.gen == other.gen

    def __hash__(self):
        return hash(("ideal", self.gen))

    def __lt__(self, other):
        return self.gen.sort_key() < other.gen.sort_key()

    def __str__(self):
        return f"({self.gen})"

    def __repr__(self):
        return f"AIdeal({self})"


_IDEAL_POWER = re.compile(r"^\s*\((.*)\)\s*(?:\^\s*(\d+))?\s*$")


def parse_ideal(text, F):
    """Accepts ``(g)``, ``(g)^k`` or a bare polynomial."""
    m = _IDEAL_POWER.match(text)
    if m and _balanced(m.group(1)):
        gen = parse_poly(m.group(1), F)
        k = int(m.group(2)) if m.group(2) else 1
        return AIdeal(gen ** k)
    return AIdeal(parse_poly(text, F))


def _balanced(s):
    depth = 0
    for ch in s:
        depth += ch == "("
        depth -= ch == ")"
        if depth < 0:
            return False
    return depth == 0


def primes_of_degree(F, d):
    """All prime ideals of degree d in canonical order."""
    return [AIdeal(g) for g in monic_irreducibles(F, d)]


def primes_up_to_degree(F, d):
    return [P for k in range(1, d + 1) for P in primes_of_degree(F, k)]


class RatFunc:
    """Element of F_q(t) in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = APoly.const(num.F, 1)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = num, APoly.const(num.F, 1)
            return
        g = gcd(num, den)
        if not g.is_one():
            num, den = num // g, den // g
        lc = den.lc
        if lc != 1:
            inv = num.F.inv(lc)
            num, den = num.scale(inv), den.scale(inv)
        self.num, self.den = num, den

    @property
    def F(self):
        return self.num.F

    @classmethod
    def coerce(cls, x, F=None):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, APoly):
            return cls(x)
        if isinstance(x, int):
            return cls(APoly.const(F, F.from_int(x)))
        raise TypeError(f"cannot view {x!r} as a rational function")

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self):
        return self.den.is_one()

    def __eq__(self, other):
        if isinstance(other, (APoly, int)):
            other = RatFunc.coerce(other, self.F)
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = RatFunc.coerce(other, self.F)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RatFunc.coerce(other, self.F))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = RatFunc.coerce(other, self.F)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * RatFunc.coerce(other, self.F).inverse()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other, self.F) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n)

    def frobenius(self, i=1):
        return RatFunc(self.num.frobenius(i), self.den.frobenius(i))

    def reduce_mod(self, prime):
        """Image in A/prime; requires a nonnegative valuation at prime."""
        from .poly import inverse_mod
        g = prime.gen if isinstance(prime, AIdeal) else prime
        if not (self.den % g):
            raise ZeroDivisionError(f"{self} has a pole at ({g})")
        return (self.num * inverse_mod(self.den, g)) % g

    def leading_at_infinity(self):
        """(v_inf, leading coefficient of the Laurent expansion in 1/t)."""
        F = self.F
        return self.den.deg - self.num.deg, F.div(self.num.lc, self.den.lc)

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        num = str(self.num)
        if len(self.num.c) - sum(1 for a in self.num.c if not a) > 1:
            num = f"({num})"
        return f"{num}/({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"


INFINITY = "inf"


def _poly_valuation(a, gen):
    if not a:
        return float("inf")
    v = 0
    while True:
        qt, r = divmod(a, gen)
        if r:
            return v
        a, v = qt, v + 1


def valuation(x, place):
    """v_place(x) for x in A or F; place is a prime AIdeal or INFINITY.

    Returns float('inf') for x = 0.
    """
    if isinstance(x, APoly):
        x = RatFunc(x)
    if not x:
        return float("inf")
    if place == INFINITY:
        return x.den.deg - x.num.deg
    return _poly_valuation(x.num, place.gen) - _poly_valuation(x.den, place.gen)


def parse_ratfunc(text, F):
    if "/" in text:
        num, den = _split_fraction(text)
        return RatFunc(parse_poly(num, F), parse_poly(den, F))
    return RatFunc(parse_poly(text, F))


def _split_fraction(text):
    depth = 0
    for i, ch in enumerate(text):
        depth += ch == "("
        depth -= ch == ")"
        if ch == "/" and depth == 0:
            return text[:i], text[i + 1:]
    raise ValueError(f"malformed fraction {text!r}")


__all__ = ["AIdeal", "RatFunc", "INFINITY", "valuation", "parse_ideal", "parse_ratfunc",
           "primes_of_degree", "primes_up_to_degree"]
