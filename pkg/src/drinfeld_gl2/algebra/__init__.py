"""Exact arithmetic over F_q, A = F_q[t], its quotients, and finite extensions."""

from .factor import factor_poly, monic_irreducibles, prime_divisors
from .field import GF, gf
from .ideal import AIdeal, RatFunc, parse_ideal, parse_ratfunc, primes_of_degree, valuation
from .poly import APoly, format_poly, parse_poly
from .quotient import FunctionField, QuotientRing

__all__ = [
    "AIdeal", "APoly", "FunctionField", "GF", "QuotientRing", "RatFunc", "factor_poly",
    "format_poly", "gf", "monic_irreducibles", "parse_ideal", "parse_poly", "parse_ratfunc",
    "prime_divisors", "primes_of_degree", "valuation",
]
