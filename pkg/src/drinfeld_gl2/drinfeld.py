"""Skew polynomials K{tau}, Drinfeld modules, j-invariants and reduction types."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra.ideal import AIdeal, RatFunc, valuation
from .algebra.poly import APoly
from .algebra.quotient import FunctionField, QuotientRing


class SkewPoly:
    """Element of K{tau} with tau*c = c^q*tau; coefficients low tau-degree first."""

    __slots__ = ("K", "c")

    def __init__(self, K, coeffs):
        c = list(coeffs)
        while c and K.is_zero(c[-1]):
            c.pop()
        self.K = K
        self.c = tuple(c)

    @classmethod
    def tau(cls, K, k=1):
        return cls(K, [K.zero] * k + [K.one])

    @classmethod
    def const(cls, K, a):
        return cls(K, [a])

    @property
    def deg(self):
        return len(self.c) - 1

    def __bool__(self):
        return bool(self.c)

    def coeff(self, i):
        return self.c[i] if 0 <= i < len(self.c) else self.K.zero

    def constant_term(self):
        """The derivative map d0: coefficient of tau^0."""
        return self.coeff(0)

    def _check(self, other):
        if not isinstance(other, SkewPoly):
            raise TypeError(f"expected a SkewPoly, got {type(other).__name__}")
        if other.K != self.K:
            raise ValueError("skew polynomials over different coefficient fields")

    def __eq__(self, other):
        return isinstance(other, SkewPoly) and self.K == other.K and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __add__(self, other):
        self._check(other)
        K = self.K
        n = max(len(self.c), len(other.c))
        return SkewPoly(K, [K.add(self.coeff(i), other.coeff(i)) for i in range(n)])

    def __neg__(self):
        return SkewPoly(self.K, [self.K.neg(a) for a in self.c])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        K = self.K
        if not self.c or not other.c:
            return SkewPoly(K, [])
        out = [K.zero] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if K.is_zero(a):
                continue
            for j, b in enumerate(other.c):
                if K.is_zero(b):
                    continue
                out[i + j] = K.add(out[i + j], K.mul(a, K.frob(b, i)))
        return SkewPoly(K, out)

    def scale_left(self, a):
        return SkewPoly(self.K, [self.K.mul(a, b) for b in self.c])

    def shift(self, k):
        """Right multiplication by tau^k."""
        return SkewPoly(self.K, [self.K.zero] * k + list(self.c))

    def right_divmod(self, h):
        """(g, r) with self = g*h + r and deg r < deg h."""
        self._check(h)
        K = self.K
        if not h.c:
            raise ZeroDivisionError("division by the zero skew polynomial")
        r = list(self.c)
        s = h.deg
        quo = [K.zero] * max(len(r) - s, 0)
        lead_h = h.c[-1]
        for n in range(len(r) - 1, s - 1, -1):
            top = r[n]
            if K.is_zero(top):
                continue
            k = n - s
            coef = K.mul(top, K.inv(K.frob(lead_h, k)))
            quo[k] = coef
            for j, b in enumerate(h.c):
                r[k + j] = K.sub(r[k + j], K.mul(coef, K.frob(b, k)))
        return SkewPoly(K, quo), SkewPoly(K, r[:s])

    def __repr__(self):
        return f"SkewPoly({self})"

    def __str__(self):
        if not self.c:
            return "0"
        terms = []
        for i, a in enumerate(self.c):
            if self.K.is_zero(a):
                continue
            mono = "" if i == 0 else ("tau" if i == 1 else f"tau^{i}")
            s = self.K.to_str(a)
            if not mono:
                terms.append(s)
            elif s == "1":
                terms.append(mono)
            else:
                terms.append(f"({s})*{mono}")
        return " + ".join(terms)


def skew_mul(f, g):
    return f * g


class AdditivePoly:
    """Sum of c_i * x^(q^i) with coefficients in a coefficient ring."""

    __slots__ = ("K", "c", "q")

    def __init__(self, K, coeffs, q):
        self.K = K
        self.c = tuple(coeffs)
        self.q = q

    @classmethod
    def from_skew(cls, f):
        return cls(f.K, f.c, f.K.F.q)

    @property
    def degree(self):
        return self.q ** (len(self.c) - 1) if self.c else -1

    def __call__(self, x):
        K = self.K
        acc, power = K.zero, x
        for i, a in enumerate(self.c):
            if i:
                power = K.frob(power, 1)
            acc = K.add(acc, K.mul(a, power))
        return acc

    def dense_terms(self):
        """[(exponent, coefficient)] with zero coefficients dropped."""
        return [(self.q ** i, a) for i, a in enumerate(self.c) if not self.K.is_zero(a)]

    def __str__(self):
        terms = []
        for e, a in reversed(self.dense_terms()):
            mono = "x" if e == 1 else f"x^{e}"
            s = self.K.to_str(a)
            terms.append(mono if s == "1" else f"({s})*{mono}")
        return " + ".join(terms) if terms else "0"


class DrinfeldModule:
    """phi_t = a0 + a1*tau + ... + ar*tau^r over a coefficient field K.

    Global modules live over F_q(t) with a0 = t.  Reduced modules live over a
    residue field A/p and remember p as their characteristic.
    """

    def __init__(self, K, coeffs, characteristic=None):
        coeffs = [K(a) for a in coeffs]
        if len(coeffs) < 2 or K.is_zero(coeffs[-1]):
            raise ValueError("need rank >= 1 with a nonzero top coefficient")
        self.K = K
        self.F = K.F
        self.coeffs = tuple(coeffs)
        self.characteristic = characteristic
        self.phi_t = SkewPoly(K, coeffs)

    @classmethod
    def rank2(cls, F, a1, a2):
        """Global rank-2 module t + a1*tau + a2*tau^2 over F_q(t)."""
        K = FunctionField(F)
        return cls(K, [APoly.t(F), a1, a2])

    @property
    def rank(self):
        return len(self.coeffs) - 1

    @property
    def is_generic(self):
        return self.characteristic is None

    @property
    def q(self):
        return self.F.q

    def a(self, i):
        return self.coeffs[i]

    def __repr__(self):
        where = "generic" if self.is_generic else f"char {self.characteristic}"
        return f"DrinfeldModule({self.phi_t}; {where})"

    def __eq__(self, other):
        return (isinstance(other, DrinfeldModule) and self.K == other.K
                and self.coeffs == other.coeffs and self.characteristic == other.characteristic)

    def __hash__(self):
        return hash((self.K, self.coeffs, self.characteristic))

    def phi_of(self, a):
        """phi_a by Horner evaluation of a at phi_t."""
        K = self.K
        acc = SkewPoly(K, [])
        for c in reversed(a.c):
            acc = acc * self.phi_t + SkewPoly(K, [K(c)])
        return acc

    def twist(self, b):
        """The isomorphic module b^-1 * phi * b, i.e. a_i -> b^(q^i - 1) a_i."""
        K = self.K
        q = self.q
        b = K(b)
        out = [self.coeffs[0]]
        for i, a in enumerate(self.coeffs[1:], start=1):
            out.append(K.mul(a, _kpow(K, b, q ** i - 1)))
        return DrinfeldModule(K, out, self.characteristic)


def _kpow(K, b, n):
    if isinstance(b, RatFunc):
        return b ** n
    if isinstance(K, QuotientRing):
        return K.pow(b, n)
    raise TypeError("unsupported twist element")


def j_invariant(dm):
    if dm.rank != 2:
        raise ValueError("j-invariant is defined for rank 2")
    a1, a2 = dm.coeffs[1], dm.coeffs[2]
    K = dm.K
    return K.mul(_kpow(K, a1, dm.q + 1), K.inv(a2))


def torsion_polynomial(dm, ideal):
    """The additive polynomial phi_g(x) for the monic generator g of the ideal."""
    gen = ideal.gen if isinstance(ideal, AIdeal) else ideal
    return AdditivePoly.from_skew(dm.phi_of(gen))


GOOD = "Good"
STABLE_RANK1 = "StableRank1"
POTENTIALLY_GOOD = "PotentiallyGoodNotGood"
NOT_STABLE = "NotStableOverBase"


@dataclass(frozen=True)
class ReductionReport:
    prime: AIdeal
    kind: str
    potential_rank: int
    m: Fraction
    v_j: Optional[int]
    valuations: tuple

    @property
    def is_good(self):
        return self.kind == GOOD

    def as_dict(self):
        return {
            "prime": str(self.prime),
            "kind": self.kind,
            "potential_rank": self.potential_rank,
            "m": str(self.m),
            "v_j": self.v_j,
            "valuations": [None if v == float("inf") else v for v in self.valuations],
        }


def reduction_type(dm, prime):
    """Classify the reduction of a global rank-2 module at a prime, from valuations only."""
    if not dm.is_generic or dm.rank != 2:
        raise ValueError("reduction_type expects a global rank-2 module")
    if not prime.is_prime():
        raise ValueError(f"{prime} is not prime")
    q = dm.q
    v1 = valuation(dm.coeffs[1], prime)
    v2 = valuation(dm.coeffs[2], prime)
    inf = float("inf")
    cand = [(Fraction(v2, q * q - 1), 2)]
    if v1 != inf:
        cand.append((Fraction(v1, q - 1), 1))
    m = min(c for c, _ in cand)
    jmax = max(i for c, i in cand if c == m)
    v_j = None if v1 == inf else (q + 1) * v1 - v2
    # good: some twist exponent k with v2 = k(q^2-1) and v1 >= k(q-1)
    if v2 % (q * q - 1) == 0 and (v1 == inf or v1 >= (v2 // (q * q - 1)) * (q - 1)):
        kind = GOOD
    elif jmax == 2:
        kind = POTENTIALLY_GOOD
    elif v1 % (q - 1) == 0:
        # a1 becomes a unit after the twist, a2 strictly integral since v(j) < 0
        kind = STABLE_RANK1
    else:
        kind = NOT_STABLE
    return ReductionReport(prime, kind, jmax, m, v_j, (v1, v2))


def good_model_twist(dm, prime):
    """Twist exponent k (twist by pi^-k) giving integral coefficients with unit a2."""
    rep = reduction_type(dm, prime)
    if rep.kind != GOOD:
        raise ValueError(f"no good reduction at {prime}")
    q = dm.q
    return rep.valuations[1] // (q * q - 1)


def reduce_module(dm, prime):
    """The reduction mod a prime of good reduction, as a module over A/prime."""
    k = good_model_twist(dm, prime)
    R = QuotientRing(prime)
    pi = RatFunc(prime.gen)
    q = dm.q
    coeffs = [R.from_poly(APoly.t(dm.F))]
    for i in (1, 2):
        a = dm.coeffs[i] * pi ** (-k * (q ** i - 1))
        coeffs.append(a.reduce_mod(prime))
    return DrinfeldModule(R, coeffs, characteristic=prime)


def bad_primes(dm):
    """Primes where the global rank-2 module does not have good reduction."""
    from .algebra.factor import prime_divisors
    candidates = set()
    for a in dm.coeffs[1:]:
        for part in (a.num, a.den):
            if part.deg > 0:
                candidates.update(prime_divisors(part))
    out = []
    for g in sorted(candidates, key=lambda f: f.sort_key()):
        P = AIdeal(g)
        if reduction_type(dm, P).kind != GOOD:
            out.append(P)
    return out
