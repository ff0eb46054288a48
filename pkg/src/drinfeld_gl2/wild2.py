"""Characteristic-2 tools: resolvent quadratics of cubics and Artin-Schreier classes at infinity.

For q = 2 the sign characters of the mod-(t) and mod-(t+1) representations cut
out quadratic extensions y^2 - y = u.  When the valuation of u at infinity is
negative and odd, the extension is ramified there.
"""

from dataclasses import dataclass

from .algebra.ideal import INFINITY, RatFunc, valuation
from .algebra.poly import APoly
from .drinfeld import j_invariant

YES = "Yes"
INCONCLUSIVE = "Inconclusive"


def _rat(x, F):
    return RatFunc.coerce(x, F)


def resolvent_quadratic(b, c):
    """Coefficients (constant, linear, leading) of x^2 - 3c x + (b^3 + 9c^2) for x^3 + bx + c."""
    F = (b if isinstance(b, (RatFunc, APoly)) else c).F
    b, c = _rat(b, F), _rat(c, F)
    if not cubic_discriminant(b, c):
        raise ValueError("x^3 + bx + c is not separable")
    three, nine = _rat(3, F), _rat(9, F)
    return (b ** 3 + nine * c * c, -(three * c), _rat(1, F))


def cubic_discriminant(b, c):
    """Discriminant -4b^3 - 27c^2 of x^3 + bx + c."""
    F = b.F
    return -(_rat(4, F) * b ** 3) - _rat(27, F) * c * c


def quadratic_discriminant(coeffs):
    c0, c1, c2 = coeffs
    return c1 * c1 - _rat(4, c0.F) * c2 * c0


def artin_schreier_form(coeffs):
    """In characteristic 2, x^2 + Lx + C becomes y^2 + y + C/L^2 under x = L y."""
    c0, c1, c2 = coeffs
    if c0.F.p != 2:
        raise ValueError("Artin-Schreier form needs characteristic 2")
    if not c1:
        raise ValueError("inseparable quadratic")
    lead = c2
    return (c0 / lead) / ((c1 / lead) ** 2)


@dataclass(frozen=True)
class ASClass:
    """The extension y^2 - y = u, with u reduced at infinity."""

    original: RatFunc
    representative: RatFunc
    v_inf: object
    verdict: str

    def as_dict(self):
        return {"u": str(self.original), "reduced": str(self.representative),
                "v_inf": self.v_inf if self.v_inf != float("inf") else None,
                "ramified_at_infinity": self.verdict}


def reduce_at_infinity(u):
    """Subtract w^2 + w to remove even negative leading terms of u at infinity."""
    F = u.F
    if F.p != 2:
        raise ValueError("Artin-Schreier reduction needs characteristic 2")
    while u:
        v, lead = u.leading_at_infinity()
        if v >= 0 or v % 2:
            break
        s = F.sqrt_char2(lead)
        w = RatFunc(APoly.monomial(F, -v // 2, s))
        u = u - (w * w + w)
    return u


def as_class(u):
    u = RatFunc.coerce(u)
    red = reduce_at_infinity(u)
    v = valuation(red, INFINITY)
    verdict = YES if v != float("inf") and v < 0 and v % 2 else INCONCLUSIVE
    return ASClass(u, red, v, verdict)


def _require_q2(dm):
    if dm.q != 2:
        raise ValueError("this check is specific to q = 2")
    if dm.rank != 2 or not dm.is_generic:
        raise ValueError("needs a global rank-2 module")


def infinity_class(dm, i):
    """Class u_i = j/(t+i)^2 + 1 of the sign character at the prime (t+i)."""
    _require_q2(dm)
    F = dm.F
    j = j_invariant(dm)
    ti = RatFunc(APoly(F, (i % 2, 1)))
    return as_class(j / (ti * ti) + 1)


def combined_class(dm):
    """u_0 + u_1 = j/(t(t+1))^2."""
    _require_q2(dm)
    F = dm.F
    j = j_invariant(dm)
    tt = RatFunc(APoly(F, (0, 1, 1)))
    return as_class(j / (tt * tt))


def classes_distinct(dm):
    """All three quadratic classes ramified at infinity, hence nontrivial and pairwise distinct."""
    return all(c.verdict == YES for c in (infinity_class(dm, 0), infinity_class(dm, 1),
                                            combined_class(dm)))


def v_inf_j(dm):
    return valuation(j_invariant(dm), INFINITY)


def abelianization_full(dm):
    """v_inf(j) odd and at most -5, which makes the abelianized image full."""
    _require_q2(dm)
    v = v_inf_j(dm)
    return v != float("inf") and v % 2 == 1 and v <= -5
