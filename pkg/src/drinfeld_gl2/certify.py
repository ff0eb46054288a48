"""Rule-based certificates for Galois images of rank-2 Drinfeld modules.

Every certificate is a tree.  Leaves are finite computations (reduction types,
Frobenius polynomials, valuations, determinant formulas); inner nodes name
the group-theoretic or arithmetic rule that combines them.  A claim is Proven
only when every premise is; anything missing makes it Inconclusive.
"""

from dataclasses import dataclass, field
from math import gcd

from .algebra.ideal import AIdeal, RatFunc, primes_of_degree, valuation
from .algebra.factor import prime_divisors
from .algebra.poly import APoly, gcd as poly_gcd
from .algebra.quotient import QuotientRing
from .drinfeld import GOOD, STABLE_RANK1, bad_primes, j_invariant, reduction_type
from .frobenius import frob_charpoly_exact, irreducibility_bound
from .groups import FullGL2Evidence, full_gl2_criterion
from . import wild2

PROVEN = "Proven"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class CertifyOptions:
    """Search budgets and evidence switches."""

    witness_degree_cap: int = 6       # irreducibility-witness primes up to this degree
    explicit_degree_cap: int = 4      # explicit lambda checks allowed up to this degree
    frob_method: str = "skew"
    withhold: frozenset = frozenset()  # evidence names to drop, e.g. {"abelianization"}


DEFAULT_OPTIONS = CertifyOptions()


@dataclass
class Certificate:
    claim: str
    status: str
    rule: str
    detail: dict = field(default_factory=dict)
    premises: list = field(default_factory=list)

    @property
    def proven(self):
        return self.status == PROVEN

    def as_dict(self):
        return {"claim": self.claim, "status": self.status, "rule": self.rule,
                "detail": _jsonable(self.detail),
                "premises": [p.as_dict() for p in self.premises]}

    def walk(self):
        yield self
        for p in self.premises:
            yield from p.walk()

    def find(self, claim):
        return [c for c in self.walk() if c.claim == claim]


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


def _node(claim, rule, premises, **detail):
    status = PROVEN if premises and all(p.proven for p in premises) else INCONCLUSIVE
    return Certificate(claim, status, rule, detail, list(premises))


def _leaf(claim, ok, rule, **detail):
    return Certificate(claim, PROVEN if ok else INCONCLUSIVE, rule, detail, [])


def _coefficients(dm):
    """(a1, a2) as polynomials; the determinant formulas need integral coefficients."""
    if not dm.is_generic or dm.rank != 2:
        raise ValueError("certificates need a global rank-2 module")
    out = []
    for a in dm.coeffs[1:]:
        if isinstance(a, RatFunc):
            if not a.is_polynomial():
                raise ValueError("certificates need a1, a2 in A = F_q[t]")
            a = a.num
        out.append(a)
    return out[0], out[1]


# --- determinant facts ------------------------------------------------------

def _sign_leading(F, a, power):
    """Leading coefficient of (-1)^power * a."""
    lc = a.lc
    return F.neg(lc) if power % 2 else lc


def rank1_index(delta, ideal=None):
    """Index of the mod-ideal image of the rank-1 module t + delta*tau (adelic if ideal is None)."""
    if not delta:
        raise ValueError("delta must be nonzero")
    F = delta.F
    q = F.q
    d = delta.deg
    zeta = _sign_leading(F, delta, d)
    e = F.order(zeta)
    vals = []
    if ideal is not None:
        for g in prime_divisors(delta):
            P = AIdeal(g)
            if not P.divides(ideal):
                vals.append(valuation(delta, P))
    return gcd(d - 1, (q - 1) // e, *vals)


def det_index(dm):
    """[A^x : det(image)] = gcd(d - 1, (q - 1)/e), via the rank-1 module with delta = -a2."""
    _, a2 = _coefficients(dm)
    return rank1_index(-a2)


@dataclass(frozen=True)
class DetFacts:
    d: int
    zeta: int
    e: int
    index: int


def det_facts(dm):
    _, a2 = _coefficients(dm)
    F = dm.F
    d = a2.deg
    zeta = _sign_leading(F, a2, d + 1)
    return DetFacts(d, zeta, F.order(zeta), det_index(dm))


def det_g(dm, ideal):
    """g = gcd({d-1, q-1} with v_p(a2) for primes p not dividing the ideal)."""
    _, a2 = _coefficients(dm)
    q = dm.q
    vals = []
    for g in prime_divisors(a2) if a2.deg > 0 else []:
        P = AIdeal(g)
        if not P.divides(ideal):
            vals.append(valuation(a2, P))
    return gcd(a2.deg - 1, q - 1, *vals)


def det_surjective_mod(dm, ideal):
    """(g == 1, g); g = 1 makes the determinant onto (A/a^i)^x for every i."""
    g = det_g(dm, ideal)
    return g == 1, g


# --- inertia witnesses ------------------------------------------------------

@dataclass(frozen=True)
class InertiaWitness:
    prime: AIdeal
    v: int
    coprime_to_q: bool
    deg_gt1: bool

    def as_dict(self):
        return {"prime": str(self.prime), "v_j": self.v, "gcd_v_q_is_1": self.coprime_to_q,
                "deg_gt_1": self.deg_gt1}


def inertia_witnesses(dm):
    """All bad primes with stable reduction of rank 1, in canonical order."""
    out = []
    j = j_invariant(dm)
    for P in bad_primes(dm):
        rep = reduction_type(dm, P)
        if rep.kind != STABLE_RANK1:
            continue
        v = rep.v_j
        if v != valuation(j, P) or v >= 0:
            raise RuntimeError(f"inconsistent j-valuation at {P}")
        out.append(InertiaWitness(P, v, gcd(v, dm.q) == 1, P.degree > 1))
    return out


def find_inertia_witness(dm, exclude=(), need_deg_gt1=False, need_gcd_q=True, witnesses=None):
    """First stable-rank-1 bad prime meeting the constraints, or None."""
    pool = inertia_witnesses(dm) if witnesses is None else witnesses
    for w in pool:
        if w.prime in exclude:
            continue
        if need_deg_gt1 and not w.deg_gt1:
            continue
        if need_gcd_q and not w.coprime_to_q:
            continue
        return w
    return None


# --- irreducibility over F_lambda -------------------------------------------

def quadratic_is_irreducible(c1, c0, prime):
    """Whether x^2 + c1 x + c0 has no root in A/prime."""
    R = QuotientRing(prime)
    F = prime.F
    m = prime.gen
    c1, c0 = c1 % m, c0 % m
    N = prime.norm
    if F.p == 2:
        if not c1:
            return False
        z = (c0 * R.pow(R.mul(c1, c1), -1)) % m
        tr, x = APoly(F), z
        for _ in range(F.e * prime.degree):
            tr = tr + x
            x = R.mul(x, x)
        return tr == APoly.const(F, 1)
    disc = (c1 * c1 - APoly.const(F, F.from_int(4)) * c0) % m
    if not disc:
        return False
    return R.pow(disc, (N - 1) // 2) != APoly.const(F, 1)


def irreducibility_witness(dm, lam, options=DEFAULT_OPTIONS):
    """First good prime q != lambda whose Frobenius polynomial is irreducible mod lambda."""
    for deg in range(1, options.witness_degree_cap + 1):
        for Q in primes_of_degree(dm.F, deg):
            if Q == lam or reduction_type(dm, Q).kind != GOOD:
                continue
            fp = frob_charpoly_exact(dm, Q, method=options.frob_method)
            c0, c1, _ = fp.reduce(lam)
            if quadratic_is_irreducible(c1, c0, lam):
                return Q, fp
    return None


# --- mod lambda -------------------------------------------------------------

def modl_full_certificate(dm, lam, options=DEFAULT_OPTIONS):
    """Image mod lambda is GL_2(F_lambda)."""
    _coefficients(dm)
    ok, g = det_surjective_mod(dm, lam)
    det_leaf = _leaf("DetFull", ok, "det image full when g = 1", ideal=str(lam), g=g)

    w = find_inertia_witness(dm, need_gcd_q=True)
    unip = _leaf("UnipotentSubgroup", w is not None,
                 "stable rank-1 inertia with gcd(v(j), q) = 1 gives the unipotent group mod lambda",
                 witness=w.as_dict() if w else None, level=str(lam))

    found = irreducibility_witness(dm, lam, options)
    if found:
        Q, fp = found
        c0, c1, _ = fp.reduce(lam)
        irr = _leaf("Irreducible", True, "Frobenius polynomial irreducible mod lambda",
                    frobenius_prime=str(Q), frobenius_polynomial=str(fp),
                    reduced=f"x^2 + ({c1})*x + ({c0})")
    else:
        irr = _leaf("Irreducible", False, "no irreducibility witness within the search cap",
                    degree_cap=options.witness_degree_cap)
    return _node(f"ModLFull({lam})", "irreducible + order-|F| subgroup => SL_2; with full det => GL_2",
                 [det_leaf, unip, irr], prime=str(lam))


# --- lambda-adic ------------------------------------------------------------

def lambda_adic_full_certificate(dm, lam, options=DEFAULT_OPTIONS, modl=None):
    """Image in GL_2(A_lambda) is everything, via the full-GL_2(R) criterion."""
    modl = modl or modl_full_certificate(dm, lam, options)
    N = lam.norm
    premises = [modl]
    ok, g = det_surjective_mod(dm, lam)
    a = _leaf("DetFullAdic", ok, "g = 1 excluding only lambda gives det onto A_lambda^x", g=g)
    premises.append(a)
    witnesses = inertia_witnesses(dm)
    ev = FullGL2Evidence(norm=N, a=a.proven, b=modl.proven)
    if N > 2:
        w = find_inertia_witness(dm, need_gcd_q=True, witnesses=witnesses)
        c = _leaf("NonscalarLevel1", w is not None,
                  "p-part of inertia mod lambda^2 has order >= N^2 inside a Borel with c in F_q^x",
                  witness=w.as_dict() if w else None)
        premises.append(c)
        ev = FullGL2Evidence(norm=N, a=a.proven, b=modl.proven, c=c.proven)
    else:
        if "abelianization" in options.withhold:
            abel = _leaf("AbelianizationFull", False, "evidence withheld")
        elif dm.q == 2:
            abel = _leaf("AbelianizationFull", wild2.abelianization_full(dm),
                        "v_inf(j) odd and <= -5", v_inf_j=wild2.v_inf_j(dm))
        else:
            abel = _leaf("AbelianizationFull", False, "only available for q = 2")
        w = find_inertia_witness(dm, exclude=(lam,), need_gcd_q=True, witnesses=witnesses)
        wl = _leaf("UnipotentAdic", w is not None,
                   "unipotent inertia at every level lambda^i (witness prime differs from lambda)",
                   witness=w.as_dict() if w else None)
        d = _node("Level2Full", "mod-lambda full + abelianization full + unipotent => GL_2(A/lambda^2)",
                  [modl, abel, wl])
        e = _node("Order2Det1", "unipotent witness gives det 1 and order 2 mod lambda", [wl])
        premises += [abel, wl, d, e]
        ev = FullGL2Evidence(norm=N, a=a.proven, b=modl.proven, d=d.proven, e=e.proven)
    report = full_gl2_criterion(ev)
    node = _node(f"LambdaAdicFull({lam})", "full GL_2(R) criterion", premises,
                 prime=str(lam), conditions=report.conditions)
    if report.verdict is not True:
        node.status = INCONCLUSIVE
    return node


# --- all lambda -------------------------------------------------------------

def _uniform_det(dm, bound):
    """g = 1 for every prime of degree > bound (only primes dividing a2 can change g)."""
    _, a2 = _coefficients(dm)
    gs = {"generic": det_g(dm, AIdeal(APoly.const(dm.F, 1)))}
    for g in prime_divisors(a2) if a2.deg > 0 else []:
        if g.deg > bound:
            gs[str(AIdeal(g))] = det_g(dm, AIdeal(g))
    return all(v == 1 for v in gs.values()), gs


def all_lambda_certificate(dm, options=DEFAULT_OPTIONS):
    """Every lambda-adic image is GL_2(A_lambda)."""
    _coefficients(dm)
    ib = irreducibility_bound(dm)
    if ib is None:
        return _node("AllLambdaFull", "irreducibility bound", [
            _leaf("IrreducibilityBound", False, "no two good primes of equal degree found")])
    bound_leaf = _leaf("IrreducibilityBound", True, "deg lambda <= 2nd for reducible mod-lambda images",
                       bound=ib.bound, n=ib.n, n_rule=ib.n_rule, d=ib.degree,
                       primes=[str(P) for P in ib.primes])
    premises = [bound_leaf]
    if ib.bound > options.explicit_degree_cap:
        premises.append(_leaf("ExplicitRange", False, "explicit range exceeds the degree cap",
                              bound=ib.bound, cap=options.explicit_degree_cap))
        return _node("AllLambdaFull", "explicit lambda below the bound, uniform rules above",
                     premises)
    explicit = []
    for deg in range(1, ib.bound + 1):
        for lam in primes_of_degree(dm.F, deg):
            explicit.append(lambda_adic_full_certificate(dm, lam, options))
    premises.append(_node("ExplicitLambda", "each lambda of degree <= B", explicit,
                          count=len(explicit), bound=ib.bound))

    # uniform chain for deg lambda > B
    stable = all(reduction_type(dm, P).kind in (GOOD, STABLE_RANK1)
                 for P in bad_primes(dm) if P.degree > ib.bound)
    stable_leaf = _leaf("StableBeyondBound", stable,
                        "reduction is stable at every lambda beyond the bound")
    ok, gs = _uniform_det(dm, ib.bound)
    det_leaf = _leaf("DetFullUniform", ok, "g = 1 for every lambda beyond the bound", g=gs)
    w = find_inertia_witness(dm, need_gcd_q=True)
    unip = _leaf("UnipotentUniform", w is not None,
                 "inertia witness with gcd(v(j), q) = 1 gives unipotent and nonscalar elements",
                 witness=w.as_dict() if w else None)
    premises.append(_node("UniformLambda",
                          "irreducible by the bound + unipotent + full det => GL_2(A_lambda)",
                          [bound_leaf, stable_leaf, det_leaf, unip], beyond_degree=ib.bound))
    return _node("AllLambdaFull", "explicit lambda below the bound, uniform rules above", premises)


# --- adelic -----------------------------------------------------------------

@dataclass
class EvidenceBundle:
    q: int
    all_lambda: Certificate
    witnesses: list
    det_small_g: object = None      # g for the product of norm-q primes (q in {2, 3})


def collect_evidence(dm, options=DEFAULT_OPTIONS, all_lambda=None):
    all_lambda = all_lambda or all_lambda_certificate(dm, options)
    ws = inertia_witnesses(dm)
    small = None
    if dm.q in (2, 3):
        prod = APoly.const(dm.F, 1)
        for P in primes_of_degree(dm.F, 1):
            prod = prod * P.gen
        small = det_g(dm, AIdeal(prod))
    return EvidenceBundle(dm.q, all_lambda, ws, small)


def commutator_conditions(bundle):
    """Conditions (a)-(d) for [G, G] = [GL_2, GL_2] over the adeles."""
    a = Certificate("SL2InEveryLambda", bundle.all_lambda.status, "from all-lambda fullness",
                    {}, [bundle.all_lambda])
    wb = next((w for w in bundle.witnesses if w.coprime_to_q), None)
    b = _leaf("PairSubgroups", wb is not None,
              "unipotent inertia mod lambda1*lambda2 has order N^2 (exponent of witness <= 1)",
              witness=wb.as_dict() if wb else None)
    if bundle.q == 2:
        wc = next((w for w in bundle.witnesses if w.coprime_to_q and w.deg_gt1), None)
        c = _leaf("PairUnipotentNorm2", wc is not None,
                  "witness of degree > 1 gives unipotent groups at every level (t)^i (t+1)^i",
                  witness=wc.as_dict() if wc else None)
    else:
        c = _leaf("PairUnipotentNorm2", True, "vacuous: no primes of norm 2")
    if bundle.q in (2, 3):
        d = _leaf("DetSmallPrimes", bundle.det_small_g == 1,
                  "g = 1 for the product of the norm-q primes", g=bundle.det_small_g)
    else:
        d = _leaf("DetSmallPrimes", True, "vacuous for q > 3")
    return _node("CommutatorFull", "criterion for the commutator subgroup", [a, b, c, d])


def adelic_certificate(dm, options=DEFAULT_OPTIONS):
    """Strongest provable statement about the adelic image."""
    _coefficients(dm)
    q = dm.q
    facts = det_facts(dm)
    bundle = collect_evidence(dm, options)
    comm = commutator_conditions(bundle)
    if q == 2:
        if "abelianization" in options.withhold:
            abel = _leaf("AbelianizationFull", False, "evidence withheld")
        else:
            abel = _leaf("AbelianizationFull", wild2.abelianization_full(dm), "v_inf(j) odd and <= -5",
                        v_inf_j=wild2.v_inf_j(dm),
                        classes=[c.as_dict() for c in (wild2.infinity_class(dm, 0),
                                                       wild2.infinity_class(dm, 1),
                                                       wild2.combined_class(dm))])
        full = _node("AdelicFull", "commutator full + abelianization full", [comm, abel])
        bound = 4
    else:
        det_leaf = _leaf("DetIndexOne", facts.index == 1, "det index gcd(d-1, (q-1)/e)",
                         index=facts.index, d=facts.d, zeta=facts.zeta, e=facts.e)
        full = _node("AdelicFull", "commutator = SL_2 + det index 1", [comm, det_leaf])
        bound = facts.index
    detail = {"det_index": facts.index, "index_bound": bound}
    if full.proven:
        full.detail.update(detail)
        return full
    if comm.proven:
        return _node(f"IndexDivides({bound})", "commutator full, index bounded by the abelianization",
                     [comm], **detail)
    full.detail.update(detail)
    return full


# --- sieve sets -------------------------------------------------------------

@dataclass(frozen=True)
class SieveFlags:
    in_R: bool
    in_S_m: bool
    in_T_m: bool
    note: str = ""


def sieve_membership(a1, a2, m):
    """Membership of (a1, a2) in the sieving sets R, S_m and T_m."""
    if m < 2:
        raise ValueError("m must be at least 2")
    F = a2.F
    q = F.q
    if not a2:
        return SieveFlags(False, False, False, "a2 = 0")
    r_primes = 0
    if a2.deg > 0:
        for g in prime_divisors(a2):
            P = AIdeal(g)
            if P.degree > 1 and valuation(a1, P) == 0 and valuation(a2, P) == 1:
                r_primes += 1
    in_R = r_primes >= 2
    # S_m: no prime of degree > m divides both a1 and a2
    common = a2 if not a1 else poly_gcd(a1, a2)
    in_S = common.deg <= 0 or all(g.deg <= m for g in prime_divisors(common))
    # T_m: some degree d <= m/(2(q-1)^2(q+1)) carries two primes where a2 is a unit
    cap = m // (2 * (q - 1) ** 2 * (q + 1))
    in_T = False
    for d in range(1, cap + 1):
        good = [P for P in primes_of_degree(F, d) if a2 % P.gen]
        if len(good) >= 2:
            in_T = True
            break
    return SieveFlags(in_R, in_S, in_T)
