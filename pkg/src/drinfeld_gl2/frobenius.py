"""Torsion kernels over finite fields, Frobenius matrices and Frobenius polynomials.

A reduced module over F_p = A/p acts on its a-torsion, which lives in a finite
extension E of F_p.  E is realized over the prime field, torsion points are
found as the kernel of the F_p-linear map x -> phi_a(x), and the
q^deg(p)-power Frobenius is read off in A/a-coordinates.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

from .algebra import linalg
from .algebra.extfield import ExtField
from .algebra.ideal import AIdeal, RatFunc, primes_of_degree
from .algebra.poly import APoly, inverse_mod, is_irreducible
from .algebra.quotient import QuotientRing
from .algebra.xpoly import XPoly, power_poly
from .drinfeld import GOOD, SkewPoly, reduce_module, reduction_type

COMPOSITE_LEVEL_CAP = 81


class InternalConsistencyError(RuntimeError):
    """An invariant that must hold by theory failed; this signals a bug."""


def frobenius_order(dm, ideal, cap=None):
    """Smallest k with the a-torsion defined over the degree-k extension of A/p.

    That happens exactly when phi_a right-divides tau^(k deg p) - 1.
    """
    K = dm.K
    d = dm.characteristic.degree
    h = dm.phi_of(ideal.gen)
    one = SkewPoly.const(K, K.one)
    cap = cap or 4 * ideal.norm ** 4
    r = one
    for k in range(1, cap + 1):
        # left multiplication by tau^d is a shift: coefficients lie in A/p
        r = r.shift(d).right_divmod(h)[1]
        if r == one:
            return k
    raise RuntimeError(f"torsion field degree exceeds cap {cap}")


@dataclass
class TorsionBasis:
    """The a-torsion of a reduced module, with an A/a-basis."""

    E: ExtField
    ring: QuotientRing
    basis: tuple                 # two E-vectors
    points: list                 # [(E-vector, (c1, c2))] in canonical E order
    span: np.ndarray = field(repr=False)         # rows: F_p-basis of the kernel in E
    frob_action: np.ndarray = field(repr=False)  # q^deg(p)-power map on span coordinates
    action: dict = field(repr=False)             # ring index -> matrix on span coordinates
    basis_coords: tuple = field(repr=False)
    lookup: dict = field(repr=False)             # span coordinates -> (c1, c2)

    @property
    def size(self):
        return len(self.points)

    def coordinates_of(self, span_coords):
        return self.lookup[tuple(int(x) for x in span_coords)]


def _restrict(op, V, p):
    """Matrix of an operator preserving span(V) in the V-row basis (acting on row coords)."""
    images = linalg.matmul_mod(op, V.T, p)   # columns: op(v_i)
    cols = []
    for i in range(V.shape[0]):
        x = linalg.solve(V.T, images[:, i], p)
        if x is None:
            raise InternalConsistencyError("torsion kernel is not stable under an endomorphism")
        cols.append(x)
    return np.array(cols, dtype=np.int64).T


def _find_root(E, subfield, evaluate):
    """First element (canonical order) of a subfield where evaluate(x) vanishes."""
    p = E.p
    k = subfield.shape[0]
    cands = []
    for coeffs in product(range(p), repeat=k):
        x = (np.array(coeffs, dtype=np.int64) @ subfield) % p if k else E.zero()
        cands.append((E.encode(x), x))
    cands.sort(key=lambda c: c[0])
    for _, x in cands:
        if not evaluate(x).any():
            return x
    raise InternalConsistencyError("expected root not found in subfield")


class _Embedding:
    """Embedding of F_q and of A/p into an absolute extension E."""

    def __init__(self, E, F, char_gen):
        self.E, self.F = E, F
        p = E.p
        Phi = E.frobenius_matrix()
        if F.e > 1:
            sub = linalg.nullspace((linalg.matpow_mod(Phi, F.e, p) - np.eye(E.D, dtype=np.int64)) % p, p)
            mod = F.spec.modulus
            self.g0 = _find_root(E, sub, lambda x: self._eval_prime_poly(mod, x))
        else:
            self.g0 = E.one()
        self.g_pows = [E.one()]
        for _ in range(1, F.e):
            self.g_pows.append(E.mul(self.g_pows[-1], self.g0))
        d = char_gen.deg
        sub = E.subfield_basis(F.e * d)
        self.t0 = _find_root(E, sub, lambda x: self._eval_apoly(char_gen, x))
        self.t_pows = [E.one()]
        for _ in range(1, d):
            self.t_pows.append(E.mul(self.t_pows[-1], self.t0))

    def _eval_prime_poly(self, coeffs, x):
        E = self.E
        acc = E.zero()
        for c in reversed(coeffs):
            acc = E.add(E.mul(acc, x), E.scalar(c))
        return acc

    def fq(self, c):
        E = self.E
        acc = E.zero()
        for j, dgt in enumerate(self.F.digits(c)):
            if dgt:
                acc = (acc + dgt * self.g_pows[j]) % E.p
        return acc

    def _eval_apoly(self, f, x):
        E = self.E
        acc = E.zero()
        for c in reversed(f.c):
            acc = E.add(E.mul(acc, x), self.fq(c))
        return acc

    def residue(self, a):
        """Image of a reduced element of A/p."""
        E = self.E
        acc = E.zero()
        for k, c in enumerate(a.c):
            if c:
                acc = E.add(acc, E.mul(self.fq(c), self.t_pows[k]))
        return acc


def _skew_operator(E, emb, skew, Phi_q):
    """D x D matrix of x -> sum c_i x^(q^i)."""
    p = E.p
    total = np.zeros((E.D, E.D), dtype=np.int64)
    power = np.eye(E.D, dtype=np.int64)
    for i, c in enumerate(skew.c):
        if i:
            power = linalg.matmul_mod(Phi_q, power, p)
        if c:
            total = (total + linalg.matmul_mod(E.mul_matrix(emb.residue(c)), power, p)) % p
    return total


def torsion_basis(dm, ideal, composite=False):
    """Kernel of phi_a on the splitting field, with an A/a-basis."""
    if dm.is_generic:
        raise ValueError("torsion_basis works on a reduced module")
    if dm.rank != 2:
        raise ValueError("torsion_basis expects rank 2")
    char = dm.characteristic
    if char.divides(ideal) if composite else ideal == char:
        raise ValueError(f"level {ideal} is not prime to the characteristic {char}")
    if not composite and not ideal.is_prime():
        raise ValueError(f"level {ideal} is not prime")
    if composite and ideal.norm > COMPOSITE_LEVEL_CAP:
        raise ValueError(f"|A/a| = {ideal.norm} exceeds the cap {COMPOSITE_LEVEL_CAP}")
    return _torsion_basis(dm, ideal)


@lru_cache(maxsize=256)
def _torsion_basis(dm, ideal):
    F = dm.F
    p, e = F.p, F.e
    d = dm.characteristic.degree
    m = frobenius_order(dm, ideal)
    E = ExtField(p, e * d * m, base=dm.characteristic, degree_over_base=m)
    emb = _Embedding(E, F, dm.characteristic.gen)
    Phi = E.frobenius_matrix()
    Phi_q = linalg.matpow_mod(Phi, e, p)

    L = _skew_operator(E, emb, dm.phi_of(ideal.gen), Phi_q)
    V = linalg.nullspace(L, p)
    expected = 2 * e * ideal.degree
    if V.shape[0] != expected:
        raise InternalConsistencyError(
            f"torsion kernel has F_p-dimension {V.shape[0]}, expected {expected}")

    frob = _restrict(linalg.matpow_mod(Phi, e * d, p), V, p)
    T = _restrict(_skew_operator(E, emb, dm.phi_t, Phi_q), V, p)
    G = _restrict(E.mul_matrix(emb.g0), V, p) if e > 1 else np.eye(expected, dtype=np.int64)

    ring = QuotientRing(ideal)
    k = expected
    ident = np.eye(k, dtype=np.int64)
    g_pows = [ident]
    for _ in range(1, e):
        g_pows.append(linalg.matmul_mod(g_pows[-1], G, p))

    def scalar(c):
        out = np.zeros((k, k), dtype=np.int64)
        for j, dgt in enumerate(F.digits(c)):
            if dgt:
                out = (out + dgt * g_pows[j]) % p
        return out

    t_pows = [ident]
    for _ in range(1, ideal.degree):
        t_pows.append(linalg.matmul_mod(t_pows[-1], T, p))
    action = {}
    for idx in range(ring.size):
        a = ring.element(idx)
        mat = np.zeros((k, k), dtype=np.int64)
        for j, c in enumerate(a.c):
            if c:
                mat = (mat + linalg.matmul_mod(scalar(c), t_pows[j], p)) % p
        action[idx] = mat

    # all kernel points, as span coordinates, in canonical E order
    coords = np.array(list(product(range(p), repeat=k)), dtype=np.int64)
    elems = linalg.matmul_mod(coords, V, p)
    order = sorted(range(len(coords)), key=lambda i: E.encode(elems[i]))
    coords, elems = coords[order], elems[order]

    def orbit(y):
        return {tuple(((action[i] @ y) % p).tolist()) for i in action}

    n = ring.size
    P1 = next(i for i in range(len(coords)) if len(orbit(coords[i])) == n)
    y1 = coords[P1]
    images1 = {i: (action[i] @ y1) % p for i in action}
    P2 = None
    for i in range(len(coords)):
        y2 = coords[i]
        images2 = {j: (action[j] @ y2) % p for j in action}
        span = {tuple(((images1[a] + images2[b]) % p).tolist()) for a in action for b in action}
        if len(span) == n * n:
            P2 = i
            break
    if P2 is None:
        raise InternalConsistencyError("torsion is not free of rank 2")
    y2 = coords[P2]
    images2 = {j: (action[j] @ y2) % p for j in action}
    lookup = {}
    for a in action:
        for b in action:
            key = tuple(((images1[a] + images2[b]) % p).tolist())
            lookup[key] = (a, b)
    points = [(elems[i], lookup[tuple(coords[i].tolist())]) for i in range(len(coords))]
    return TorsionBasis(E=E, ring=ring, basis=(elems[P1], elems[P2]), points=points, span=V,
                        frob_action=frob, action=action, basis_coords=(y1, y2), lookup=lookup)


@dataclass(frozen=True)
class FrobSample:
    prime: AIdeal
    level: AIdeal
    matrix: tuple    # ((m11, m12), (m21, m22)) over A/level
    trace: APoly
    det: APoly

    def charpoly(self):
        """x^2 - tr*x + det, coefficients reduced mod the level (low first)."""
        m = self.level.gen
        return ((self.det % m), (-self.trace) % m, APoly.const(self.trace.F, 1))


def _reduced(dm, prime):
    rep = reduction_type(dm, prime)
    if rep.kind != GOOD:
        raise ValueError(f"{prime} is a prime of bad reduction ({rep.kind})")
    return reduce_module(dm, prime)


def _matrix_in_basis(tb, y1, y2):
    """Frobenius on span(y1, y2) by exhaustive search over A/a-combinations."""
    p = tb.E.p
    combos = {}
    for i, A1 in tb.action.items():
        v1 = (A1 @ y1) % p
        for j, A2 in tb.action.items():
            combos.setdefault(tuple(((v1 + A2 @ y2) % p).tolist()), (i, j))
    if len(combos) != tb.ring.size ** 2:
        raise ValueError("the given points do not form an A/a-basis")
    cols = [combos[tuple(((tb.frob_action @ y) % p).tolist())] for y in (y1, y2)]
    ring = tb.ring
    (a11, a21), (a12, a22) = [(ring.element(i), ring.element(j)) for i, j in cols]
    return a11, a12, a21, a22


def frob_matrix(dm, prime, level, composite=False, basis=None):
    """Frobenius at prime acting on the level-torsion, in A/level coordinates.

    ``basis`` optionally names two kernel points (indices into the canonical
    point list) to use instead of the default basis.
    """
    red = _reduced(dm, prime)
    tb = torsion_basis(red, level, composite=composite)
    if basis is None:
        y1, y2 = tb.basis_coords
    else:
        pts = sorted(tb.lookup, key=lambda y: tb.E.encode((np.array(y) @ tb.span) % tb.E.p))
        y1, y2 = (np.array(pts[i], dtype=np.int64) for i in basis)
    a11, a12, a21, a22 = _matrix_in_basis(tb, y1, y2)
    m = level.gen
    tr = (a11 + a22) % m
    det = (a11 * a22 - a12 * a21) % m
    if not tb.ring.is_unit(det):
        raise InternalConsistencyError("Frobenius matrix is not invertible")
    return FrobSample(prime, level, ((a11, a12), (a21, a22)), tr, det)


@dataclass(frozen=True)
class FrobPoly:
    """x^2 - a*x + b, the Frobenius polynomial at a prime of good reduction."""

    prime: AIdeal
    degree: int
    trace: APoly
    constant: APoly

    def xpoly(self):
        F = self.trace.F
        return XPoly(F, [self.constant, -self.trace, APoly.const(F, 1)])

    def reduce(self, ideal):
        """(c0, c1, c2) coefficients of the polynomial reduced mod the ideal."""
        m = ideal.gen
        F = self.trace.F
        return (self.constant % m, (-self.trace) % m, APoly.const(F, 1))

    def check_invariants(self):
        F = self.trace.F
        d = self.degree
        if self.constant.deg != d or not (self.constant.monic() == self.prime.gen):
            raise InternalConsistencyError(f"constant term {self.constant} does not generate {self.prime}")
        # Weil bound: with deg b = d, both roots have |.|_inf = q^(d/2) iff 2 deg a <= d
        if 2 * self.trace.deg > d:
            raise InternalConsistencyError(f"trace {self.trace} violates the Weil bound for degree {d}")
        return True

    def __str__(self):
        return str(self.xpoly())

    def as_dict(self):
        return {"prime": str(self.prime), "degree": self.degree,
                "trace": str(self.trace), "constant": str(self.constant)}


def _crt_levels(F, prime, total_degree):
    """Pairwise coprime prime-power levels of small norm, avoiding the prime."""
    primes = []
    deg = 1
    while F.q ** deg <= COMPOSITE_LEVEL_CAP:
        primes.extend(P for P in primes_of_degree(F, deg) if P != prime)
        deg += 1
    exps = {}
    covered = 0
    while covered < total_degree:
        best = None
        for P in primes:
            k = exps.get(P, 0) + 1
            norm = P.norm ** k
            if norm > COMPOSITE_LEVEL_CAP:
                continue
            key = (norm, P.gen.sort_key())
            if best is None or key < best[0]:
                best = (key, P)
        if best is None:
            raise RuntimeError("not enough small levels for the trace reconstruction")
        P = best[1]
        exps[P] = exps.get(P, 0) + 1
        covered += P.degree
    return [P ** k for P, k in sorted(exps.items(), key=lambda kv: kv[0].gen.sort_key())]


def _crt(residues):
    """Solve x = r_i mod m_i for pairwise coprime m_i; returns (x, prod m_i)."""
    x, M = residues[0]
    for r, m in residues[1:]:
        # x + M*s = r mod m
        s = ((r - x) * inverse_mod(M % m, m)) % m
        x, M = x + M * s, M * m
        x = x % M
    return x, M


def frob_charpoly_exact(dm, prime, method="crt"):
    """Exact Frobenius polynomial in A[x] at a prime of good reduction."""
    if method == "crt":
        fp = _charpoly_crt(dm, prime)
    elif method == "skew":
        fp = _charpoly_skew(dm, prime)
    else:
        raise ValueError(f"unknown method {method!r}")
    fp.check_invariants()
    if not verify_frobenius_relation(dm, fp):
        raise InternalConsistencyError(f"Frobenius relation fails for {fp} at {prime}")
    return fp


def _charpoly_crt(dm, prime):
    F = dm.F
    d = prime.degree
    levels = _crt_levels(F, prime, d // 2 + 1)
    samples = [frob_matrix(dm, prime, lv, composite=True) for lv in levels]
    first = samples[0]
    m1 = first.level.gen
    u = (first.det * inverse_mod(prime.gen % m1, m1)) % m1
    if u.deg > 0 or not u:
        raise InternalConsistencyError(f"det {first.det} is not a unit times the prime")
    b = prime.gen * u
    for s in samples[1:]:
        if (s.det - b) % s.level.gen:
            raise InternalConsistencyError("unit in the constant term differs between levels")
    a, M = _crt([(s.trace, s.level.gen) for s in samples])
    return FrobPoly(prime, d, a, b)


def _charpoly_skew(dm, prime):
    """Solve tau^2d - phi_a tau^d + u phi_pi = 0 for (a, u) by linear algebra over F_p."""
    red = _reduced(dm, prime)
    F = dm.F
    p, e = F.p, F.e
    d = prime.degree
    h = d // 2
    K = red.K
    pi = prime.gen
    # unknowns: a_k (k <= h) and u, each an F_q scalar expanded over F_p
    basis_ops = [red.phi_of(APoly.monomial(F, k)).shift(d) for k in range(h + 1)]
    basis_ops.append(red.phi_of(pi))
    target = SkewPoly.tau(K, 2 * d)
    length = 2 * d + 1

    def flatten(f):
        vec = []
        for i in range(length):
            c = f.coeff(i)
            for kk in range(d):
                vec.extend(F.digits(c.coeff(kk)))
        return vec

    cols = []
    for op in basis_ops:
        for j in range(e):
            g = APoly.const(F, F.pow(F.gen, j))
            cols.append(flatten(op.scale_left(K(g))))
    A = np.array(cols, dtype=np.int64).T
    x = linalg.solve(A, np.array(flatten(target), dtype=np.int64), p)
    if x is None:
        raise InternalConsistencyError(f"no Frobenius relation of the expected shape at {prime}")

    def scalar(block):
        val = 0
        for j, dgt in enumerate(block):
            val += int(dgt) * p ** j
        return val

    coeffs = [scalar(x[e * k: e * (k + 1)]) for k in range(h + 2)]
    a = APoly(F, coeffs[: h + 1])
    u = coeffs[h + 1]
    # relation was tau^2d = phi_a tau^d - u phi_pi, so b = -u * pi
    b = pi.scale(F.neg(u))
    if not b:
        raise InternalConsistencyError("vanishing constant term")
    return FrobPoly(prime, d, a, b)


def verify_frobenius_relation(dm, fp):
    """Check pi^2 - phi_a pi + phi_b = 0 in End(reduced module), pi = tau^d."""
    red = _reduced(dm, fp.prime)
    d = fp.degree
    K = red.K
    lhs = SkewPoly.tau(K, 2 * d) - red.phi_of(fp.trace).shift(d) + red.phi_of(fp.constant)
    return not lhs


@dataclass(frozen=True)
class IrreducibilityBound:
    bound: int
    primes: tuple
    n: int
    degree: int
    n_rule: str


def auto_exponent(dm):
    """n = 1 when the determinant character is unramified as in the worked examples."""
    from .drinfeld import STABLE_RANK1, bad_primes
    from .algebra.ideal import valuation
    from .algebra.factor import prime_divisors
    q = dm.q
    default = (q - 1) ** 2 * (q + 1)
    bad = bad_primes(dm)
    if len(bad) != 1:
        return default, "default: not exactly one bad prime"
    if reduction_type(dm, bad[0]).kind != STABLE_RANK1:
        return default, "default: bad prime is not stable of rank 1"
    a2 = dm.coeffs[2]
    support = [g for part in (a2.num, a2.den) if part.deg > 0 for g in prime_divisors(part)]
    for g in support:
        if valuation(a2, AIdeal(g)) % (q - 1):
            return default, "default: (q-1) does not divide every valuation of a2"
    return 1, "n=1: one bad prime, stable of rank 1, a2 a (q-1)-th power up to units"


def irreducibility_bound(dm, n=None, max_degree=8):
    """B = 2nd from the smallest degree d carrying two primes of good reduction."""
    if not dm.is_generic or dm.rank != 2:
        raise ValueError("needs a global rank-2 module")
    if n is None:
        n, rule = auto_exponent(dm)
    else:
        rule = "given"
    for d in range(1, max_degree + 1):
        good = [P for P in primes_of_degree(dm.F, d) if reduction_type(dm, P).kind == GOOD]
        if len(good) >= 2:
            bound = 2 * n * d
            if rule.startswith("n=1") and dm.q != 2:
                # with q > 2 the n = 1 argument does not cover lambda equal to the bad prime,
                # so that prime must fall in the explicitly checked range
                from .drinfeld import bad_primes
                if any(P.degree > bound for P in bad_primes(dm)):
                    n = (dm.q - 1) ** 2 * (dm.q + 1)
                    rule = "default: bad prime lies beyond the n=1 bound"
                    bound = 2 * n * d
            return IrreducibilityBound(bound, (good[0], good[1]), n, d, rule)
    return None


__all__ = ["TorsionBasis", "FrobSample", "FrobPoly", "IrreducibilityBound", "torsion_basis",
           "frob_matrix", "frob_charpoly_exact", "power_poly", "irreducibility_bound",
           "frobenius_order", "verify_frobenius_relation", "InternalConsistencyError",
           "auto_exponent"]
