"""Finite matrix groups in GL_2(A/a): closure, commutators, filtrations and group criteria.

Matrices are stored as 4-tuples (a, b, c, d) of element indices of A/a, so
that products reduce to table lookups.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .algebra.ideal import AIdeal
from .algebra.poly import APoly
from .algebra.quotient import QuotientRing

DEFAULT_CAP = 4096


class GroupTooLarge(RuntimeError):
    """Materializing a group would exceed the configured element cap."""


class _MatrixAlgebra:
    """2x2 matrix arithmetic over A/a on index tuples."""

    def __init__(self, ideal):
        self.ideal = ideal
        self.ring = QuotientRing(ideal)
        self.n = self.ring.size
        self.add, self.mul_t, self.neg, self.inv_t = self.ring.tables()
        self.identity = (1, 0, 0, 1) if self.n > 1 else (0, 0, 0, 0)

    def mul(self, x, y):
        a, b, c, d = x
        e, f, g, h = y
        add, mul = self.add, self.mul_t
        return (add[mul[a][e]][mul[b][g]], add[mul[a][f]][mul[b][h]],
                add[mul[c][e]][mul[d][g]], add[mul[c][f]][mul[d][h]])

    def det(self, x):
        a, b, c, d = x
        return self.add[self.mul_t[a][d]][self.neg[self.mul_t[b][c]]]

    def inv(self, x):
        a, b, c, d = x
        di = self.inv_t[self.det(x)]
        if di is None:
            raise ValueError("matrix is not invertible")
        m = self.mul_t[di]
        return (m[d], m[self.neg[b]], m[self.neg[c]], m[a])

    def is_invertible(self, x):
        return self.inv_t[self.det(x)] is not None

    def commutator(self, x, y):
        return self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)))

    def conj(self, g, x):
        return self.mul(self.mul(g, x), self.inv(g))

    def poly(self, i):
        return self.ring.element(i)

    def index(self, a):
        return (a % self.ideal.gen).index()


@lru_cache(maxsize=64)
def _algebra(ideal):
    return _MatrixAlgebra(ideal)


@dataclass(frozen=True)
class QuotMat:
    """A 2x2 matrix over A/a."""

    ideal: AIdeal
    entries: tuple

    @classmethod
    def from_polys(cls, ideal, rows):
        alg = _algebra(ideal)
        (a, b), (c, d) = rows
        return cls(ideal, tuple(alg.index(_as_poly(ideal.F, x)) for x in (a, b, c, d)))

    @property
    def polys(self):
        alg = _algebra(self.ideal)
        return tuple(alg.poly(i) for i in self.entries)

    @property
    def det(self):
        alg = _algebra(self.ideal)
        return alg.poly(alg.det(self.entries))

    def is_invertible(self):
        return _algebra(self.ideal).is_invertible(self.entries)

    def __mul__(self, other):
        return QuotMat(self.ideal, _algebra(self.ideal).mul(self.entries, other.entries))

    def inverse(self):
        return QuotMat(self.ideal, _algebra(self.ideal).inv(self.entries))

    def reduce(self, ideal):
        """Image modulo a divisor of the modulus."""
        if not ideal.divides(self.ideal):
            raise ValueError(f"{ideal} does not divide {self.ideal}")
        return QuotMat.from_polys(ideal, _rows(self.polys))

    def __str__(self):
        a, b, c, d = self.polys
        return f"[[{a},{b}],[{c},{d}]]"


def _as_poly(F, x):
    return x if isinstance(x, APoly) else APoly.const(F, F.from_int(x))


def _rows(p):
    return ((p[0], p[1]), (p[2], p[3]))


class MatGroup:
    """Subgroup of GL_2(A/a) given by generators; elements materialize on demand."""

    def __init__(self, ideal, gens, cap=DEFAULT_CAP):
        self.ideal = ideal
        self.alg = _algebra(ideal)
        gens = [g.entries if isinstance(g, QuotMat) else tuple(g) for g in gens]
        for g in gens:
            if not self.alg.is_invertible(g):
                raise ValueError("generators must be invertible")
        self.gens = tuple(dict.fromkeys(gens))
        self.cap = cap
        self._elements = None

    @classmethod
    def from_elements(cls, ideal, elements, cap=DEFAULT_CAP):
        """A group whose full element set is already known (must be closed)."""
        G = cls(ideal, [], cap)
        G._elements = frozenset(elements) | {G.alg.identity}
        G.gens = tuple(sorted(G._elements))
        return G

    @property
    def elements(self):
        if self._elements is None:
            self._elements = frozenset(_close(self.alg, self.gens, self.cap))
        return self._elements

    @property
    def order(self):
        return len(self.elements)

    def __contains__(self, x):
        x = x.entries if isinstance(x, QuotMat) else tuple(x)
        return x in self.elements

    def sorted_elements(self):
        return sorted(self.elements)

    def is_subgroup_of(self, other):
        return all(g in other.elements for g in self.gens)

    def same_as(self, other):
        return self.ideal == other.ideal and self.elements == other.elements

    def det_image(self):
        """Indices of det(G) inside (A/a)^x."""
        return frozenset(self.alg.det(g) for g in self.elements)

    def reduce(self, ideal):
        """Image of G modulo a divisor of the modulus."""
        red = _reduction_map(self.ideal, ideal)
        return MatGroup.from_elements(ideal, {tuple(red[i] for i in g) for g in self.elements},
                                      self.cap)

    def __repr__(self):
        state = f"order {len(self._elements)}" if self._elements is not None else "lazy"
        return f"MatGroup(mod {self.ideal}, {len(self.gens)} gens, {state})"


def _close(alg, gens, cap):
    """Elements of the group generated by gens, adding generators one at a time."""
    elems = {alg.identity}
    accepted = []
    for g in gens:
        if g in elems:
            continue
        accepted.append(g)
        frontier = list(elems)
        while frontier:
            new = []
            for x in frontier:
                for s in accepted:
                    y = alg.mul(x, s)
                    if y not in elems:
                        elems.add(y)
                        new.append(y)
                        if len(elems) > cap:
                            raise GroupTooLarge(f"group exceeds the cap of {cap} elements")
            frontier = new
    return elems


@lru_cache(maxsize=64)
def _reduction_map(big, small):
    if not small.divides(big):
        raise ValueError(f"{small} does not divide {big}")
    R = QuotientRing(big)
    return tuple((R.element(i) % small.gen).index() for i in range(R.size))


def closure(gens, ideal=None, cap=DEFAULT_CAP):
    """The subgroup generated by gens, materialized."""
    if ideal is None:
        if not gens:
            raise ValueError("need an ideal when there are no generators")
        ideal = gens[0].ideal
    G = MatGroup(ideal, gens, cap)
    G.elements
    return G


def commutator_subgroup(G):
    """[G, G]: normal closure of the commutators of generators."""
    alg = G.alg
    gens = G.gens
    comms = {alg.commutator(x, y) for x in gens for y in gens} - {alg.identity}
    if not comms:
        return MatGroup.from_elements(G.ideal, [], G.cap)
    conj = {alg.conj(g, c) for c in comms for g in G.elements}
    H = MatGroup(G.ideal, sorted(conj), G.cap)
    H.elements
    return H


# --- standard groups --------------------------------------------------------

def _additive_generators(ideal):
    """Monomials c * t^k with c running over an F_p-basis of F_q."""
    F = ideal.F
    basis = [F.pow(F.gen, j) for j in range(F.e)] if F.e > 1 else [1]
    return [APoly.monomial(F, k, c) for k in range(ideal.degree) for c in basis]


def _unit_generators(ideal):
    R = QuotientRing(ideal)
    return [u for u in R.units()]


def _elementary(ideal):
    F = ideal.F
    one, zero = APoly.const(F, 1), APoly(F)
    out = []
    for b in _additive_generators(ideal):
        out.append(QuotMat.from_polys(ideal, ((one, b), (zero, one))))
        out.append(QuotMat.from_polys(ideal, ((one, zero), (b, one))))
    return out


def sl2(ideal, cap=DEFAULT_CAP):
    """SL_2(A/a), generated by elementary matrices."""
    return MatGroup(ideal, _elementary(ideal), cap)


def gl2(ideal, cap=DEFAULT_CAP):
    """GL_2(A/a) = SL_2 extended by diag(u, 1)."""
    F = ideal.F
    one, zero = APoly.const(F, 1), APoly(F)
    diag = [QuotMat.from_polys(ideal, ((u, zero), (zero, one))) for u in _unit_generators(ideal)]
    return MatGroup(ideal, _elementary(ideal) + diag, cap)


def borel(ideal, cap=DEFAULT_CAP):
    """Upper triangular matrices."""
    F = ideal.F
    one, zero = APoly.const(F, 1), APoly(F)
    gens = [QuotMat.from_polys(ideal, ((one, b), (zero, one))) for b in _additive_generators(ideal)]
    for u in _unit_generators(ideal):
        gens.append(QuotMat.from_polys(ideal, ((u, zero), (zero, one))))
        gens.append(QuotMat.from_polys(ideal, ((one, zero), (zero, u))))
    return MatGroup(ideal, gens, cap)


def torus(ideal, cap=DEFAULT_CAP):
    """Diagonal matrices."""
    F = ideal.F
    one, zero = APoly.const(F, 1), APoly(F)
    gens = []
    for u in _unit_generators(ideal):
        gens.append(QuotMat.from_polys(ideal, ((u, zero), (zero, one))))
        gens.append(QuotMat.from_polys(ideal, ((one, zero), (zero, u))))
    return MatGroup(ideal, gens, cap)


def gl2_order(ideal):
    """|GL_2(A/a)| from the prime factorization of a."""
    n = 1
    for P, k in ideal.factor():
        N = P.norm
        n *= N ** (4 * (k - 1)) * (N * N - 1) * (N * N - N)
    return n


def sl2_order(ideal):
    n = 1
    for P, k in ideal.factor():
        N = P.norm
        n *= N ** (3 * (k - 1)) * N * (N * N - 1)
    return n


# --- criteria over a finite field -------------------------------------------

def _lines(alg):
    """Representatives of the N+1 lines of F^2: (1, x) and (0, 1)."""
    return [(1, x) for x in range(alg.n)] + [(0, 1)]


def _apply(alg, g, v):
    a, b, c, d = g
    add, mul = alg.add, alg.mul_t
    return (add[mul[a][v[0]]][mul[b][v[1]]], add[mul[c][v[0]]][mul[d][v[1]]])


def _same_line(alg, v, w):
    # v, w nonzero; proportional iff the 2x2 determinant vanishes
    return alg.add[alg.mul_t[v[0]][w[1]]][alg.neg[alg.mul_t[v[1]][w[0]]]] == 0


def stable_lines(G):
    """Lines of F^2 fixed by every generator of G (modulus must be prime)."""
    alg = G.alg
    return [v for v in _lines(alg)
            if all(_same_line(alg, v, _apply(alg, g, v)) for g in G.gens)]


def is_irreducible_action(G):
    return not stable_lines(G)


def contains_sl2_modl(G):
    """Irreducible action plus a subgroup of order |F| (Sylow count), which forces SL_2."""
    if not G.ideal.is_prime():
        raise ValueError("contains_sl2_modl needs a prime modulus")
    N = G.ideal.norm
    return is_irreducible_action(G) and G.order % N == 0


def contains_sl2_exhaustive(G):
    return sl2(G.ideal, G.cap).is_subgroup_of(G)


# --- filtration -------------------------------------------------------------

def _trace_zero(alg):
    return frozenset(x for x in product(range(alg.n), repeat=4) if alg.add[x[0]][x[3]] == 0)


def _full_space(alg):
    return frozenset(product(range(alg.n), repeat=4))


@dataclass
class Filtration:
    """Level-by-level images of a group modulo lambda^k."""

    prime: AIdeal
    level: int
    reduction: MatGroup                       # G mod lambda
    layers: dict                              # i -> G^[i] as nu_i-images (g_i)
    commutator_layers: dict                   # i -> h_i

    def g(self, i):
        return self.layers[i]

    def h(self, i):
        return self.commutator_layers[i]

    def is_full(self, i):
        return self.layers[i] == _full_space(_algebra(self.prime))

    def is_trace_zero(self, i, which="g"):
        space = self.layers[i] if which == "g" else self.commutator_layers[i]
        return space == _trace_zero(_algebra(self.prime))


def _nu_layers(G, prime, k):
    """For 1 <= i < k: {(g - I)/pi^i mod lambda : g in G, g = I mod lambda^i}."""
    alg = G.alg
    small = _algebra(prime)
    pi = prime.gen
    out = {i: set() for i in range(1, k)}
    ident = [1, 0, 0, 1]
    for g in G.elements:
        diff = [alg.poly(x) - APoly.const(prime.F, e) for x, e in zip(g, ident)]
        for i in range(1, k):
            pi_i = pi ** i
            if any(d % pi_i for d in diff):
                break
            out[i].add(tuple(small.index(d // pi_i) for d in diff))
    return {i: frozenset(v) for i, v in out.items()}


def filtration(G, prime=None):
    """The filtration of G modulo lambda^k (k >= 2) and of its commutator subgroup."""
    ideal = G.ideal
    if prime is None:
        fac = ideal.factor()
        if len(fac) != 1:
            raise ValueError("filtration needs a prime-power modulus")
        prime, k = fac[0]
    else:
        k = 0
        while (prime ** (k + 1)).divides(ideal) and (prime ** (k + 1)).degree <= ideal.degree:
            k += 1
        if prime ** k != ideal:
            raise ValueError(f"{ideal} is not a power of {prime}")
    if k < 2:
        raise ValueError("filtration needs level k >= 2")
    H = commutator_subgroup(G)
    return Filtration(prime, k, G.reduce(prime), _nu_layers(G, prime, k), _nu_layers(H, prime, k))


# --- the full-GL_2 criterion at level lambda^2 ------------------------------

CONDITIONS = ("a", "b", "c", "d", "e")


@dataclass
class FullGL2Evidence:
    """Witness-level evidence: each condition True, False or None (unknown)."""

    norm: int
    a: object = None
    b: object = None
    c: object = None
    d: object = None
    e: object = None
    sources: dict = None


@dataclass
class FullGL2Report:
    norm: int
    conditions: dict        # name -> True / False / None, or "n/a"
    verdict: object         # True, False, or None (inconclusive)
    mode: str

    def as_dict(self):
        return {"norm": self.norm, "mode": self.mode, "conditions": dict(self.conditions),
                "verdict": self.verdict}


def _needed(norm):
    return ("a", "b", "c") if norm > 2 else ("a", "b", "d", "e")


def _verdict(conds, norm):
    vals = [conds[k] for k in _needed(norm)]
    if any(v is False for v in vals):
        return False
    if all(v is True for v in vals):
        return True
    return None


def full_gl2_criterion(evidence, prime=None):
    """Check the full-GL_2(R) criterion from a group mod lambda^2 or from witnesses."""
    if isinstance(evidence, FullGL2Evidence):
        norm = evidence.norm
        conds = {k: getattr(evidence, k) for k in CONDITIONS}
        for k in CONDITIONS:
            if k not in _needed(norm):
                conds[k] = "n/a"
        return FullGL2Report(norm, conds, _verdict(conds, norm), "certificate")
    G = evidence
    if prime is None:
        fac = G.ideal.factor()
        if len(fac) != 1 or fac[0][1] != 2:
            raise ValueError("exhaustive mode needs a group modulo lambda^2")
        prime = fac[0][0]
    norm = prime.norm
    alg = G.alg
    R = alg.ring
    units = {R.index(u) for u in R.units()}
    conds = {}
    conds["a"] = G.det_image() == units
    Gbar = G.reduce(prime)
    conds["b"] = Gbar.order == gl2_order(prime)
    if norm > 2:
        layer = _nu_layers(G, prime, 2)[1]
        small = _algebra(prime)
        conds["c"] = any(not _is_scalar(small, B) for B in layer)
        conds["d"] = conds["e"] = "n/a"
    else:
        conds["c"] = "n/a"
        conds["d"] = G.order == gl2_order(G.ideal)
        red = _reduction_map(G.ideal, prime)
        small = _algebra(prime)
        conds["e"] = any(alg.det(g) == 1 and _order(small, tuple(red[i] for i in g)) == 2
                         for g in G.elements)
    verdict = _verdict(conds, norm)
    if verdict and G.order != gl2_order(G.ideal):
        raise RuntimeError("criterion holds but the group mod lambda^2 is not full")
    return FullGL2Report(norm, conds, verdict, "exhaustive")


def _is_scalar(alg, B):
    a, b, c, d = B
    return b == 0 and c == 0 and a == d


def _order(alg, g):
    k, x = 1, g
    while x != alg.identity:
        x = alg.mul(x, g)
        k += 1
    return k


# --- the q = 2 abelianization map -------------------------------------------

def gl2_f2_sign(alg, g):
    """Sign of g in GL_2(F_2) = S_3 acting on the three nonzero vectors."""
    vecs = [(1, 0), (0, 1), (1, 1)]
    perm = [vecs.index(_apply(alg, g, v)) for v in vecs]
    inversions = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def beta(G_ideal, g):
    """(det g, gamma_i(g) for each degree-1 prime (t+i) dividing the modulus), q = 2."""
    alg = _algebra(G_ideal)
    F = G_ideal.F
    if F.q != 2:
        raise ValueError("beta is defined for q = 2")
    out = [alg.det(g)]
    for i in (0, 1):
        P = AIdeal(APoly(F, (i, 1)))
        if P.divides(G_ideal):
            red = _reduction_map(G_ideal, P)
            out.append(gl2_f2_sign(_algebra(P), tuple(red[x] for x in g)))
    return tuple(out)


def beta_kernel(ideal, cap=DEFAULT_CAP):
    """{B in GL_2(A/a) : det B = 1 and every gamma_i(B) = 1}."""
    G = gl2(ideal, cap)
    return MatGroup.from_elements(
        ideal, [g for g in G.elements if all(x == 1 for x in beta(ideal, g))], cap)


# --- parsing ----------------------------------------------------------------

def parse_matrix(text, ideal):
    """``[[a,b],[c,d]]`` with entries in the polynomial grammar."""
    from .algebra.poly import parse_poly
    s = text.strip().replace(" ", "")
    if not (s.startswith("[[") and s.endswith("]]")):
        raise ValueError(f"bad matrix {text!r}")
    rows = s[2:-2].split("],[")
    if len(rows) != 2:
        raise ValueError(f"bad matrix {text!r}")
    entries = []
    for row in rows:
        parts = _split_top(row)
        if len(parts) != 2:
            raise ValueError(f"bad matrix row {row!r}")
        entries.append(tuple(parse_poly(p, ideal.F) for p in parts))
    return QuotMat.from_polys(ideal, entries)


def _split_top(s):
    depth, out, cur = 0, [], ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return out
