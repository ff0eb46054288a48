"""Polynomials in t over a finite field, plus the text grammar used by the CLI."""

import re

from .field import GF


class APoly:
    """Element of F_q[t]; coefficients stored low degree first, trimmed."""

    __slots__ = ("F", "c", "_hash")

    def __init__(self, F, coeffs=()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.F = F
        self.c = tuple(c)
        self._hash = None

    # construction helpers
    @classmethod
    def t(cls, F):
        return cls(F, (0, 1))

    @classmethod
    def const(cls, F, a):
        return cls(F, (a,))

    @classmethod
    def monomial(cls, F, k, a=1):
        return cls(F, (0,) * k + (a,))

    @classmethod
    def from_index(cls, F, n):
        """Inverse of ``index``: the base-q digits of n are the coefficients."""
        q, out = F.q, []
        while n:
            n, r = divmod(n, q)
            out.append(r)
        return cls(F, out)

    def index(self):
        q, n = self.F.q, 0
        for a in reversed(self.c):
            n = n * q + a
        return n

    # basic data
    @property
    def deg(self):
        """Degree, with -1 standing for the zero polynomial."""
        return len(self.c) - 1

    @property
    def lc(self):
        return self.c[-1] if self.c else 0

    def __bool__(self):
        return bool(self.c)

    def is_one(self):
        return self.c == (1,)

    def is_monic(self):
        return self.lc == 1

    def coeff(self, k):
        return self.c[k] if 0 <= k < len(self.c) else 0

    def __eq__(self, other):
        if isinstance(other, int):
            return self.c == ((other % self.F.p,) if other % self.F.p else ())
        return isinstance(other, APoly) and self.c == other.c and self.F == other.F

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.c)
        return self._hash

    def sort_key(self):
        """Canonical order: by degree, then coefficients from the top down."""
        return (self.deg, self.c[::-1])

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    # ring operations
    def _coerce(self, other):
        if isinstance(other, APoly):
            return other
        if isinstance(other, int):
            return APoly(self.F, (self.F.from_int(other),))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        add = self.F._add
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = add[out[i]][x]
        return APoly(self.F, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.F._neg
        return APoly(self.F, [neg[x] for x in self.c])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.c, other.c
        if not a or not b:
            return APoly(self.F)
        add, mul = self.F._add, self.F._mul
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                row = mul[x]
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add[out[i + j]][row[y]]
        return APoly(self.F, out)

    __rmul__ = __mul__

    def scale(self, a):
        row = self.F._mul[a]
        return APoly(self.F, [row[x] for x in self.c])

    def monic(self):
        if not self.c:
            raise ZeroDivisionError("zero polynomial has no monic associate")
        return self.scale(self.F.inv(self.lc))

    def __divmod__(self, other):
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.F
        add, mul, neg = F._add, F._mul, F._neg
        r = list(self.c)
        b = other.c
        db = len(b) - 1
        inv = F.inv(b[-1])
        if len(r) <= db:
            return APoly(F), APoly(F, r)
        quo = [0] * (len(r) - db)
        for s in range(len(r) - 1 - db, -1, -1):
            x = r[s + db]
            if x:
                f = mul[x][inv]
                quo[s] = f
                nf = neg[f]
                row = mul[nf]
                for i, y in enumerate(b):
                    if y:
                        r[s + i] = add[r[s + i]][row[y]]
        return APoly(F, quo), APoly(F, r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = APoly(self.F, (1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def powmod(self, n, m):
        result, base = APoly(self.F, (1,)) % m, self % m
        while n:
            if n & 1:
                result = (result * base) % m
            base = (base * base) % m
            n >>= 1
        return result

    def derivative(self):
        F = self.F
        return APoly(F, [F.mul(F.from_int(k), a) for k, a in enumerate(self.c)][1:])

    def __call__(self, x):
        """Evaluate at a field element."""
        add, mul = self.F._add, self.F._mul
        acc = 0
        for a in reversed(self.c):
            acc = add[mul[acc][x]][a]
        return acc

    def evaluate(self, x, add, mul, embed):
        """Horner evaluation in an arbitrary commutative ring given its operations."""
        acc = embed(0)
        for a in reversed(self.c):
            acc = add(mul(acc, x), embed(a))
        return acc

    def frobenius(self, i=1):
        """Raise to the power q^i; coefficients are fixed since they lie in F_q."""
        step = self.F.q ** i
        out = [0] * (step * (len(self.c) - 1) + 1) if self.c else []
        for k, a in enumerate(self.c):
            out[k * step] = a
        return APoly(self.F, out)

    def pth_root(self):
        """g with g^p = self, assuming self is a polynomial in t^p."""
        F = self.F
        p = F.p
        if any(a for k, a in enumerate(self.c) if k % p):
            raise ValueError("not a p-th power")
        # c -> c^(1/p) = c^(q/p) in F_q
        return APoly(F, [F.pow(a, F.q // p) for a in self.c[::p]])

    def __repr__(self):
        return f"APoly({format_poly(self)!r}, q={self.F.q})"

    def __str__(self):
        return format_poly(self)


def gcd(a, b):
    """Monic gcd (zero when both inputs are zero)."""
    while b:
        a, b = b, a % b
    return a.monic() if a else a


def xgcd(a, b):
    """Return (g, s, u) with s*a + u*b = g monic."""
    F = a.F
    r0, r1 = a, b
    s0, s1 = APoly(F, (1,)), APoly(F)
    u0, u1 = APoly(F), APoly(F, (1,))
    while r1:
        qt, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qt * s1
        u0, u1 = u1, u0 - qt * u1
    if not r0:
        return r0, s0, u0
    k = F.inv(r0.lc)
    return r0.scale(k), s0.scale(k), u0.scale(k)


def inverse_mod(a, m):
    g, s, _ = xgcd(a % m, m)
    if not g.is_one():
        raise ZeroDivisionError(f"{a} is not invertible modulo {m}")
    return s % m


def is_irreducible(f):
    """Rabin's test over F_q."""
    if f.deg < 1:
        return False
    if f.deg == 1:
        return True
    F = f.F
    n = f.deg
    t = APoly.t(F)
    m = f.monic()

    def frob_power(k):
        return t.powmod(F.q ** k, m)

    if frob_power(n) != t % m:
        return False
    for r in _prime_factors(n):
        h = frob_power(n // r) - t
        if not gcd(m, h).is_one():
            return False
    return True


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- text grammar -----------------------------------------------------------

def _coeff_str(F, a, k):
    s = F.to_str(a)
    if k == 0:
        return s
    if a == 1:
        return ""
    return s if F.is_monomial_str(a) else f"({s})"


def format_poly(f, var="t"):
    if not f.c:
        return "0"
    terms = []
    for k in range(len(f.c) - 1, -1, -1):
        a = f.c[k]
        if not a:
            continue
        if k == 0:
            terms.append(f.F.to_str(a))
            continue
        mono = var if k == 1 else f"{var}^{k}"
        cs = _coeff_str(f.F, a, k)
        terms.append(f"{cs}*{mono}" if cs else mono)
    return "+".join(terms)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


class _Parser:
    """Recursive descent over + - * ^ ( ) with implicit multiplication."""

    def __init__(self, text, F, var, gen_symbol):
        self.toks = []
        for num, name, op in _TOKEN.findall(text):
            if num:
                self.toks.append(("num", int(num)))
            elif name:
                self.toks.append(("name", name))
            elif op:
                self.toks.append(("op", op))
        self.i = 0
        self.F = F
        self.var = var
        self.gen_symbol = gen_symbol

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ValueError("empty polynomial")
        val = self.expr()
        if self.i != len(self.toks):
            raise ValueError(f"unexpected token {self.peek()[1]!r}")
        return val

    def expr(self):
        kind, v = self.peek()
        sign = 1
        if kind == "op" and v in "+-":
            self.take()
            sign = -1 if v == "-" else 1
        val = self.term()
        if sign < 0:
            val = -val
        while True:
            kind, v = self.peek()
            if kind == "op" and v in "+-":
                self.take()
                rhs = self.term()
                val = val + rhs if v == "+" else val - rhs
            else:
                return val

    def term(self):
        val = self.power()
        while True:
            kind, v = self.peek()
            if kind == "op" and v == "*":
                self.take()
                val = val * self.power()
            elif kind in ("num", "name") or (kind == "op" and v == "("):
                val = val * self.power()
            else:
                return val

    def power(self):
        base = self.atom()
        kind, v = self.peek()
        if kind == "op" and v == "^":
            self.take()
            kind, n = self.take()
            if kind != "num":
                raise ValueError("exponent must be a nonnegative integer")
            return base ** n
        return base

    def atom(self):
        kind, v = self.take()
        F = self.F
        if kind == "num":
            return APoly.const(F, F.from_int(v))
        if kind == "name":
            if v == self.var:
                return APoly.t(F)
            if v == self.gen_symbol and F.e > 1:
                return APoly.const(F, F.gen)
            raise ValueError(f"unknown symbol {v!r}")
        if kind == "op" and v == "(":
            val = self.expr()
            kind, v = self.take()
            if v != ")":
                raise ValueError("unbalanced parentheses")
            return val
        raise ValueError(f"unexpected token {v!r}")


def parse_poly(text, F, var="t"):
    """Parse the polynomial grammar into an APoly over F."""
    return _Parser(text, F, var, F.spec.symbol).parse()


def parse_field_element(text, F):
    f = parse_poly(text, F)
    if f.deg > 0:
        raise ValueError(f"{text!r} is not a constant")
    return f.coeff(0)


def polys_of_degree_at_most(F, d):
    """All polynomials of degree <= d, in index order (q^(d+1) of them)."""
    return [APoly.from_index(F, n) for n in range(F.q ** (d + 1))]


def monic_polys_of_degree(F, d):
    base = F.q ** d
    return [APoly.from_index(F, base + n) for n in range(base)]


__all__ = ["APoly", "GF", "gcd", "xgcd", "inverse_mod", "is_irreducible", "format_poly",
           "parse_poly", "parse_field_element", "polys_of_degree_at_most",
           "monic_polys_of_degree"]
