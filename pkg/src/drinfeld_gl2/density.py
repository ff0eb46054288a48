"""Exact enumeration and seeded sampling over A^2(d), with CSV reporting.

A(d) is the set of polynomials of degree at most d, so |A^2(d)| = q^(2(d+1)).
Sampling draws coefficient vectors from per-sample Philox streams spawned
from one master seed, so merged counts do not depend on how work is sharded.
"""

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra.field import gf
from .algebra.ideal import AIdeal
from .algebra.factor import factor_poly
from .algebra.poly import APoly
from .drinfeld import DrinfeldModule

EXACT_CAP = 10 ** 8
CSV_HEADER = ("set", "q", "d", "mode", "count", "total", "ratio")
SET_NAMES = ("R", "S_m", "T_m", "C", "ModLFullCertified", "DetIndexEquals")


class ResourceCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SetDescriptor:
    name: str
    q: int
    m: int = 2
    prime: str = None          # generator text of lambda for ModLFullCertified
    index: int = 1             # k for DetIndexEquals

    def __post_init__(self):
        if self.name not in SET_NAMES:
            raise ValueError(f"unknown set {self.name!r}; expected one of {SET_NAMES}")
        if self.name == "ModLFullCertified" and not self.prime:
            raise ValueError("ModLFullCertified needs a prime")

    @property
    def label(self):
        if self.name in ("S_m", "T_m"):
            return f"{self.name[0]}_{self.m}"
        if self.name == "ModLFullCertified":
            return f"ModLFullCertified({self.prime})"
        if self.name == "DetIndexEquals":
            return f"DetIndexEquals({self.index})"
        return self.name


@dataclass(frozen=True)
class DensityEstimate:
    """count/total over A^2(d); in sampled mode total is the number of draws."""

    set: str
    q: int
    d: int
    mode: str
    count: int
    total: int

    @property
    def ratio(self):
        return self.count / self.total if self.total else 0.0

    def row(self):
        return (self.set, self.q, self.d, self.mode, self.count, self.total, f"{self.ratio:.6f}")


def population(q, d):
    return q ** (2 * (d + 1))


def closed_form_C(q, d):
    """|C(d)| = (q-1)^2 q (q^(2d) - 1)/(q^2 - 1)."""
    return (q - 1) ** 2 * q * (q ** (2 * d) - 1) // (q * q - 1)


# --- membership -------------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def _factors(f):
    return tuple(factor_poly(f)) if f.deg > 0 else ()


def in_C(a1, a2):
    return bool(a1) and bool(a2) and a1.deg == a2.deg - 1


def in_R(a1, a2):
    if not a2:
        return False
    hits = 0
    for g, k in _factors(a2):
        if k == 1 and g.deg > 1 and a1 % g:
            hits += 1
    return hits >= 2


def in_S(a1, a2, m):
    if not a1 and not a2:
        return False
    for g, _ in _factors(a2 if a2 else a1):
        if g.deg > m and not (a1 % g) and not (a2 % g):
            return False
    return True


@lru_cache(maxsize=None)
def _primes_by_degree(q, d):
    from .algebra.ideal import primes_of_degree
    return tuple(P.gen for P in primes_of_degree(gf(q), d))


def in_T(a2, m):
    if not a2:
        return False
    F = a2.F
    cap = m // (2 * (F.q - 1) ** 2 * (F.q + 1))
    for d in range(1, cap + 1):
        if sum(1 for g in _primes_by_degree(F.q, d) if a2 % g) >= 2:
            return True
    return False


def _membership(desc):
    """A predicate (a1, a2) -> bool for the descriptor."""
    if desc.name == "C":
        return in_C
    if desc.name == "R":
        return in_R
    if desc.name == "S_m":
        return lambda a1, a2: in_S(a1, a2, desc.m)
    if desc.name == "T_m":
        return lambda a1, a2: in_T(a2, desc.m)
    from . import certify
    from .algebra.poly import parse_poly
    F = gf(desc.q)
    if desc.name == "ModLFullCertified":
        lam = AIdeal(parse_poly(desc.prime.strip("() "), F))

        def pred(a1, a2):
            if not a2:
                return False
            return certify.modl_full_certificate(DrinfeldModule.rank2(F, a1, a2), lam).proven
        return pred

    def pred(a1, a2):
        return bool(a2) and certify.det_index(DrinfeldModule.rank2(F, a1, a2)) == desc.index
    return pred


# --- enumeration ------------------------------------------------------------

def _exact_count(pred, F, d):
    size = F.q ** (d + 1)
    polys = [APoly.from_index(F, n) for n in range(size)]
    return sum(1 for a1 in polys for a2 in polys if pred(a1, a2))


def _poly_from_digits(F, digits):
    return APoly(F, [int(x) for x in digits])


def _sample_pairs(F, d, seeds, nonzero_a2=False):
    for ss in seeds:
        rng = np.random.Generator(np.random.Philox(ss))
        while True:
            v = rng.integers(0, F.q, size=2 * (d + 1))
            a1, a2 = _poly_from_digits(F, v[:d + 1]), _poly_from_digits(F, v[d + 1:])
            if a2 or not nonzero_a2:
                break
        yield a1, a2


def _sample_shard(args):
    desc, d, seeds, nonzero = args
    F = gf(desc.q)
    pred = _membership(desc)
    return sum(1 for a1, a2 in _sample_pairs(F, d, seeds, nonzero) if pred(a1, a2))


def _sampled_count(desc, d, n, seed, nonzero_a2=False, workers=1, shard_size=64):
    seeds = np.random.SeedSequence(seed).spawn(n)
    shards = [(desc, d, seeds[i:i + shard_size], nonzero_a2) for i in range(0, n, shard_size)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return sum(pool.map(_sample_shard, shards))
    return sum(map(_sample_shard, shards))


def count_set(desc, d, exact=True, samples=None, seed=None, workers=1):
    """Count members of the set in A^2(d), exactly or from seeded samples."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    F = gf(desc.q)
    if exact:
        total = population(desc.q, d)
        if total > EXACT_CAP:
            raise ResourceCapExceeded(f"exact enumeration of {total} pairs exceeds {EXACT_CAP}")
        count = _exact_count(_membership(desc), F, d)
        return DensityEstimate(desc.label, desc.q, d, "exact", count, total)
    if samples is None or seed is None:
        raise ValueError("sampled mode needs samples and seed")
    count = _sampled_count(desc, d, samples, seed, workers=workers)
    return DensityEstimate(desc.label, desc.q, d, f"sampled(n={samples};seed={seed})", count, samples)


def surjectivity_scan(q, prime, d, n, seed, workers=1):
    """Fraction of sampled a in A^2(d), a2 != 0, whose mod-lambda image is certified full."""
    desc = SetDescriptor("ModLFullCertified", q, prime=prime)
    count = _sampled_count(desc, d, n, seed, nonzero_a2=True, workers=workers)
    return DensityEstimate(desc.label, q, d, f"sampled(n={n};seed={seed})", count, n)


def write_csv(path, estimates):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADER)
        for e in estimates:
            w.writerow(e.row())
