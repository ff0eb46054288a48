import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from drinfeld_gl2.algebra import APoly, gf, parse_poly  # noqa: E402
from drinfeld_gl2.drinfeld import DrinfeldModule  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def poly(text, q):
    return parse_poly(text, gf(q))


def module(q, a1, a2):
    F = gf(q)
    return DrinfeldModule.rank2(F, parse_poly(a1, F), parse_poly(a2, F))


def example(q):
    """q = 2: t + t^3 tau + (t^2+t+1) tau^2; otherwise t + tau - t^(q-1) tau^2."""
    if q == 2:
        return module(2, "t^3", "t^2+t+1")
    F = gf(q)
    return DrinfeldModule.rank2(F, APoly.const(F, 1), -APoly.monomial(F, q - 1))


def as_list(f):
    """Coefficient list of an APoly over a prime field."""
    return list(f.c)


@pytest.fixture
def ex2():
    return example(2)


@pytest.fixture
def ex3():
    return example(3)
