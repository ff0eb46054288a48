from hypothesis import strategies as st

from drinfeld_gl2.algebra import APoly, gf

FIELD_SIZES = (2, 3, 4, 5, 7, 8, 9)


def fields(sizes=FIELD_SIZES):
    return st.sampled_from(sizes).map(gf)


def polys(F, max_deg=6, nonzero=False):
    s = st.lists(st.integers(0, F.q - 1), min_size=0, max_size=max_deg + 1).map(lambda c: APoly(F, c))
    return s.filter(bool) if nonzero else s


def elements(F, nonzero=False):
    return st.integers(1 if nonzero else 0, F.q - 1)
