"""Hypothesis strategies shared by the test modules."""
from fractions import Fraction

from hypothesis import strategies as st

from gleafkit.simplex import MonotoneMap


@st.composite
def monotone_maps(draw, max_dom=4, max_cod=4):
    m = draw(st.integers(0, max_dom))
    n = draw(st.integers(0, max_cod))
    values = sorted(draw(st.lists(st.integers(0, n), min_size=m + 1, max_size=m + 1)))
    return MonotoneMap(m, n, tuple(values))


def halves(max_value=4):
    return st.integers(0, 2 * max_value).map(lambda i: Fraction(i, 2))


def seeds():
    return st.integers(0, 10 ** 6)
