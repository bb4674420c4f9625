"""Hypothesis strategies for exact scalars, series, maps and curves."""
import random

from gmpy2 import mpq
from hypothesis import strategies as st

from fdui import samples
from fdui.scalar import EPS, gaussian
from fdui.series import BiSeries, UniSeries

small = st.integers(-5, 5)
positive = st.integers(1, 5)

rationals = st.builds(lambda p, q: mpq(p, q), small, positive)
gaussians = st.builds(gaussian, rationals, rationals)


@st.composite
def eps_polys(draw, max_deg=2):
    cs = draw(st.lists(gaussians, min_size=1, max_size=max_deg + 1))
    out = mpq(0)
    for k, c in enumerate(cs):
        out = out + c * EPS ** k
    return out


@st.composite
def scalars(draw):
    num = draw(eps_polys())
    den = draw(eps_polys())
    if den == 0:
        return num
    return num / den


@st.composite
def bi_series(draw, trunc=6, min_order=0, coeffs=rationals):
    terms = draw(st.dictionaries(
        st.tuples(st.integers(0, trunc), st.integers(0, trunc)).filter(
            lambda ij: min_order <= ij[0] + ij[1] <= trunc),
        coeffs, max_size=6))
    return BiSeries(terms, trunc)


@st.composite
def uni_series(draw, trunc=10, min_order=0, coeffs=rationals):
    terms = draw(st.dictionaries(st.integers(min_order, trunc), coeffs, max_size=6))
    return UniSeries(terms, trunc)


rngs = st.integers(0, 2 ** 32 - 1).map(random.Random)


def seeded(fn, *args, **kw):
    return rngs.map(lambda r: fn(r, *args, **kw))


diffeos = seeded(samples.random_diffeo, trunc=8)
tangent_maps = seeded(samples.random_tangent_to_identity, trunc=8)
unipotents = seeded(samples.random_unipotent, trunc=8)
nilpotent_fields = seeded(samples.random_nilpotent_field, trunc=8)
curves = seeded(samples.random_curve, trunc=24)
curve_pairs = seeded(samples.random_curve_pair, trunc=24)
