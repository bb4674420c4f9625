import pytest
from hypothesis import given

from fdui.curve import (
    CurveError, CurveParam, TangentDirection, act, equal_up_to, implicitize, intersect_order,
    multiplicity, tangent_direction,
)
from fdui.diffeo import FormalDiffeo
from fdui.series import BiSeries, OrderResult, UniSeries
from strategies import curve_pairs, curves, diffeos, rngs
from fdui import samples

N = 24
t = UniSeries.t(N)
Z = UniSeries.zero(N)
x, y = BiSeries.x(N), BiSeries.y(N)
Exact, AtLeast = OrderResult.Exact, OrderResult.AtLeast


def C(a, b):
    return CurveParam(a, b)


cusp = C(t ** 2, t ** 3)
line = C(t, Z)


def test_primitivity_enforced():
    with pytest.raises(CurveError, match="primitive"):
        C(t ** 2, t ** 4)
    with pytest.raises(CurveError):
        C(t + 1, t)


@pytest.mark.parametrize("g,m", [(C(t, t * t), 1), (cusp, 2), (C(t ** 3, t ** 5), 3)])
def test_multiplicity(g, m):
    assert multiplicity(g) == Exact(m)


@pytest.mark.parametrize("g,line_ab", [
    (C(t, t * t), (0, 1)),
    (cusp, (0, 1)),
    (C(t, -t), (1, 1)),
])
def test_tangent_direction(g, line_ab):
    assert tangent_direction(g) == TangentDirection(*line_ab)


def _is_equation(f, g):
    r = f.substitute(g.xt, g.yt)
    return r.is_zero()


@pytest.mark.parametrize("g,expected", [
    (C(t, t * t), y - x * x),
    (cusp, y * y - x ** 3),
    (line, y),
])
def test_implicitize(g, expected):
    f = implicitize(g, 8)
    assert f == expected.jet(8)
    assert _is_equation(implicitize(g), g)
    assert f.order() == multiplicity(g)


def test_implicitize_insufficient():
    g = C(UniSeries({3: 1}, 4), UniSeries({4: 1}, 4))
    with pytest.raises(CurveError, match="insufficient"):
        implicitize(g)


@pytest.mark.parametrize("a,b,expected", [
    (C(t, t * t), C(t, t ** 3), Exact(2)),  # ord(t^2 - t^3)
    (cusp, line, Exact(3)),  # ord t^3
    (C(t, t * t), C(t, t * t), AtLeast(N + 1)),
])
def test_intersect_order(a, b, expected):
    assert intersect_order(a, b) == expected


@pytest.mark.parametrize("phi,g,expected", [
    (FormalDiffeo(x, y + x ** 3), line, C(t, t ** 3)),
    (FormalDiffeo.identity(N), cusp, cusp),
    (FormalDiffeo(2 * x, y), cusp, C(2 * t ** 2, t ** 3)),
])
def test_act(phi, g, expected):
    assert act(phi, g) == expected


def test_equal_up_to():
    assert equal_up_to(cusp, cusp, 5)
    assert not equal_up_to(C(t, t * t), C(t, t ** 3), 2)
    assert not equal_up_to(C(t, t * t), C(t, -t), 1)


# -- properties -------------------------------------------------------------------


@given(curves)
def test_implicit_equation_vanishes(g):
    f = implicitize(g)
    assert _is_equation(f, g)
    assert f.order() == multiplicity(g)


@given(curve_pairs)
def test_symmetry(pair):
    a, b = pair
    ab, ba = intersect_order(a, b), intersect_order(b, a)
    _consistent(ab, ba)


def _consistent(p, q):
    """Two honest answers for the same number agree where both are exact."""
    if p.exact and q.exact:
        assert p == q
    elif p.exact:
        assert p.n >= q.n
    elif q.exact:
        assert q.n >= p.n


@given(curve_pairs, rngs)
def test_diffeo_invariance(pair, rng):
    a, b = pair
    phi = samples.random_diffeo(rng, trunc=N)
    _consistent(intersect_order(a, b), intersect_order(act(phi, a), act(phi, b)))


@given(curves)
def test_multiplicity_bounds_intersection(g):
    # (g, line) >= m(g) for any line through the origin
    assert intersect_order(g, line).n >= multiplicity(g).n


@given(curves, rngs)
def test_reparametrization_invariant(g, rng):
    # t -> t + c t^2 does not change the curve
    c = rng.randint(-3, 3)
    s = UniSeries({1: 1, 2: c}, N)
    h = CurveParam(g.xt.compose(s), g.yt.compose(s), check=False)
    _consistent(intersect_order(h, line), intersect_order(g, line))
