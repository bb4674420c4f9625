"""Random and named objects used by the experiment scripts and the test-suite."""
from __future__ import annotations

import random
from math import gcd

from gmpy2 import mpq

from .curve import CurveParam
from .diffeo import FormalDiffeo
from .groups import GeneratedGroup
from .scalar import EPS
from .series import BiSeries, UniSeries
from .vfield import FormalVectorField


def _coef(rng: random.Random, height):
    while True:
        c = rng.randint(-height, height)
        if c:
            return mpq(c, rng.randint(1, height)) if rng.random() < 0.3 else mpq(c)


def random_curve(rng, trunc=24, max_mult=3, height=5, terms=4, linear=True):
    """A primitive curve: (t^m, y(t)) pushed through a random linear map.

    x is a pure power, so the exponent-gcd test is exact for it.
    """
    m = rng.randint(1, max_mult)
    y = {}
    # make y carry an exponent coprime to m so the curve is primitive
    cands = [e for e in range(m + 1, min(trunc, m + 12) + 1) if gcd(e, m) == 1] or [m + 1]
    y[rng.choice(cands)] = _coef(rng, height)
    for _ in range(terms - 1):
        y[rng.randint(m, min(trunc, m + 14))] = _coef(rng, height)
    gamma = CurveParam(UniSeries({m: 1}, trunc), UniSeries(y, trunc))
    if linear and rng.random() < 0.5:
        gamma = _linear_push(rng, gamma, height)
    return gamma


def _linear_push(rng, gamma, height):
    while True:
        a, b, c, d = (rng.randint(-height, height) for _ in range(4))
        if a * d - b * c:
            break
    xt = gamma.xt.scale(a) + gamma.yt.scale(b)
    yt = gamma.xt.scale(c) + gamma.yt.scale(d)
    return CurveParam(xt, yt, check=False)


def perturb_curve(rng, gamma, height=5):
    """gamma with one coefficient changed past its first few terms: a curve with high contact."""
    n = gamma.trunc
    e = rng.randint(min(n, 3), n)
    bump = UniSeries({e: _coef(rng, height)}, n)
    if rng.random() < 0.5:
        return CurveParam(gamma.xt, gamma.yt + bump, check=False)
    return CurveParam(gamma.xt + bump, gamma.yt, check=False)


def random_curve_pair(rng, trunc=24, max_mult=3, height=5):
    a = random_curve(rng, trunc, max_mult, height)
    r = rng.random()
    if r < 0.4:
        return a, perturb_curve(rng, a, height)
    return a, random_curve(rng, trunc, max_mult, height)


def random_series(rng, trunc, min_order=1, max_deg=None, height=5, terms=5, only_x=False):
    max_deg = trunc if max_deg is None else min(max_deg, trunc)
    coeffs = {}
    for _ in range(terms):
        d = rng.randint(min_order, max_deg)
        i = d if only_x else rng.randint(0, d)
        coeffs[(i, d - i)] = _coef(rng, height)
    return BiSeries(coeffs, trunc)


def random_tangent_to_identity(rng, trunc=12, height=5, terms=4, max_deg=6):
    return FormalDiffeo(
        BiSeries.x(trunc) + random_series(rng, trunc, 2, max_deg, height, terms),
        BiSeries.y(trunc) + random_series(rng, trunc, 2, max_deg, height, terms),
    )


def random_unipotent(rng, trunc=12, height=5, terms=4, max_deg=6):
    """A shear (x + s y, y) or Id, composed with a random tangent-to-identity map."""
    s = mpq(rng.randint(-height, height))
    lin = FormalDiffeo.linear_map(1, s, 0, 1, trunc) if rng.random() < 0.5 else FormalDiffeo.identity(trunc)
    return lin.compose(random_tangent_to_identity(rng, trunc, height, terms, max_deg))


def random_nilpotent_field(rng, trunc=12, height=5, terms=4, max_deg=6):
    """Linear part 0 or the nilpotent block y d/dx, plus higher-order terms."""
    a = random_series(rng, trunc, 2, max_deg, height, terms)
    b = random_series(rng, trunc, 2, max_deg, height, terms)
    if rng.random() < 0.5:
        a = a + BiSeries.y(trunc).scale(_coef(rng, height))
    return FormalVectorField(a, b)


def random_diffeo(rng, trunc=12, height=5, terms=4, max_deg=6):
    while True:
        a, b, c, d = (rng.randint(-height, height) for _ in range(4))
        if a * d - b * c:
            break
    lin = FormalDiffeo.linear_map(a, b, c, d, trunc)
    return lin.compose(random_tangent_to_identity(rng, trunc, height, terms, max_deg))


def random_fixing(rng, direction, trunc=12, height=5, terms=4, max_deg=6):
    """A diffeomorphism whose linear part maps the line {a x + b y = 0} to itself."""
    a, b = direction
    vx, vy = b, -a
    while True:
        p, q, r, s = (mpq(rng.randint(-height, height)) for _ in range(4))
        # force (p q; r s)(vx, vy) to be parallel to (vx, vy)
        lam = mpq(rng.choice([1, 2, -1, 3]))
        if vx != 0:
            p = (lam * vx - q * vy) / vx
            r = (lam * vy - s * vy) / vx
        else:
            q = (lam * vx - p * vx) / vy
            s = (lam * vy - r * vx) / vy
        if p * s - q * r != 0:
            break
    lin = FormalDiffeo.linear_map(p, q, r, s, trunc)
    return lin.compose(random_tangent_to_identity(rng, trunc, height, terms, max_deg))


def random_smooth_graph(rng, trunc=24, height=5, terms=4):
    """{y = g(x)} with g(0) = 0, as (t, g(t))."""
    g = {rng.randint(1, trunc): _coef(rng, height) for _ in range(terms)}
    return CurveParam(UniSeries.t(trunc), UniSeries(g, trunc), check=False)


# named examples ---------------------------------------------------------------


def intro_family(js=(1, 2, 3), trunc=24):
    """(x, y + d_j x + x^(j+1)) with d_j = e^j."""
    x, y = BiSeries.x(trunc), BiSeries.y(trunc)
    gens = [FormalDiffeo(x, y + x.scale(EPS ** j) + x ** (j + 1)) for j in js]
    return GeneratedGroup(gens)


def tangent_pair(trunc=24):
    """<(x, y + x^2), (x, y + x^3)>."""
    x, y = BiSeries.x(trunc), BiSeries.y(trunc)
    return GeneratedGroup([FormalDiffeo(x, y + x ** 2), FormalDiffeo(x, y + x ** 3)])


def axis(trunc=24):
    return CurveParam(UniSeries.t(trunc), UniSeries.zero(trunc), check=False)
