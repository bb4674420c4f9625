"""Formal irreducible plane curves given by primitive parametrizations."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from gmpy2 import mpq

from .scalar import ONE, ZERO, coerce, inv, is_zero, to_str
from .series import DEFAULT_TRUNC, BiSeries, OrderResult, SeriesError, UniSeries, order_min


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class TangentDirection:
    """The line {a x + b y = 0}, scaled so the first nonzero coordinate is 1."""

    a: object
    b: object

    def __post_init__(self):
        a, b = coerce(self.a), coerce(self.b)
        if is_zero(a) and is_zero(b):
            raise CurveError("direction [0:0]")
        if is_zero(a):
            a, b = ZERO, ONE
        else:
            a, b = ONE, b * inv(a)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def of_vector(cls, u, v):
        """The line spanned by the vector (u, v)."""
        return cls(v, -u)

    def vector(self):
        return self.b, -self.a

    def format(self):
        return f"[{to_str(self.a)}:{to_str(self.b)}]"

    def __str__(self):
        return self.format()


Y_AXIS_LINE = TangentDirection(0, 1)  # {y = 0}


class CurveParam:
    """gamma(t) = (xt, yt) with a shared truncation.

    Primitivity is checked as: the gcd of every exponent that occurs is 1.
    Pass ``check=False`` for curves built from already-primitive ones.
    """

    __slots__ = ("xt", "yt")

    def __init__(self, xt: UniSeries, yt: UniSeries, check=True):
        n = min(xt.trunc, yt.trunc)
        xt, yt = xt.jet(n), yt.jet(n)
        if not (is_zero(xt.coeff(0)) and is_zero(yt.coeff(0))):
            raise CurveError("curve must pass through the origin")
        if xt.is_zero() and yt.is_zero():
            raise CurveError("both components vanish to the working truncation")
        if check:
            g = 0
            for e in list(xt.coeffs) + list(yt.coeffs):
                g = gcd(g, e)
            if g != 1:
                raise CurveError(f"parametrization is not primitive (exponent gcd {g})")
        self.xt = xt
        self.yt = yt

    @classmethod
    def from_coeffs(cls, xs, ys, trunc=DEFAULT_TRUNC):
        """Build from {exponent: coeff} maps."""
        return cls(UniSeries(xs, trunc), UniSeries(ys, trunc))

    @property
    def trunc(self):
        return self.xt.trunc

    def jet(self, k):
        return CurveParam(self.xt.jet(k), self.yt.jet(k), check=False)

    def multiplicity(self) -> OrderResult:
        return order_min(self.xt.order(), self.yt.order())

    def tangent_direction(self) -> TangentDirection:
        m = self.multiplicity()
        if not m.exact:
            raise CurveError("insufficient truncation")
        return TangentDirection.of_vector(self.xt.coeff(m.n), self.yt.coeff(m.n))

    def __eq__(self, other):
        if not isinstance(other, CurveParam):
            return NotImplemented
        return self.xt == other.xt and self.yt == other.yt

    def __hash__(self):
        return hash((self.xt, self.yt))

    def agrees(self, other, k=None):
        return self.xt.agrees(other.xt, k) and self.yt.agrees(other.yt, k)

    def format(self):
        return f"curve({self.xt.format()}; {self.yt.format()})"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"{self.format()} @N={self.trunc}"


def multiplicity(gamma):
    return gamma.multiplicity()


def tangent_direction(gamma):
    return gamma.tangent_direction()


# ---------------------------------------------------------------------------
# local implicit equation


@dataclass(frozen=True)
class LocalEquation:
    """f(u, v) = v^m - e_1(u) v^(m-1) + ... + (-1)^m e_m(u), one root per branch sheet.

    ``swapped`` says whether u is y (vertical tangent) rather than x.  Each
    e_k is known modulo u^(prec+1).
    """

    swapped: bool
    m: int
    elem: tuple
    prec: int

    def terms(self):
        """(sign * e_k, power of v) pairs."""
        return [(e if k % 2 == 0 else -e, self.m - k) for k, e in enumerate(self.elem)]


def local_equation(gamma: CurveParam) -> LocalEquation:
    """Norm of v - V(s) over the m sheets of u = c s^m.

    The curve is reparametrized so the chosen coordinate is a pure power
    c*s^m; then the product over m-th roots of unity is obtained from power
    sums (only exponents divisible by m survive the averaging) via Newton's
    identities, so no roots of unity are ever formed.
    """
    ox, oy = gamma.xt.order(), gamma.yt.order()
    if ox.exact and (not oy.exact or ox.n <= oy.n):
        u, v, swapped = gamma.xt, gamma.yt, False
    elif oy.exact:
        u, v, swapped = gamma.yt, gamma.xt, True
    else:
        raise CurveError("insufficient truncation")
    m = u.order().n
    c = u.coeff(m)
    unit = u.shift_down(m).scale(inv(c))
    root = unit.unit_power(mpq(1, m))
    s_of_t = UniSeries._wrap({e + 1: a for e, a in root.coeffs.items()}, root.trunc + 1)
    t_of_s = s_of_t.reversion()
    V = v.compose(t_of_s)
    prec_s = V.trunc
    J = prec_s // m
    ic = inv(c)
    power = UniSeries.const(ONE, prec_s)
    psums = []
    for _ in range(m):
        power = power.mul_to(V, prec_s)
        coeffs = {}
        for e, a in power.coeffs.items():
            if e % m == 0:
                q = e // m
                coeffs[q] = a * m * ic ** q
        psums.append(UniSeries(coeffs, J))
    elem = [UniSeries.const(ONE, J)]
    for k in range(1, m + 1):
        acc = UniSeries.zero(J)
        for i in range(1, k + 1):
            term = elem[k - i] * psums[i - 1]
            acc = acc + term if i % 2 == 1 else acc - term
        elem.append(acc.jet(J).scale(mpq(1, k)))
    return LocalEquation(swapped, m, tuple(e.jet(J) for e in elem), J)


def implicitize(gamma: CurveParam, degree_bound=DEFAULT_TRUNC) -> BiSeries:
    """Generator f of the ideal of gamma (a Weierstrass polynomial, so unit-normalized).

    Known modulo m^(n+1) with n = min(degree_bound, precision of the
    coefficients); raises when that does not even reach the multiplicity.
    """
    eq = local_equation(gamma)
    n = min(degree_bound, eq.prec)
    if eq.prec < eq.m:
        raise CurveError("insufficient truncation")
    coeffs = {}
    for e, p in eq.terms():
        for j, a in e.coeffs.items():
            key = (p, j) if eq.swapped else (j, p)
            coeffs[key] = coeffs.get(key, ZERO) + a
    return BiSeries(coeffs, eq.prec).jet(n)


def intersect_order(alpha: CurveParam, beta: CurveParam) -> OrderResult:
    """ord_t f_beta(alpha(t)), honest about every truncation involved."""
    eq = local_equation(beta)
    au, av = (alpha.yt, alpha.xt) if eq.swapped else (alpha.xt, alpha.yt)
    # precision: alpha's own truncation, and the unknown u^(prec+1) tail of beta's equation
    bound = min(alpha.trunc + 1, (eq.prec + 1) * au.ordlb())
    total = UniSeries.zero(bound - 1)
    for e, p in eq.terms():
        total = total + (e.compose(au) * av ** p).jet(bound - 1)
    if total.trunc < bound - 1:
        raise CurveError("internal precision bookkeeping failed")
    return total.order()


def act(phi, gamma: CurveParam) -> CurveParam:
    """phi(gamma(t))."""
    return CurveParam(
        phi.comp_x.substitute(gamma.xt, gamma.yt),
        phi.comp_y.substitute(gamma.xt, gamma.yt),
        check=False,
    )


def equal_up_to(alpha, beta, depth) -> bool:
    from .blowup import shared_prefix

    return shared_prefix(alpha, beta, depth) >= depth


def smooth_graph(g: UniSeries) -> CurveParam:
    """{y = g(x)} as (t, g(t))."""
    return CurveParam(UniSeries.t(g.trunc), g, check=False)


__all__ = [
    "CurveParam", "TangentDirection", "CurveError", "LocalEquation", "local_equation",
    "implicitize", "intersect_order", "act", "equal_up_to", "multiplicity",
    "tangent_direction", "smooth_graph", "Y_AXIS_LINE", "SeriesError",
]
