"""Formal vector fields a d/dx + b d/dy singular at the origin."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .diffeo import FormalDiffeo
from .scalar import ONE, is_zero
from .series import DEFAULT_TRUNC, BiSeries


class VectorFieldError(ValueError):
    pass


@dataclass(frozen=True)
class Verdict:
    """Outcome of a predicate that can only be confirmed up to truncation."""

    holds: bool
    witness_degree: Optional[int] = None
    trunc: Optional[int] = None

    def __bool__(self):
        return self.holds

    def to_json(self):
        if self.holds:
            return {"holds": True, "upToTrunc": self.trunc}
        return {"holds": False, "witnessDegree": self.witness_degree}


class FormalVectorField:
    __slots__ = ("a", "b")

    def __init__(self, a: BiSeries, b: BiSeries):
        n = min(a.trunc, b.trunc)
        a, b = a.jet(n), b.jet(n)
        if not (is_zero(a.constant_term()) and is_zero(b.constant_term())):
            raise VectorFieldError("vector field must vanish at the origin")
        self.a = a
        self.b = b

    @classmethod
    def zero(cls, trunc=DEFAULT_TRUNC):
        return cls(BiSeries.zero(trunc), BiSeries.zero(trunc))

    @property
    def trunc(self):
        return self.a.trunc

    def jet(self, k):
        return FormalVectorField(self.a.jet(k), self.b.jet(k))

    def linear_part(self):
        """((a_x, a_y), (b_x, b_y)) -- the matrix of j^1 X."""
        return self.a.linear_part(), self.b.linear_part()

    def is_nilpotent(self):
        (p, q), (r, s) = self.linear_part()
        return is_zero(p + s) and is_zero(p * s - q * r)

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()

    # algebra ------------------------------------------------------------------
    def apply(self, f: BiSeries) -> BiSeries:
        """X(f) = a f_x + b f_y.

        Since a, b vanish at 0 no precision is lost: X(f) is known to
        min(trunc f, trunc X).
        """
        n = min(f.trunc, self.trunc)
        # a, b in m make a * f_x known one degree past f_x itself
        return self.a.mul(f.diff("x"), n) + self.b.mul(f.diff("y"), n)

    def __call__(self, f):
        return self.apply(f)

    def bracket(self, other: "FormalVectorField") -> "FormalVectorField":
        return FormalVectorField(
            self.apply(other.a) - other.apply(self.a),
            self.apply(other.b) - other.apply(self.b),
        )

    def __add__(self, other):
        return FormalVectorField(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return FormalVectorField(self.a - other.a, self.b - other.b)

    def __neg__(self):
        return FormalVectorField(-self.a, -self.b)

    def scale(self, c):
        return FormalVectorField(self.a.scale(c), self.b.scale(c))

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    # exp / log ----------------------------------------------------------------
    def lie_series(self, f: BiSeries) -> BiSeries:
        """sum_m X^m(f)/m!, i.e. f o exp(X); finite for nilpotent X."""
        if not self.is_nilpotent():
            raise VectorFieldError("exp needs a nilpotent vector field")
        n = min(self.trunc, f.trunc)
        out = f.jet(n)
        term = out
        # on degree-d forms the nilpotent linear part has index <= d + 1
        for m in range(1, n * (n + 3) // 2 + 2):
            term = self.apply(term).scale(ONE / m)
            if term.is_zero():
                return out
            out = out + term
        raise VectorFieldError("exp did not terminate")

    def exp(self) -> FormalDiffeo:
        n = self.trunc
        return FormalDiffeo(self.lie_series(BiSeries.x(n)), self.lie_series(BiSeries.y(n)))

    # predicates ---------------------------------------------------------------
    def is_first_integral(self, f: BiSeries) -> Verdict:
        g = self.apply(f)
        o = g.order()
        if o.exact:
            return Verdict(False, o.n, g.trunc)
        return Verdict(True, None, g.trunc)

    def tangency(self, gamma):
        """a(gamma) y' - b(gamma) x' along a parametrized curve."""
        xt, yt = gamma.xt, gamma.yt
        return self.a.substitute(xt, yt) * yt.derivative() - self.b.substitute(xt, yt) * xt.derivative()

    def is_invariant_curve(self, gamma) -> Verdict:
        e = self.tangency(gamma)
        o = e.order()
        if o.exact:
            return Verdict(False, o.n, e.trunc)
        return Verdict(True, None, e.trunc)

    # comparison / display -----------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, FormalVectorField):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def agrees(self, other, k=None):
        return self.a.agrees(other.a, k) and self.b.agrees(other.b, k)

    def format(self):
        return f"vf({self.a.format()}; {self.b.format()})"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"{self.format()} @N={self.trunc}"


def apply(X, f):
    return X.apply(f)


def bracket(X, Y):
    return X.bracket(Y)


def exp_vf(X: FormalVectorField) -> FormalDiffeo:
    return X.exp()


def log_diffeo(phi: FormalDiffeo) -> FormalVectorField:
    """Infinitesimal generator of a unipotent phi: the nilpotent X with exp(X) = phi.

    Computed from the jet-matrix logarithm at level trunc(phi), reading off
    the images of x and y.
    """
    from .jetspace import log_columns, project_diffeo

    if not phi.is_unipotent():
        raise VectorFieldError("log needs a unipotent diffeomorphism")
    A = project_diffeo(phi, phi.trunc)
    cols = log_columns(A, [(1, 0), (0, 1)])
    return FormalVectorField(cols[(1, 0)], cols[(0, 1)])


def is_first_integral(X, f):
    return X.is_first_integral(f)


def is_invariant_curve(X, gamma):
    return X.is_invariant_curve(gamma)


__all__ = [
    "FormalVectorField", "Verdict", "VectorFieldError", "apply", "bracket", "exp_vf",
    "log_diffeo", "is_first_integral", "is_invariant_curve",
]
