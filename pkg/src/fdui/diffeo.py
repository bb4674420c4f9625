"""Formal diffeomorphisms of (C^2, 0) at a working truncation."""
from __future__ import annotations

from .scalar import ONE, inv, is_zero
from .series import DEFAULT_TRUNC, BiSeries, SeriesError

GENERAL = "general"
UNIPOTENT = "unipotent"
TANGENT_TO_IDENTITY = "tangent_to_identity"


class DiffeoError(ValueError):
    pass


class FormalDiffeo:
    """phi = (comp_x, comp_y), both in m, with invertible linear part.

    ``linear`` is the matrix ((a, b), (c, d)) with comp_x = a x + b y + ...
    and comp_y = c x + d y + ...
    """

    __slots__ = ("comp_x", "comp_y", "linear")

    def __init__(self, comp_x: BiSeries, comp_y: BiSeries):
        n = min(comp_x.trunc, comp_y.trunc)
        if n < 1:
            raise DiffeoError("a diffeomorphism needs truncation >= 1")
        comp_x, comp_y = comp_x.jet(n), comp_y.jet(n)
        if not (is_zero(comp_x.constant_term()) and is_zero(comp_y.constant_term())):
            raise DiffeoError("components must vanish at the origin")
        (a, b), (c, d) = comp_x.linear_part(), comp_y.linear_part()
        if is_zero(a * d - b * c):
            raise DiffeoError("linear part is not invertible")
        self.comp_x = comp_x
        self.comp_y = comp_y
        self.linear = ((a, b), (c, d))

    @classmethod
    def identity(cls, trunc=DEFAULT_TRUNC):
        return cls(BiSeries.x(trunc), BiSeries.y(trunc))

    @classmethod
    def linear_map(cls, a, b, c, d, trunc=DEFAULT_TRUNC):
        return cls(BiSeries({(1, 0): a, (0, 1): b}, trunc), BiSeries({(1, 0): c, (0, 1): d}, trunc))

    @property
    def trunc(self):
        return self.comp_x.trunc

    def components(self):
        return self.comp_x, self.comp_y

    def jet(self, k):
        return FormalDiffeo(self.comp_x.jet(k), self.comp_y.jet(k))

    def det(self):
        (a, b), (c, d) = self.linear
        return a * d - b * c

    def trace(self):
        return self.linear[0][0] + self.linear[1][1]

    # group law --------------------------------------------------------------
    def compose(self, other: "FormalDiffeo") -> "FormalDiffeo":
        """self o other."""
        u, v = other.comp_x, other.comp_y
        return FormalDiffeo(self.comp_x.compose(u, v), self.comp_y.compose(u, v))

    def __matmul__(self, other):
        return self.compose(other)

    def inverse(self) -> "FormalDiffeo":
        # psi = L^-1 (Id - H o psi), one extra correct degree per pass
        n = self.trunc
        (a, b), (c, d) = self.linear
        idet = inv(a * d - b * c)
        ia, ib, ic, id_ = d * idet, -b * idet, -c * idet, a * idet
        hx = self.comp_x - BiSeries({(1, 0): a, (0, 1): b}, n)
        hy = self.comp_y - BiSeries({(1, 0): c, (0, 1): d}, n)
        x, y = BiSeries.x(n), BiSeries.y(n)
        px = x.scale(ia) + y.scale(ib)
        py = x.scale(ic) + y.scale(id_)
        if hx.is_zero() and hy.is_zero():
            return FormalDiffeo(px, py)
        for k in range(2, n + 1):
            u, v = BiSeries._wrap(px.coeffs, k), BiSeries._wrap(py.coeffs, k)
            rx = x.jet(k) - hx.jet(k).compose(u, v)
            ry = y.jet(k) - hy.jet(k).compose(u, v)
            px = rx.scale(ia) + ry.scale(ib)
            py = rx.scale(ic) + ry.scale(id_)
        return FormalDiffeo(px, py)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = FormalDiffeo.identity(self.trunc)
        for _ in range(k):
            out = out.compose(self)
        return out

    def commutator(self, other: "FormalDiffeo") -> "FormalDiffeo":
        """[self, other] = self other self^-1 other^-1."""
        return self.compose(other).compose(self.inverse()).compose(other.inverse())

    def pullback(self, f: BiSeries) -> BiSeries:
        """f o self."""
        return f.compose(self.comp_x, self.comp_y)

    # classification -------------------------------------------------------------
    def classify(self):
        (a, b), (c, d) = self.linear
        if a == ONE and d == ONE and is_zero(b) and is_zero(c):
            return TANGENT_TO_IDENTITY
        # char poly (l - 1)^2  <=>  trace 2, det 1
        if self.trace() == 2 and self.det() == ONE:
            return UNIPOTENT
        return GENERAL

    def is_unipotent(self):
        return self.classify() != GENERAL

    def is_identity(self):
        n = self.trunc
        return self.comp_x == BiSeries.x(n) and self.comp_y == BiSeries.y(n)

    def jet_is_identity(self, k):
        k = min(k, self.trunc)
        return self.comp_x.jet(k) == BiSeries.x(k) and self.comp_y.jet(k) == BiSeries.y(k)

    def fixes_direction(self, direction) -> bool:
        """Whether the linear part maps the line {a x + b y = 0} to itself."""
        a, b = direction
        vx, vy = b, -a  # a vector spanning the line
        (p, q), (r, s) = self.linear
        wx, wy = p * vx + q * vy, r * vx + s * vy
        return is_zero(wx * vy - wy * vx)

    def __eq__(self, other):
        if not isinstance(other, FormalDiffeo):
            return NotImplemented
        return self.comp_x == other.comp_x and self.comp_y == other.comp_y

    def __hash__(self):
        return hash((self.comp_x, self.comp_y))

    def agrees(self, other, k=None):
        return self.comp_x.agrees(other.comp_x, k) and self.comp_y.agrees(other.comp_y, k)

    def format(self):
        return f"({self.comp_x.format()}, {self.comp_y.format()})"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"FormalDiffeo{self.format()} @N={self.trunc}"


def compose(phi, eta):
    return phi.compose(eta)


def invert(phi):
    return phi.inverse()


def classify(phi):
    return phi.classify()


def commutator(phi, eta):
    return phi.commutator(eta)


def pullback(f, phi):
    return phi.pullback(f)


def shift(f: BiSeries) -> FormalDiffeo:
    """(x, y + f(x)) -- the abelian family of maps preserving vertical fibres."""
    if any(j for (_, j) in f.coeffs):
        raise SeriesError("shift needs f = f(x)")
    return FormalDiffeo(BiSeries.x(f.trunc), BiSeries.y(f.trunc) + f)


__all__ = [
    "FormalDiffeo", "DiffeoError", "compose", "invert", "classify", "commutator",
    "pullback", "shift", "GENERAL", "UNIPOTENT", "TANGENT_TO_IDENTITY",
]
