"""Point blow-up of the origin: near points, Noether's formula, lifted maps.

Chart 1 at slope c has coordinates (x, t) with y = x (t + c); chart 2 is
only used for the vertical direction and has coordinates (s, y) with
x = s y.  Lifted objects are written in the variables (x, y) of the chart.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .curve import CurveError, CurveParam, TangentDirection
from .diffeo import FormalDiffeo
from .scalar import ZERO, coerce, inv, is_zero, to_str
from .series import BiSeries, OrderResult, SeriesError, UniSeries
from .vfield import FormalVectorField


class BlowupError(ValueError):
    pass


@dataclass(frozen=True)
class NearPoint:
    """A point of an exceptional divisor: chart 1 at slope ``coord`` or chart 2 (vertical)."""

    chart: int
    coord: object = ZERO

    def __post_init__(self):
        object.__setattr__(self, "coord", coerce(self.coord))

    @classmethod
    def of_direction(cls, d: TangentDirection) -> "NearPoint":
        if is_zero(d.b):
            return cls(2, ZERO)
        return cls(1, -d.a * inv(d.b))

    def direction(self) -> TangentDirection:
        if self.chart == 2:
            return TangentDirection(1, 0)
        return TangentDirection(self.coord, -1)

    def format(self):
        return f"chart{self.chart}:{to_str(self.coord)}"

    def __str__(self):
        return self.format()

    def to_json(self):
        return {"chart": self.chart, "coord": to_str(self.coord)}


@dataclass
class NearPointSeq:
    """One row per blow-up: mults[k] is the multiplicity of the curve blown up at
    step k+1, points[k] is where its strict transform meets the divisor, and
    transforms[k] is that strict transform in local coordinates."""

    points: list = field(default_factory=list)
    mults: list = field(default_factory=list)
    transforms: list = field(default_factory=list)
    # set when the working truncation ran out before the requested depth
    exhausted: bool = False

    def __len__(self):
        return len(self.points)

    def to_json(self):
        return {
            "points": [p.to_json() for p in self.points],
            "mults": list(self.mults),
            "transforms": [g.format() for g in self.transforms],
            "exhausted": self.exhausted,
        }


def strict_transform(gamma: CurveParam):
    """(near point, strict transform) after one blow-up."""
    m = gamma.multiplicity()
    if not m.exact:
        raise BlowupError("depth limit")
    m = m.n
    X, Y = gamma.xt, gamma.yt
    try:
        cx = X.coeff(m)
        if not is_zero(cx):
            c = Y.coeff(m) * inv(cx)
            Yn = Y.divide(X) - c
            n = min(X.trunc, Yn.trunc)
            if n < 1:
                raise BlowupError("depth limit")
            return NearPoint(1, c), CurveParam(X.jet(n), Yn.jet(n), check=False)
        Xn = X.divide(Y)
        n = min(Xn.trunc, Y.trunc)
        if n < 1:
            raise BlowupError("depth limit")
        return NearPoint(2, ZERO), CurveParam(Xn.jet(n), Y.jet(n), check=False)
    except (SeriesError, CurveError) as exc:
        raise BlowupError("depth limit") from exc


def _walk(gamma, depth):
    seq = NearPointSeq()
    g = gamma
    for _ in range(depth):
        try:
            m = g.multiplicity()
            p, g2 = strict_transform(g)
        except BlowupError:
            seq.exhausted = True
            break
        seq.mults.append(m.n)
        seq.points.append(p)
        seq.transforms.append(g2)
        g = g2
    return seq


def near_points(gamma: CurveParam, depth: int, partial=False) -> NearPointSeq:
    """The first ``depth`` blow-ups of gamma.

    With ``partial`` a truncation-limited prefix is returned (flagged
    ``exhausted``) instead of raising.
    """
    seq = _walk(gamma, depth)
    if seq.exhausted and not partial:
        raise BlowupError(f"depth limit: truncation {gamma.trunc} gives only {len(seq)} of {depth} steps")
    return seq


def _last_mult(gamma, seq):
    """Multiplicity (possibly only a lower bound) of the last transform in seq."""
    g = seq.transforms[-1] if seq.transforms else gamma
    return g.multiplicity()


def _compare(alpha, beta, depth):
    sa, sb = _walk(alpha, depth), _walk(beta, depth)
    s = 0
    for pa, pb in zip(sa.points, sb.points):
        if pa != pb:
            return s, "differ", sa, sb
        s += 1
    if s == depth:
        return s, "depth", sa, sb
    return s, "truncation", sa, sb


def shared_prefix(alpha: CurveParam, beta: CurveParam, depth: int) -> int:
    s, why, _, _ = _compare(alpha, beta, depth)
    if why == "truncation":
        raise BlowupError(f"depth limit: points agree through {s}, truncation reached")
    return s


def intersect_noether(alpha: CurveParam, beta: CurveParam, depth: int) -> OrderResult:
    """sum_{k <= s} m_k(alpha) m_k(beta), s the number of shared near points.

    Exact when the sequences separate within ``depth``; otherwise a lower
    bound built from what is known.
    """
    s, why, sa, sb = _compare(alpha, beta, depth)
    ma = list(sa.mults[: s + 1])
    mb = list(sb.mults[: s + 1])
    if why == "differ":
        return OrderResult.Exact(sum(a * b for a, b in zip(ma, mb)))
    # one multiplicity past the shared prefix may only be a lower bound
    if len(ma) < s + 1:
        ma.append(_last_mult(alpha, sa).n)
    if len(mb) < s + 1:
        mb.append(_last_mult(beta, sb).n)
    return OrderResult.AtLeast(sum(a * b for a, b in zip(ma, mb)))


# ---------------------------------------------------------------------------
# lifts


def _div_var(f: BiSeries, var):
    """Exact quotient by x or y; the result loses one degree of truncation."""
    k = 0 if var == "x" else 1
    out = {}
    for (i, j), c in f.coeffs.items():
        e = (i, j)[k]
        if e == 0:
            raise BlowupError(f"not divisible by {var}")
        out[(i - 1, j) if k == 0 else (i, j - 1)] = c
    return BiSeries._wrap(out, f.trunc - 1)


def _chart_maps(point: NearPoint, n):
    """The blow-down map pi in the chart, as substitutions (u, v) for (x, y)."""
    x, y = BiSeries.x(n), BiSeries.y(n)
    if point.chart == 1:
        return x, x * y + x.scale(point.coord)
    return x * y, y


def _as_point(where):
    if isinstance(where, NearPoint):
        return where
    if isinstance(where, TangentDirection):
        return NearPoint.of_direction(where)
    return NearPoint.of_direction(TangentDirection(*where))


def lift_diffeo(phi: FormalDiffeo, where) -> FormalDiffeo:
    """tau(phi) near the point of the divisor corresponding to ``where``."""
    p = _as_point(where)
    d = p.direction()
    if not phi.fixes_direction((d.a, d.b)):
        raise BlowupError("direction not invariant")
    u, v = _chart_maps(p, phi.trunc)
    A, B = phi.comp_x.compose(u, v), phi.comp_y.compose(u, v)
    if p.chart == 1:
        a1, b1 = _div_var(A, "x"), _div_var(B, "x")
        t = (b1 * a1.reciprocal()) - p.coord
        return FormalDiffeo(A.jet(t.trunc), t)
    a1, b1 = _div_var(A, "y"), _div_var(B, "y")
    s = a1 * b1.reciprocal()
    return FormalDiffeo(s, B.jet(s.trunc))


def lift_vfield(X: FormalVectorField, where) -> FormalVectorField:
    p = _as_point(where)
    d = p.direction()
    (q, r), (s_, w) = X.linear_part()
    vx, vy = d.vector()
    if not is_zero((q * vx + r * vy) * vy - (s_ * vx + w * vy) * vx):
        raise BlowupError("direction not invariant")
    n = X.trunc
    u, v = _chart_maps(p, n)
    A, B = X.a.compose(u, v), X.b.compose(u, v)
    x, y = BiSeries.x(n), BiSeries.y(n)
    if p.chart == 1:
        # t = y/x - c:  t' = (B - (t + c) A) / x
        tt = _div_var(B - (y + p.coord) * A, "x")
        return FormalVectorField(A.jet(tt.trunc), tt)
    # s = x/y:  s' = (A - s B) / y
    ss = _div_var(A - x * B, "y")
    return FormalVectorField(ss, B.jet(ss.trunc))


def lift_direction_of(gamma: CurveParam) -> NearPoint:
    return NearPoint.of_direction(gamma.tangent_direction())


__all__ = [
    "NearPoint", "NearPointSeq", "BlowupError", "strict_transform", "near_points",
    "shared_prefix", "intersect_noether", "lift_diffeo", "lift_vfield", "lift_direction_of",
]
