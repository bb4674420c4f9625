"""Truncated formal power series in (x, y) and in t.

Every value remembers the order ``trunc`` up to which its coefficients are
known: a :class:`BiSeries` is known modulo m^(trunc+1), a :class:`UniSeries`
modulo t^(trunc+1).  Operations combine these conservatively, so a result never
claims more precision than its inputs justify.  :class:`OrderResult` is how a
vanishing order is reported when the known coefficients might all be zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from gmpy2 import mpq

from .scalar import ONE, ZERO, coerce, inv, is_zero, needs_parens, to_str

DEFAULT_TRUNC = 24


class SeriesError(ValueError):
    pass


@dataclass(frozen=True)
class OrderResult:
    """Either an exact order or a lower bound forced by truncation."""

    exact: bool
    n: int

    @classmethod
    def Exact(cls, n):
        return cls(True, n)

    @classmethod
    def AtLeast(cls, n):
        return cls(False, n)

    @property
    def value(self):
        return self.n

    def __add__(self, other):
        return OrderResult(self.exact and other.exact, self.n + other.n)

    def __mul__(self, k):
        return OrderResult(self.exact, self.n * k)

    def to_json(self):
        return {"exact": self.n} if self.exact else {"atLeast": self.n}

    def __str__(self):
        return f"Exact({self.n})" if self.exact else f"AtLeast({self.n})"


def order_min(a: OrderResult, b: OrderResult) -> OrderResult:
    """Order of a sum-like combination: exact only when the minimum is certain."""
    if a.exact and b.exact:
        return a if a.n <= b.n else b
    if a.exact and a.n < b.n:
        return a
    if b.exact and b.n < a.n:
        return b
    return OrderResult.AtLeast(min(a.n, b.n))


def _clean(coeffs, keep):
    out = {}
    for k, c in coeffs.items():
        if keep(k) and not is_zero(c):
            out[k] = c
    return out


def _fmt_terms(items):
    """Join (coefficient, monomial) pairs into ``a + b - c`` text."""
    parts = []
    for c, mono in items:
        cs = to_str(c)
        if not mono:
            s = f"({cs})" if needs_parens(cs) else cs
        elif cs == "1":
            s = mono
        elif cs == "-1":
            s = "-" + mono
        else:
            if needs_parens(cs):
                cs = f"({cs})"
            s = f"{cs}*{mono}"
        parts.append(s)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def _pow_str(v, e):
    return v if e == 1 else f"{v}^{e}"


class BiSeries:
    """f(x, y) modulo m^(trunc+1), stored as a sparse {(i, j): coeff} map."""

    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs=None, trunc=DEFAULT_TRUNC):
        if trunc < 0:
            raise SeriesError("negative truncation")
        coeffs = coeffs or {}
        self.trunc = trunc
        self.coeffs = _clean(
            {k: coerce(c) for k, c in coeffs.items()}, lambda k: k[0] + k[1] <= trunc
        )

    @classmethod
    def _wrap(cls, coeffs, trunc):
        self = object.__new__(cls)
        self.coeffs = coeffs
        self.trunc = trunc
        return self

    # constructors ------------------------------------------------------------
    @classmethod
    def zero(cls, trunc=DEFAULT_TRUNC):
        return cls._wrap({}, trunc)

    @classmethod
    def const(cls, c, trunc=DEFAULT_TRUNC):
        return cls({(0, 0): c}, trunc)

    @classmethod
    def x(cls, trunc=DEFAULT_TRUNC):
        return cls({(1, 0): ONE}, trunc)

    @classmethod
    def y(cls, trunc=DEFAULT_TRUNC):
        return cls({(0, 1): ONE}, trunc)

    @classmethod
    def monomial(cls, i, j, c=ONE, trunc=DEFAULT_TRUNC):
        return cls({(i, j): c}, trunc)

    # ring structure --------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, BiSeries):
            return other
        return BiSeries.const(other, self.trunc)

    def __add__(self, other):
        if isinstance(other, UniSeries):
            return NotImplemented
        other = self._lift(other)
        n = min(self.trunc, other.trunc)
        out = {k: c for k, c in self.coeffs.items() if k[0] + k[1] <= n}
        for k, c in other.coeffs.items():
            if k[0] + k[1] > n:
                continue
            s = out.get(k, ZERO) + c
            if is_zero(s):
                out.pop(k, None)
            else:
                out[k] = s
        return BiSeries._wrap(out, n)

    __radd__ = __add__

    def __neg__(self):
        return BiSeries._wrap({k: -c for k, c in self.coeffs.items()}, self.trunc)

    def __sub__(self, other):
        if isinstance(other, UniSeries):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = coerce(c)
        if is_zero(c):
            return BiSeries.zero(self.trunc)
        return BiSeries._wrap({k: v * c for k, v in self.coeffs.items()}, self.trunc)

    def __mul__(self, other):
        if isinstance(other, UniSeries):
            return NotImplemented
        if not isinstance(other, BiSeries):
            return self.scale(other)
        return self.mul(other, min(self.trunc, other.trunc))

    __rmul__ = __mul__

    def mul(self, other, n):
        """Product truncated at total degree n (n must not exceed either input's trunc)."""
        by_deg = sorted(((k[0] + k[1], k, c) for k, c in other.coeffs.items()))
        out = {}
        for (i, j), a in self.coeffs.items():
            d = i + j
            if d > n:
                continue
            for e, (k, l), b in by_deg:
                if d + e > n:
                    break
                key = (i + k, j + l)
                s = out.get(key, ZERO) + a * b
                if is_zero(s):
                    out.pop(key, None)
                else:
                    out[key] = s
        return BiSeries._wrap(out, n)

    mul_to = mul

    def __truediv__(self, other):
        if isinstance(other, BiSeries):
            return self * other.reciprocal()
        return self.scale(inv(other))

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise SeriesError("series powers need a non-negative integer exponent")
        out = BiSeries.const(ONE, self.trunc)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def reciprocal(self):
        c0 = self.coeffs.get((0, 0), ZERO)
        if is_zero(c0):
            raise SeriesError("not a unit")
        ic = inv(c0)
        h = BiSeries.const(ONE, self.trunc) - self.scale(ic)  # order >= 1
        out = BiSeries.const(ONE, self.trunc)
        power = BiSeries.const(ONE, self.trunc)
        for _ in range(self.trunc):
            power = power * h
            if power.is_zero():
                break
            out = out + power
        return out.scale(ic)

    # truncation ----------------------------------------------------------------
    def jet(self, k):
        """Drop every term of degree > k; the result is known modulo m^(min(k, trunc)+1)."""
        n = min(k, self.trunc)
        return BiSeries._wrap(
            {key: c for key, c in self.coeffs.items() if key[0] + key[1] <= n}, n
        )

    def homogeneous(self, d):
        return {k: c for k, c in self.coeffs.items() if k[0] + k[1] == d}

    def order(self) -> OrderResult:
        if not self.coeffs:
            return OrderResult.AtLeast(self.trunc + 1)
        return OrderResult.Exact(min(i + j for i, j in self.coeffs))

    def is_zero(self):
        return not self.coeffs

    def coeff(self, i, j):
        return self.coeffs.get((i, j), ZERO)

    def constant_term(self):
        return self.coeff(0, 0)

    def linear_part(self):
        """(coefficient of x, coefficient of y)."""
        return self.coeff(1, 0), self.coeff(0, 1)

    # calculus -------------------------------------------------------------------
    def diff(self, var):
        """Partial derivative; the result is known to one degree less."""
        out = {}
        for (i, j), c in self.coeffs.items():
            if var == "x" and i:
                out[(i - 1, j)] = c * i
            elif var == "y" and j:
                out[(i, j - 1)] = c * j
        return BiSeries._wrap(out, max(self.trunc - 1, 0))

    # composition ----------------------------------------------------------------
    def _by_x_power(self):
        rows = {}
        for (i, j), c in self.coeffs.items():
            rows.setdefault(i, {})[j] = c
        return rows

    def compose(self, u, v):
        """f(u, v) for u, v in m; known modulo m^(min trunc + 1)."""
        for name, s in (("u", u), ("v", v)):
            if not is_zero(s.constant_term()):
                raise SeriesError(f"composition argument {name} has a nonzero constant term")
        n = min(self.trunc, u.trunc, v.trunc)
        return _horner(self._by_x_power(), u.jet(n), v.jet(n), n, BiSeries)

    def substitute(self, xt, yt):
        """f(x(t), y(t)) as a UniSeries; x(t), y(t) must lie in (t)."""
        for s in (xt, yt):
            if not is_zero(s.coeff(0)):
                raise SeriesError("substitution not in m")
        m = min(xt.ordlb(), yt.ordlb())
        n = min(xt.trunc, yt.trunc, (self.trunc + 1) * m - 1)
        return _horner(self._by_x_power(), xt.jet(n), yt.jet(n), n, UniSeries)

    # comparison / display ------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.trunc, frozenset(self.coeffs.items())))

    def agrees(self, other, k=None):
        """Equal as jets up to degree k (default: the common truncation)."""
        n = min(self.trunc, other.trunc) if k is None else k
        return self.jet(n).coeffs == other.jet(n).coeffs

    def sorted_terms(self):
        return sorted(self.coeffs.items(), key=lambda kv: (kv[0][0] + kv[0][1], -kv[0][0]))

    def format(self, names=("x", "y")):
        items = []
        for (i, j), c in self.sorted_terms():
            mono = "*".join(
                _pow_str(v, e) for v, e in ((names[0], i), (names[1], j)) if e
            )
            items.append((c, mono))
        return _fmt_terms(items)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"BiSeries({self.format()!r}, trunc={self.trunc})"


def _horner(rows, u, v, n, kind):
    """Evaluate sum_i u^i * (sum_j c_ij v^j) with Horner's rule in u."""
    if not rows:
        return kind.zero(n)
    maxj = max(max(r) for r in rows.values())
    vpow = [kind.const(ONE, n)]
    for _ in range(maxj):
        vpow.append(vpow[-1].mul_to(v, n))

    def lincomb(row):
        out = {}
        for j, c in row.items():
            for k, a in vpow[j].coeffs.items():
                s = out.get(k, ZERO) + c * a
                if is_zero(s):
                    out.pop(k, None)
                else:
                    out[k] = s
        return kind._wrap(out, n)

    acc = kind.zero(n)
    for i in range(max(rows), -1, -1):
        if i != max(rows):
            acc = acc.mul_to(u, n)
        if i in rows:
            acc = acc + lincomb(rows[i])
    return acc


class UniSeries:
    """f(t) modulo t^(trunc+1), stored as a sparse {n: coeff} map."""

    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs=None, trunc=DEFAULT_TRUNC):
        if trunc < 0:
            raise SeriesError("negative truncation")
        coeffs = coeffs or {}
        if isinstance(coeffs, (list, tuple)):
            coeffs = dict(enumerate(coeffs))
        self.trunc = trunc
        self.coeffs = _clean({k: coerce(c) for k, c in coeffs.items()}, lambda k: k <= trunc)

    @classmethod
    def _wrap(cls, coeffs, trunc):
        self = object.__new__(cls)
        self.coeffs = coeffs
        self.trunc = trunc
        return self

    @classmethod
    def zero(cls, trunc=DEFAULT_TRUNC):
        return cls._wrap({}, trunc)

    @classmethod
    def const(cls, c, trunc=DEFAULT_TRUNC):
        return cls({0: c}, trunc)

    @classmethod
    def t(cls, trunc=DEFAULT_TRUNC):
        return cls({1: ONE}, trunc)

    @classmethod
    def monomial(cls, n, c=ONE, trunc=DEFAULT_TRUNC):
        return cls({n: c}, trunc)

    def coeff(self, n):
        return self.coeffs.get(n, ZERO)

    def order(self) -> OrderResult:
        if not self.coeffs:
            return OrderResult.AtLeast(self.trunc + 1)
        return OrderResult.Exact(min(self.coeffs))

    def ordlb(self):
        """Certain lower bound for the order of the true series."""
        return min(self.coeffs) if self.coeffs else self.trunc + 1

    def is_zero(self):
        return not self.coeffs

    def jet(self, k):
        n = min(k, self.trunc)
        return UniSeries._wrap({e: c for e, c in self.coeffs.items() if e <= n}, n)

    def _lift(self, other):
        if isinstance(other, UniSeries):
            return other
        return UniSeries.const(other, self.trunc)

    def __add__(self, other):
        if isinstance(other, BiSeries):
            return NotImplemented
        other = self._lift(other)
        n = min(self.trunc, other.trunc)
        out = {e: c for e, c in self.coeffs.items() if e <= n}
        for e, c in other.coeffs.items():
            if e > n:
                continue
            s = out.get(e, ZERO) + c
            if is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return UniSeries._wrap(out, n)

    __radd__ = __add__

    def __neg__(self):
        return UniSeries._wrap({e: -c for e, c in self.coeffs.items()}, self.trunc)

    def __sub__(self, other):
        if isinstance(other, BiSeries):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = coerce(c)
        if is_zero(c):
            return UniSeries.zero(self.trunc)
        return UniSeries._wrap({e: v * c for e, v in self.coeffs.items()}, self.trunc)

    def __mul__(self, other):
        if isinstance(other, BiSeries):
            return NotImplemented
        if not isinstance(other, UniSeries):
            return self.scale(other)
        # order-aware: f = F + O(t^(Nf+1)) with ord >= a, g likewise
        n = min(self.trunc + other.ordlb(), other.trunc + self.ordlb())
        return self.mul_to(other, n)

    __rmul__ = __mul__

    def mul_to(self, other, n):
        """Product with coefficients kept up to t^n (caller vouches for precision)."""
        b_items = sorted(other.coeffs.items())
        out = {}
        for i, a in self.coeffs.items():
            if i > n:
                continue
            for j, b in b_items:
                if i + j > n:
                    break
                s = out.get(i + j, ZERO) + a * b
                if is_zero(s):
                    out.pop(i + j, None)
                else:
                    out[i + j] = s
        return UniSeries._wrap(out, n)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise SeriesError("series powers need a non-negative integer exponent")
        out = UniSeries.const(ONE, self.trunc)
        for _ in range(k):
            out = out * self
        return out

    def reciprocal(self):
        c0 = self.coeff(0)
        if is_zero(c0):
            raise SeriesError("not a unit")
        n = self.trunc
        ic = inv(c0)
        g = {0: ic}
        for d in range(1, n + 1):
            s = ZERO
            for e, c in self.coeffs.items():
                if 0 < e <= d and (d - e) in g:
                    s = s + c * g[d - e]
            if not is_zero(s):
                g[d] = -s * ic
        return UniSeries._wrap(g, n)

    def __truediv__(self, other):
        if isinstance(other, UniSeries):
            return self.divide(other)
        return self.scale(inv(other))

    def shift_down(self, m):
        """Divide by t^m; every coefficient below t^m must vanish."""
        if any(e < m for e in self.coeffs):
            raise SeriesError(f"not divisible by t^{m}")
        if m > self.trunc + 1:
            raise SeriesError("depth limit")
        return UniSeries._wrap({e - m: c for e, c in self.coeffs.items()}, self.trunc - m)

    def divide(self, other):
        """Exact quotient self/other where ord(other) = m <= ord(self)."""
        o = other.order()
        if not o.exact:
            raise SeriesError("depth limit")
        m = o.n
        if self.ordlb() < m:
            raise SeriesError("quotient is not a power series")
        num = self.shift_down(m) if m <= self.trunc else UniSeries.zero(0)
        den = other.shift_down(m)
        n = min(num.trunc, den.trunc)
        return num.jet(n).mul_to(den.jet(n).reciprocal(), n)

    def derivative(self):
        return UniSeries._wrap(
            {e - 1: c * e for e, c in self.coeffs.items() if e}, max(self.trunc - 1, 0)
        )

    def compose(self, g):
        """self(g(t)) for g in (t)."""
        if not is_zero(g.coeff(0)):
            raise SeriesError("substitution not in m")
        m = g.ordlb()
        n = min(g.trunc, (self.trunc + 1) * m - 1)
        g = g.jet(n)
        acc = UniSeries.zero(n)
        top = max(self.coeffs, default=0)
        for e in range(top, -1, -1):
            if e != top:
                acc = acc.mul_to(g, n)
            c = self.coeffs.get(e)
            if c is not None:
                acc = acc + UniSeries._wrap({0: c}, n)
        return acc

    def unit_power(self, r):
        """(1 + h)^r for a unit with constant term 1 and rational exponent r."""
        if self.coeff(0) != 1:
            raise SeriesError("unit_power needs constant term 1")
        r = mpq(r)
        n = self.trunc
        # g' f = r f' g, solved coefficientwise
        g = {0: ONE}
        for d in range(1, n + 1):
            s = ZERO
            for e, c in self.coeffs.items():
                if 0 < e <= d and (d - e) in g:
                    s = s + c * g[d - e] * (r * e - (d - e))
            if not is_zero(s):
                g[d] = s / d
        return UniSeries._wrap(g, n)

    def reversion(self):
        """Compositional inverse of a series of order exactly 1."""
        if not self.coeffs or min(self.coeffs) != 1:
            raise SeriesError("reversion needs order exactly 1")
        n = self.trunc
        # Lagrange: [s^k] inverse = (1/k) [t^(k-1)] (t / self)^k
        q = self.shift_down(1).reciprocal()
        out = {}
        power = UniSeries.const(ONE, q.trunc)
        for k in range(1, n + 1):
            power = power.mul_to(q, n - 1)
            c = power.coeff(k - 1)
            if not is_zero(c):
                out[k] = c / k
        return UniSeries._wrap(out, n)

    def __eq__(self, other):
        if not isinstance(other, UniSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.trunc, frozenset(self.coeffs.items())))

    def agrees(self, other, k=None):
        n = min(self.trunc, other.trunc) if k is None else k
        return self.jet(n).coeffs == other.jet(n).coeffs

    def format(self, name="t"):
        items = [(c, _pow_str(name, e) if e else "") for e, c in sorted(self.coeffs.items())]
        return _fmt_terms(items)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"UniSeries({self.format()!r}, trunc={self.trunc})"


def binomial(n, k):
    return mpq(comb(n, k))
