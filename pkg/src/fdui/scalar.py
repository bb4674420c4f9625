"""Exact coefficients in Q(i)(e).

Rational values are carried as plain ``gmpy2.mpq`` objects, which keeps the
common case fast.  Anything involving ``i`` or the transcendental ``e`` is a
:class:`Scalar`: a reduced quotient of two polynomials in ``e`` whose
coefficients are Gaussian rationals.  Every operation normalizes its result,
so a value that happens to be rational always comes back as an ``mpq`` and
equality is plain structural equality.
"""
from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq

ZERO = mpq(0)
ONE = mpq(1)

# ---------------------------------------------------------------------------
# Gaussian rationals as (re, im) pairs, and polynomials over them as tuples of
# pairs, lowest degree first, without trailing zeros.

_GZERO = (ZERO, ZERO)
_GONE = (ONE, ZERO)


def _g_add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _g_sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _g_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _g_inv(a):
    d = a[0] * a[0] + a[1] * a[1]
    if d == 0:
        raise ZeroDivisionError("division by zero")
    return (a[0] / d, -a[1] / d)


def _g_iszero(a):
    return a[0] == 0 and a[1] == 0


def _p_trim(p):
    p = list(p)
    while p and _g_iszero(p[-1]):
        p.pop()
    return tuple(p)


def _p_add(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] = _g_add(out[i], c)
    return _p_trim(out)


def _p_neg(p):
    return tuple((-c[0], -c[1]) for c in p)


def _p_sub(p, q):
    return _p_add(p, _p_neg(q))


def _p_mul(p, q):
    if not p or not q:
        return ()
    out = [_GZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if _g_iszero(a):
            continue
        for j, b in enumerate(q):
            out[i + j] = _g_add(out[i + j], _g_mul(a, b))
    return _p_trim(out)


def _p_scale(p, c):
    return _p_trim(tuple(_g_mul(a, c) for a in p))


def _p_divmod(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    inv_lead = _g_inv(q[-1])
    quot = [_GZERO] * max(len(p) - len(q) + 1, 0)
    while len(rem) >= len(q) and rem:
        shift = len(rem) - len(q)
        c = _g_mul(rem[-1], inv_lead)
        quot[shift] = c
        for j, b in enumerate(q):
            rem[shift + j] = _g_sub(rem[shift + j], _g_mul(c, b))
        rem = list(_p_trim(rem))
    return _p_trim(quot), tuple(rem)


def _p_monic(p):
    return _p_scale(p, _g_inv(p[-1]))


def _p_gcd(p, q):
    while q:
        p, q = q, _p_divmod(p, q)[1]
    return _p_monic(p) if p else p


_PONE = (_GONE,)


def _normalize(num, den):
    """Reduce num/den and collapse to mpq when the value is rational."""
    if not den:
        raise ZeroDivisionError("division by zero")
    if not num:
        return ZERO
    if len(den) > 1:
        g = _p_gcd(num, den)
        if len(g) > 1:
            num = _p_divmod(num, g)[0]
            den = _p_divmod(den, g)[0]
    if den[-1] != _GONE:
        inv = _g_inv(den[-1])
        num = _p_scale(num, inv)
        den = _p_scale(den, inv)
    if len(den) == 1 and len(num) == 1 and num[0][1] == 0:
        return num[0][0]
    return Scalar._raw(num, den)


def _as_parts(v):
    if isinstance(v, Scalar):
        return v.num, v.den
    q = coerce(v)
    return ((q, ZERO),), _PONE


class Scalar:
    """An element of Q(i)(e) that is not a plain rational.

    Build instances through :data:`I`, :data:`EPS`, :func:`gaussian` or
    arithmetic; the constructor is private because it skips normalization.
    """

    __slots__ = ("num", "den", "_hash")

    @classmethod
    def _raw(cls, num, den):
        self = object.__new__(cls)
        self.num = num
        self.den = den
        self._hash = None
        return self

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        if not _is_scalar_like(other):
            return NotImplemented
        n2, d2 = _as_parts(other)
        n1, d1 = self.num, self.den
        if d1 == _PONE and d2 == _PONE:
            return _normalize(_p_add(n1, n2), _PONE)
        return _normalize(_p_add(_p_mul(n1, d2), _p_mul(n2, d1)), _p_mul(d1, d2))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(_p_neg(self.num), self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not _is_scalar_like(other):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if not _is_scalar_like(other):
            return NotImplemented
        return (-self) + other

    def __mul__(self, other):
        if not _is_scalar_like(other):
            return NotImplemented
        n2, d2 = _as_parts(other)
        if d2 == _PONE and len(n2) == 1 and n2[0][1] == 0:
            q = n2[0][0]
            if q == 0:
                return ZERO
            return Scalar._raw(_p_scale(self.num, (q, ZERO)), self.den)
        if self.den == _PONE and d2 == _PONE:
            return _normalize(_p_mul(self.num, n2), _PONE)
        return _normalize(_p_mul(self.num, n2), _p_mul(self.den, d2))

    __rmul__ = __mul__

    def inverse(self):
        return _normalize(self.den, self.num)

    def __truediv__(self, other):
        if not _is_scalar_like(other):
            return NotImplemented
        return self * inv(other)

    def __rtruediv__(self, other):
        if not _is_scalar_like(other):
            return NotImplemented
        return self.inverse() * other

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # comparison ------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.num == other.num and self.den == other.den
        if _is_scalar_like(other):
            return False  # normalized Scalars are never rational
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return True

    # introspection -------------------------------------------------------
    @property
    def has_eps(self):
        return len(self.num) > 1 or len(self.den) > 1

    def __repr__(self):
        return f"Scalar({to_str(self)!r})"

    def __str__(self):
        return to_str(self)


def _is_scalar_like(v):
    return isinstance(v, (Scalar, int, Fraction)) or type(v) is type(ONE)


def coerce(v):
    """Turn an int/Fraction/mpq/Scalar into the canonical coefficient type."""
    if isinstance(v, Scalar):
        return v
    if type(v) is type(ONE):
        return v
    if isinstance(v, (int, Fraction)):
        return mpq(v)
    raise TypeError(f"not a scalar: {v!r}")


def gaussian(re, im=0):
    """re + im*i with rational parts."""
    return _normalize(((mpq(re), mpq(im)),), _PONE)


I = gaussian(0, 1)
EPS = Scalar._raw((_GZERO, _GONE), _PONE)


def is_zero(a):
    return not isinstance(a, Scalar) and a == 0


def inv(a):
    if isinstance(a, Scalar):
        return a.inverse()
    a = coerce(a)
    if a == 0:
        raise ZeroDivisionError("division by zero")
    return ONE / a


def is_rational(a):
    return not isinstance(a, Scalar)


def field_ops():
    """Name -> callable map of the field operations (add, sub, mul, div, neg, is_zero)."""
    import operator

    return {
        "add": operator.add,
        "sub": operator.sub,
        "mul": operator.mul,
        "div": lambda a, b: a * inv(b),
        "neg": operator.neg,
        "is_zero": is_zero,
    }


# ---------------------------------------------------------------------------
# printing; output is accepted back by the expression parser.


def _rat_str(q):
    return str(mpq(q))


def _gauss_str(re, im):
    if im == 0:
        return _rat_str(re)
    if im == 1:
        ims = "i"
    elif im == -1:
        ims = "-i"
    else:
        ims = _rat_str(im) + "i"
    if re == 0:
        return ims
    sep = "" if ims.startswith("-") else "+"
    return f"{_rat_str(re)}{sep}{ims}"


def _is_compound(s):
    body = s[1:]
    return "+" in body or "-" in body


def _poly_str(p):
    if not p:
        return "0"
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if _g_iszero(c):
            continue
        cs = _gauss_str(*c)
        if k == 0:
            terms.append(cs)
            continue
        mono = "e" if k == 1 else f"e^{k}"
        if cs == "1":
            terms.append(mono)
        elif cs == "-1":
            terms.append("-" + mono)
        else:
            if _is_compound(cs) or "/" in cs:
                cs = f"({cs})"
            terms.append(f"{cs}*{mono}")
    out = terms[0]
    for t in terms[1:]:
        out += t if t.startswith("-") else "+" + t
    return out


def to_str(a):
    """Exact text form, e.g. ``3/4``, ``2-3i``, ``3/4+1/2i``, ``e^2``."""
    if not isinstance(a, Scalar):
        return _rat_str(a)
    ns = _poly_str(a.num)
    if a.den == _PONE:
        return ns
    ds = _poly_str(a.den)
    if _is_compound(ns) or "*" in ns or "/" in ns:
        ns = f"({ns})"
    return f"{ns}/({ds})"


def needs_parens(s):
    """Whether a printed scalar must be wrapped before being used as a factor."""
    return _is_compound(s)
