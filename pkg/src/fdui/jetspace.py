"""Jet groups D_k and derivation algebras L_k as exact matrices.

Both act on m/m^(k+1) with the monomial basis in graded-lex order
(x, y, x^2, xy, y^2, x^3, ...).  Columns hold images of basis monomials, so a
diffeomorphism phi maps to the matrix of f -> f o phi and composition is
reversed: project(phi o eta) = project(eta) @ project(phi).
"""
from __future__ import annotations

from functools import lru_cache

from gmpy2 import mpq

from .diffeo import FormalDiffeo
from .scalar import ONE, ZERO, is_zero, to_str
from .series import BiSeries


class JetError(ValueError):
    pass


@lru_cache(maxsize=None)
def basis(k):
    """Monomials (i, j) of degree 1..k, graded, x-heavy first within a degree."""
    return tuple((i, d - i) for d in range(1, k + 1) for i in range(d, -1, -1))


@lru_cache(maxsize=None)
def _index(k):
    return {m: r for r, m in enumerate(basis(k))}


def dimension(k):
    return k * (k + 3) // 2


# ---------------------------------------------------------------------------
# small exact matrix kit; matrices are tuples of row tuples


def identity(n):
    return tuple(tuple(ONE if r == c else ZERO for c in range(n)) for r in range(n))


def zeros(n):
    return tuple((ZERO,) * n for _ in range(n))


def matmul(a, b):
    m = len(b[0]) if b else 0
    # walk nonzeros of a row against rows of b
    b_rows = [[(c, v) for c, v in enumerate(row) if not is_zero(v)] for row in b]
    out = []
    for row in a:
        acc = [ZERO] * m
        for j, v in enumerate(row):
            if is_zero(v):
                continue
            for c, w in b_rows[j]:
                acc[c] = acc[c] + v * w
        out.append(tuple(acc))
    return tuple(out)


def matvec(a, v):
    return tuple(
        sum((x * y for x, y in zip(row, v) if not is_zero(x) and not is_zero(y)), ZERO)
        for row in a
    )


def matadd(a, b, s=ONE):
    return tuple(tuple(x + s * y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def matscale(a, s):
    return tuple(tuple(x * s for x in row) for row in a)


def is_zero_matrix(a):
    return all(is_zero(x) for row in a for x in row)


def _nilpotent_powers(n_mat):
    """[N, N^2, ...] up to the last nonzero power; None if N is not nilpotent."""
    dim = len(n_mat)
    powers = []
    p = n_mat
    for _ in range(dim + 1):
        if is_zero_matrix(p):
            return powers
        powers.append(p)
        p = matmul(p, n_mat)
    return None


# ---------------------------------------------------------------------------


def _coords(f: BiSeries, k):
    idx = _index(k)
    vec = [ZERO] * len(idx)
    for m, c in f.coeffs.items():
        r = idx.get(m)
        if r is not None:
            vec[r] = c
        elif m != (0, 0) and m[0] + m[1] <= k:
            raise JetError("coordinate outside the basis")
    return vec


def _series(vec, k):
    return BiSeries({m: c for m, c in zip(basis(k), vec) if not is_zero(c)}, k)


def _from_columns(cols):
    n = len(cols)
    return tuple(tuple(cols[c][r] for c in range(n)) for r in range(n))


class _JetMatrix:
    __slots__ = ("level", "matrix")

    def __init__(self, level, matrix):
        d = dimension(level)
        if len(matrix) != d or any(len(r) != d for r in matrix):
            raise JetError(f"level {level} needs a {d}x{d} matrix")
        self.level = level
        self.matrix = tuple(tuple(r) for r in matrix)

    def column(self, c):
        return [row[c] for row in self.matrix]

    def image(self, m):
        """Image of the basis monomial m = (i, j) as a series of trunc `level`."""
        return _series(self.column(_index(self.level)[m]), self.level)

    def apply(self, f: BiSeries) -> BiSeries:
        vec = _coords(f.jet(self.level), self.level)
        return _series(matvec(self.matrix, vec), self.level)

    def __eq__(self, other):
        return type(self) is type(other) and self.level == other.level and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.level, self.matrix))

    def to_json(self):
        return {
            "k": self.level,
            "basis": [monomial_name(m) for m in basis(self.level)],
            "matrix": [[to_str(x) for x in row] for row in self.matrix],
        }


def monomial_name(m):
    i, j = m
    parts = [v if e == 1 else f"{v}^{e}" for v, e in (("x", i), ("y", j)) if e]
    return "*".join(parts)


class JetAutomorphism(_JetMatrix):
    """An algebra automorphism of m/m^(k+1)."""

    __slots__ = ()

    def __matmul__(self, other):
        return JetAutomorphism(self.level, matmul(self.matrix, other.matrix))

    def is_multiplicative(self):
        k = self.level
        for f in basis(k):
            for g in basis(k):
                if f[0] + f[1] + g[0] + g[1] > k:
                    continue
                fg = (f[0] + g[0], f[1] + g[1])
                if self.image(fg) != (self.image(f) * self.image(g)):
                    return False
        return True

    def is_unipotent(self):
        n = matadd(self.matrix, identity(len(self.matrix)), -ONE)
        return _nilpotent_powers(n) is not None

    def to_diffeo(self) -> FormalDiffeo:
        """The k-jet of the diffeomorphism read from the images of x and y."""
        return FormalDiffeo(self.image((1, 0)), self.image((0, 1)))


class JetDerivation(_JetMatrix):
    """A derivation of m/m^(k+1)."""

    __slots__ = ()

    def is_leibniz(self):
        k = self.level
        for f in basis(k):
            for g in basis(k):
                if f[0] + f[1] + g[0] + g[1] > k:
                    continue
                fg = (f[0] + g[0], f[1] + g[1])
                fs, gs = _series(_unit(k, f), k), _series(_unit(k, g), k)
                if self.image(fg) != self.image(f) * gs + fs * self.image(g):
                    return False
        return True

    def is_nilpotent(self):
        return _nilpotent_powers(self.matrix) is not None

    def scale(self, s):
        return JetDerivation(self.level, matscale(self.matrix, mpq(s) if isinstance(s, int) else s))

    def __add__(self, other):
        return JetDerivation(self.level, matadd(self.matrix, other.matrix))

    def to_vfield(self):
        from .vfield import FormalVectorField

        return FormalVectorField(self.image((1, 0)), self.image((0, 1)))


def _unit(k, m):
    vec = [ZERO] * dimension(k)
    vec[_index(k)[m]] = ONE
    return vec


# ---------------------------------------------------------------------------


def _monomial_images(px: BiSeries, py: BiSeries, k):
    """x^i y^j o (px, py) for every basis monomial, truncated to degree k."""
    powx = [BiSeries.const(ONE, k)]
    powy = [BiSeries.const(ONE, k)]
    for _ in range(k):
        powx.append(powx[-1].mul(px, k))
        powy.append(powy[-1].mul(py, k))
    return {(i, j): powx[i].mul(powy[j], k) for (i, j) in basis(k)}


def project_diffeo(phi: FormalDiffeo, k) -> JetAutomorphism:
    if k < 1:
        raise JetError("level must be >= 1")
    if k > phi.trunc:
        raise JetError(f"level {k} exceeds truncation {phi.trunc}")
    px, py = phi.comp_x.jet(k), phi.comp_y.jet(k)
    images = _monomial_images(px, py, k)
    cols = [_coords(images[m], k) for m in basis(k)]
    return JetAutomorphism(k, _from_columns(cols))


def project_vfield(X, k) -> JetDerivation:
    if k < 1:
        raise JetError("level must be >= 1")
    if k > X.trunc:
        raise JetError(f"level {k} exceeds truncation {X.trunc}")
    Xk = X.jet(k)
    cols = [_coords(Xk.apply(BiSeries.monomial(i, j, ONE, k)).jet(k), k) for (i, j) in basis(k)]
    return JetDerivation(k, _from_columns(cols))


def truncate_level(A, l):
    if l > A.level:
        raise JetError(f"cannot raise level {A.level} to {l}")
    if l < 1:
        raise JetError("level must be >= 1")
    d = dimension(l)
    return type(A)(l, tuple(row[:d] for row in A.matrix[:d]))


def exp_jet(D: JetDerivation) -> JetAutomorphism:
    powers = _nilpotent_powers(D.matrix)
    if powers is None:
        raise JetError("exp restricted to nilpotent derivations")
    n = len(D.matrix)
    out = identity(n)
    fact = ONE
    for m, p in enumerate(powers, start=1):
        fact = fact * m
        out = matadd(out, p, ONE / fact)
    return JetAutomorphism(D.level, out)


def log_jet(A: JetAutomorphism) -> JetDerivation:
    n = len(A.matrix)
    nil = matadd(A.matrix, identity(n), -ONE)
    powers = _nilpotent_powers(nil)
    if powers is None:
        raise JetError("log needs a unipotent jet automorphism")
    out = zeros(n)
    for m, p in enumerate(powers, start=1):
        out = matadd(out, p, mpq((-1) ** (m + 1), m))
    return JetDerivation(A.level, out)


def log_columns(A: JetAutomorphism, monomials):
    """log(A) applied to a few basis monomials, without forming log(A).

    Iterates v -> (A - I) v, which is all a caller needs when only the images
    of x and y matter.
    """
    n = len(A.matrix)
    rows = [[(c, v) for c, v in enumerate(row) if not is_zero(v)] for row in A.matrix]
    out = {}
    for mono in monomials:
        v = _unit(A.level, mono)
        acc = [ZERO] * n
        for m in range(1, n + 2):
            w = []
            for r in range(n):
                s = -v[r]
                for c, a in rows[r]:
                    if not is_zero(v[c]):
                        s = s + a * v[c]
                w.append(s)
            v = w
            if all(is_zero(x) for x in v):
                break
            coef = mpq((-1) ** (m + 1), m)
            acc = [a + coef * b for a, b in zip(acc, v)]
        else:
            raise JetError("log needs a unipotent jet automorphism")
        out[mono] = _series(acc, A.level)
    return out
