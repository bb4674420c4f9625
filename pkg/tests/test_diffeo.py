import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from fdui.diffeo import (
    GENERAL, TANGENT_TO_IDENTITY, UNIPOTENT, DiffeoError, FormalDiffeo, classify, commutator,
    compose, invert, pullback, shift,
)
from fdui.scalar import EPS
from fdui.series import BiSeries
from strategies import bi_series, diffeos

N = 10
x, y = BiSeries.x(N), BiSeries.y(N)
Id = FormalDiffeo.identity(N)


def D(a, b):
    return FormalDiffeo(a, b)


def test_shear_doubling():
    assert compose(D(x, y + x), D(x, y + x)) == D(x, y + 2 * x)


def test_identity_law():
    phi = D(x + y * y, y + x ** 3)
    assert compose(phi, Id) == phi and compose(Id, phi) == phi


def test_compose_with_eps():
    # direct substitution: y -> y + e x, then add x^2
    assert compose(D(x, y + x * x), D(x, y + x.scale(EPS))) == D(x, y + x.scale(EPS) + x * x)


@pytest.mark.parametrize("phi,inverse", [
    (D(x, y + x * x), D(x, y - x * x)),
    (D(2 * x, 3 * y), D(x.scale(mpq(1, 2)), y.scale(mpq(1, 3)))),
    (D(x + y * y, y), D(x - y * y, y)),
])
def test_inverse_examples(phi, inverse):
    assert invert(phi) == inverse
    assert compose(phi, inverse) == Id


@pytest.mark.parametrize("phi,kind", [
    (D(x, y + x * x), TANGENT_TO_IDENTITY),
    (D(x + y, y), UNIPOTENT),
    (D(2 * x, y), GENERAL),
])
def test_classify(phi, kind):
    assert classify(phi) == kind


def test_non_invertible_linear_part():
    with pytest.raises(DiffeoError):
        D(x + y, x + y)
    with pytest.raises(DiffeoError):
        D(x + 1, y)


def test_commutator_trivial_cases():
    phi = D(2 * x + y * y, y)
    assert commutator(phi, phi) == Id
    # both in the abelian shift group
    assert commutator(D(x, y + x), D(x, y + x * x)) == Id


def test_commutator_four_compositions():
    # hand composition: phi eta = (2x, y + x^2); then o phi^-1 = (x, y + x^2/4);
    # then o eta^-1 = (x, y - x^2 + x^2/4)
    phi, eta = D(2 * x, y), D(x, y + x * x)
    expected = D(x, y + x.scale(mpq(1, 4)) * x - x * x)
    assert commutator(phi, eta) == expected
    assert expected.comp_y.coeff(2, 0) == mpq(-3, 4)


@pytest.mark.parametrize("f,phi,expected", [
    (y, D(x, y + x ** 3), y + x ** 3),
    (x, Id, x),
    (y - x * x, D(x, y + x * x), y),
])
def test_pullback(f, phi, expected):
    assert pullback(f, phi) == expected


def test_shift_needs_function_of_x():
    assert shift(x ** 3) == D(x, y + x ** 3)
    with pytest.raises(Exception):
        shift(y)


def test_fixes_direction():
    assert D(x, y + x * x).fixes_direction((0, 1))
    # the shear fixes {x = 0} and sends {y = 0} to {y = x}
    assert D(x, y + x).fixes_direction((1, 0))
    assert not D(x, y + x).fixes_direction((0, 1))


# -- group laws -----------------------------------------------------------------

small = diffeos


@given(small, small, small)
def test_associative(a, b, c):
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@given(small)
def test_inverse_both_sides(a):
    ai = invert(a)
    assert compose(a, ai).is_identity() and compose(ai, a).is_identity()


@given(small, small, st.integers(1, 6))
def test_jet_composition_law(a, b, k):
    assert compose(a, b).jet(k) == compose(a.jet(k), b.jet(k)).jet(k)


@given(small, small, bi_series(trunc=8))
def test_pullback_contravariant(a, b, f):
    # f o (a o b) = (f o a) o b
    assert pullback(f, compose(a, b)).agrees(pullback(pullback(f, a), b))


@given(small, small)
def test_commutator_inverse(a, b):
    assert invert(commutator(a, b)) == commutator(b, a)
