import pytest
from hypothesis import given
from hypothesis import strategies as st

from fdui.diffeo import FormalDiffeo
from fdui.jetspace import (
    JetError, basis, dimension, exp_jet, identity, log_jet, project_diffeo, project_vfield,
    truncate_level, zeros,
)
from fdui.series import BiSeries
from fdui.vfield import FormalVectorField
from strategies import diffeos, nilpotent_fields, unipotents

N = 8
x, y = BiSeries.x(N), BiSeries.y(N)


def test_basis_order():
    assert basis(2) == ((1, 0), (0, 1), (2, 0), (1, 1), (0, 2))
    assert all(len(basis(k)) == dimension(k) for k in range(1, 7))


def test_identity_projects_to_identity():
    for k in (1, 3, 5):
        assert project_diffeo(FormalDiffeo.identity(N), k).matrix == identity(dimension(k))


def test_shear_level_two():
    A = project_diffeo(FormalDiffeo(x, y + x * x), 2)
    assert A.image((1, 0)) == BiSeries.x(2)
    assert A.image((0, 1)) == BiSeries({(0, 1): 1, (2, 0): 1}, 2)
    for m in ((2, 0), (1, 1), (0, 2)):
        assert A.image(m) == BiSeries({m: 1}, 2)


def test_project_vfield_examples():
    D = project_vfield(FormalVectorField(BiSeries.zero(N), x * x), 2)
    assert D.image((0, 1)) == BiSeries({(2, 0): 1}, 2)
    assert all(D.image(m).is_zero() for m in basis(2) if m != (0, 1))
    D1 = project_vfield(FormalVectorField(y, BiSeries.zero(N)), 1)
    assert D1.image((1, 0)) == BiSeries.y(1)
    assert D1.image((0, 1)).is_zero()


def test_level_above_truncation():
    with pytest.raises(JetError):
        project_diffeo(FormalDiffeo.identity(3), 4)
    A = project_diffeo(FormalDiffeo.identity(3), 3)
    with pytest.raises(JetError):
        truncate_level(A, 4)


def test_truncate_to_linear_part():
    phi = FormalDiffeo(2 * x + y + x * y, 3 * y + x ** 3)
    A = truncate_level(project_diffeo(phi, 3), 1)
    assert A.matrix == ((2, 0), (1, 3))  # columns: images of x and y
    B = project_diffeo(phi, 3)
    assert truncate_level(B, 3) == B


def test_exp_of_shear_generator():
    D = project_vfield(FormalVectorField(BiSeries.zero(N), x * x), 3)
    assert exp_jet(D) == project_diffeo(FormalDiffeo(x, y + x * x), 3)
    assert exp_jet(project_vfield(FormalVectorField.zero(N), 3)).matrix == identity(dimension(3))


def test_log_of_shear():
    A = project_diffeo(FormalDiffeo(x, y + x * x), 4)
    assert log_jet(A) == project_vfield(FormalVectorField(BiSeries.zero(N), x * x), 4)
    assert log_jet(project_diffeo(FormalDiffeo.identity(N), 4)).matrix == zeros(dimension(4))


def test_exp_log_domain_errors():
    with pytest.raises(JetError):
        exp_jet(project_vfield(FormalVectorField(x, y), 2))
    with pytest.raises(JetError):
        log_jet(project_diffeo(FormalDiffeo(2 * x, y), 2))


levels = st.integers(1, 4)


@given(diffeos, diffeos, levels)
def test_anti_homomorphism(a, b, k):
    assert project_diffeo(a.compose(b), k) == project_diffeo(b, k) @ project_diffeo(a, k)


@given(diffeos, levels)
def test_multiplicative(a, k):
    assert project_diffeo(a, k).is_multiplicative()


@given(nilpotent_fields, levels)
def test_leibniz(X, k):
    assert project_vfield(X, k).is_leibniz()


@given(diffeos, st.integers(1, 4), st.integers(1, 4))
def test_level_compatibility(a, k, l):
    k, l = max(k, l), min(k, l)
    assert truncate_level(project_diffeo(a, k), l) == project_diffeo(a, l)


@given(nilpotent_fields, levels)
def test_exp_log_inverse_on_derivations(X, k):
    D = project_vfield(X, k)
    assert log_jet(exp_jet(D)) == D


@given(unipotents, levels)
def test_log_exp_inverse_on_automorphisms(phi, k):
    A = project_diffeo(phi, k)
    assert exp_jet(log_jet(A)) == A


@given(nilpotent_fields, levels)
def test_exp_commutes_with_projection(X, k):
    assert exp_jet(project_vfield(X, k)) == project_diffeo(X.exp(), k)
