import numpy as np
import pytest

from skewham.analysis import (
    REPORT_HEADER,
    VerificationReport,
    nilpotency_index,
    verify_dimension,
    verify_frobenius_min,
    verify_norm_equality,
    verify_projection_identity,
    verify_spectral_min,
)
from skewham.errors import OrthonormalityViolation
from skewham.lagrangian import OrderedBasis, random_lagrangian_onb
from skewham.realization import (
    SkewParam,
    family_element,
    min_norm_realizer,
    realization_family,
)
from skewham.linalg import frobenius_norm

from helpers import mixed_basis, random_basis

E4 = np.eye(4)


def test_report_csv_row():
    report = VerificationReport(
        name="demo", n=3, seed=7, defect=0.5, threshold=1.0, passed=True, trials=10
    )
    assert REPORT_HEADER == "name,n,seed,defect,threshold,passed,trials"
    assert report.csv_row() == "demo,3,7,0.5,1,true,10"


@pytest.mark.parametrize("n,seed", [(1, 0), (2, 1), (3, 2), (4, 3), (8, 4)])
def test_verify_frobenius_min_passes(n, seed):
    report = verify_frobenius_min(random_basis(n, seed), trials=100, seed=seed)
    assert report.passed
    assert report.trials == 100
    assert report.n == n


def test_frobenius_identity_is_scale_free():
    fam = realization_family(random_basis(3, 1))
    base = frobenius_norm(fam.min_norm)
    rng = np.random.default_rng(0)
    s = rng.standard_normal((4, 4))
    for scale in (1.0, 1e6):
        h = family_element(fam, SkewParam(scale * s))
        hn = frobenius_norm(h)
        cross = abs(hn**2 - base**2 - frobenius_norm(h - fam.min_norm) ** 2)
        assert cross <= 1e-10 * hn**2
        assert base <= hn + 1e-12 * base


@pytest.mark.parametrize("n,seed", [(1, 0), (2, 1), (4, 2), (8, 3)])
def test_verify_spectral_min_passes(n, seed):
    assert verify_spectral_min(random_basis(n, seed), trials=100, seed=seed).passed
    assert verify_spectral_min(random_lagrangian_onb(n, seed), trials=50).passed


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 3), (4, 10), (8, 36)])
def test_verify_dimension_matches_formula(n, expected):
    fam = realization_family(random_basis(n, n))
    assert fam.dim == expected
    report = verify_dimension(fam.basis, trials=5, seed=n)
    assert report.passed


def test_verify_projection_identity_hand_example():
    basis = OrderedBasis(E4[:, :2])
    h = min_norm_realizer(basis)
    assert np.array_equal(h.T @ h, np.diag([1.0, 0.0, 0.0, 1.0]))
    assert verify_projection_identity(basis).passed


def test_verify_projection_identity_random_and_errors():
    assert verify_projection_identity(random_lagrangian_onb(8, 2)).passed
    scaled = OrderedBasis(2.0 * E4[:, :2])
    with pytest.raises(OrthonormalityViolation):
        verify_projection_identity(scaled)


@pytest.mark.parametrize("n,seed", [(1, 0), (2, 1), (4, 2), (8, 3)])
def test_verify_norm_equality_passes(n, seed):
    assert verify_norm_equality(random_basis(n, seed)).passed
    assert verify_norm_equality(mixed_basis(max(n, 2), seed + 50)).passed


def test_verify_norm_equality_scaled_columns():
    scaled = OrderedBasis(np.column_stack([E4[:, 0], 2.0 * E4[:, 1]]))
    assert verify_norm_equality(scaled).passed


def test_nilpotency_index_examples():
    assert nilpotency_index(np.zeros((4, 4))) == 1
    assert nilpotency_index(min_norm_realizer(OrderedBasis(E4[:, :2]))) == 2
    assert nilpotency_index(np.eye(4)) is None
    with pytest.raises(ValueError):
        nilpotency_index(np.zeros((2, 3)))


@pytest.mark.parametrize("n", [2, 3, 5])
def test_nilpotency_index_of_min_norm_realizer(n):
    h = min_norm_realizer(random_lagrangian_onb(n, n))
    assert nilpotency_index(h) == n
    assert frobenius_norm(np.linalg.matrix_power(h, n - 1)) > 1e-6


def test_verifier_inputs_validated():
    basis = random_basis(2, 0)
    with pytest.raises(ValueError):
        verify_frobenius_min(basis, trials=0)
    with pytest.raises(ValueError):
        verify_dimension(basis, trials=0)
