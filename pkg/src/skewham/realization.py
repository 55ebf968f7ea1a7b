"""Skew-Hamiltonian realizations of an isotropic basis as a Krylov sequence.

Given an ordered basis x_1, ..., x_n of a Lagrangian subspace, a realizer
is a skew-Hamiltonian matrix H with H x_k = x_(k+1) for k < n. The set of
realizers is an affine family of dimension n(n+1)/2: its minimum-norm
element plus corrections J.T @ P @ S @ P.T, where P spans the orthogonal
complement of the first n-1 basis vectors and S is skew-symmetric.

This module builds the minimum-norm realizer, parametrizes the family,
constructs realizers whose restriction to the subspace has prescribed
eigenvalues, and finds the family element nearest to an arbitrary matrix
in the Frobenius norm.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConjugationViolation, IsotropyViolation
from .lagrangian import OrderedBasis, is_isotropic
from .linalg import (
    DEFAULT_TOL,
    apply_j,
    apply_jt,
    as_matrix,
    is_skew_hamiltonian,
    orthonormal_complement,
    pinv,
    star_adjoint,
)

COND_WARN_LIMIT = 1e8


@dataclass(frozen=True)
class SkewParam:
    """Skew-symmetric parameter matrix selecting a family element.

    Only the strict lower triangle of the input is used; the rest is
    mirrored with opposite sign, so the stored matrix satisfies
    S.T == -S exactly.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if m.shape[0] != m.shape[1]:
            raise ValueError("parameter matrix must be square")
        low = np.tril(m, -1)
        m = low - low.T
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self):
        return self.matrix.shape[0]

    @classmethod
    def random(cls, dim, rng):
        return cls(rng.standard_normal((dim, dim)))


@dataclass(frozen=True)
class RealizationFamily:
    """The affine family of skew-Hamiltonian realizers of a basis.

    ``min_norm`` is the distinguished element of minimum Frobenius (and
    spectral) norm, ``complement`` holds orthonormal columns spanning the
    orthogonal complement of the first n-1 basis vectors (n+1 columns),
    and ``dim`` is the affine dimension n(n+1)/2.
    """

    basis: OrderedBasis
    min_norm: np.ndarray
    complement: np.ndarray

    @property
    def dim(self):
        n = len(self.basis)
        return n * (n + 1) // 2


@dataclass(frozen=True)
class MembershipResult:
    """Verdict of a membership test with its two measured residuals."""

    passed: bool
    krylov_residual: float
    skew_defect: float

    def __bool__(self):
        return self.passed


def _validated(basis, tol=DEFAULT_TOL):
    if not isinstance(basis, OrderedBasis):
        basis = OrderedBasis(as_matrix(basis))
    if len(basis) != basis.n:
        raise ValueError(
            "need a full basis of n vectors in R^(2n), got %d of %d"
            % (len(basis), basis.n)
        )
    iso = is_isotropic(basis.matrix, tol)
    if not iso.passed:
        raise IsotropyViolation(
            "basis is not isotropic (defect %.3e)" % iso.defect
        )
    return basis


def shift_factor(basis, tol=DEFAULT_TOL):
    """The matrix X_R @ pinv(X_L) sending each basis vector to the next.

    X_L drops the last basis vector and X_R drops the first. For a
    single-vector basis both are empty and the result is the zero matrix.
    """
    basis = _validated(basis, tol)
    xl = basis.left
    if xl.shape[1]:
        s = np.linalg.svd(xl, compute_uv=False)
        if s[-1] == 0.0 or s[0] / s[-1] > COND_WARN_LIMIT:
            warnings.warn(
                "leading basis columns are ill conditioned (cond %.2e); "
                "realizer residuals may degrade" % (s[0] / max(s[-1], 1e-300)),
                stacklevel=2,
            )
    return basis.right @ pinv(xl)


def min_norm_realizer(basis, tol=DEFAULT_TOL):
    """The realizer of minimum norm: K + K* with K the shift factor.

    The result is skew-Hamiltonian, maps x_k to x_(k+1) for k < n, and
    among all such matrices minimizes both the Frobenius norm and the
    spectral norm. For an orthonormal basis it is nilpotent of index n.
    """
    k = shift_factor(basis, tol)
    return k + star_adjoint(k)


def realization_family(basis, tol=DEFAULT_TOL):
    """Bundle the minimum-norm realizer with the family parametrization."""
    basis = _validated(basis, tol)
    return RealizationFamily(
        basis=basis,
        min_norm=min_norm_realizer(basis, tol),
        complement=orthonormal_complement(basis.left),
    )


def _skew_correction(p, s):
    # (m - m.T) / 2 is skew-symmetric bitwise, so J.T times it is exactly
    # skew-Hamiltonian and downstream defects vanish identically.
    m = p @ s @ p.T
    return apply_jt(0.5 * (m - m.T))


def family_element(fam, s):
    """The family element min_norm + J.T @ P @ S @ P.T for a SkewParam s."""
    if not isinstance(s, SkewParam):
        s = SkewParam(as_matrix(s))
    if s.dim != len(fam.basis) + 1:
        raise ValueError(
            "parameter must be %d x %d, got %d"
            % (len(fam.basis) + 1, len(fam.basis) + 1, s.dim)
        )
    return fam.min_norm + _skew_correction(fam.complement, s.matrix)


def membership(h, basis, tol=DEFAULT_TOL):
    """Test whether h is a skew-Hamiltonian realizer of the basis.

    Passes when h is skew-Hamiltonian within tolerance and every relative
    Krylov residual ||h @ x_k - x_(k+1)|| / ||x_(k+1)|| is at most tol.rel.
    """
    h = as_matrix(h)
    if not isinstance(basis, OrderedBasis):
        basis = OrderedBasis(as_matrix(basis))
    if h.shape != (2 * basis.n, 2 * basis.n):
        raise ValueError("matrix and basis dimensions do not agree")
    skew = is_skew_hamiltonian(h, tol)
    residual = 0.0
    if len(basis) > 1:
        image = h @ basis.left
        target = basis.right
        norms = np.linalg.norm(target, axis=0)
        residual = float(np.max(np.linalg.norm(image - target, axis=0) / norms))
    passed = skew.passed and residual <= tol.rel
    return MembershipResult(passed, residual, skew.defect)


def _pair_conjugates(values, tol=DEFAULT_TOL):
    # Split into real values and conjugate pairs; greedy nearest matching.
    pending = [complex(v) for v in values]
    linear = []
    quadratic = []
    while pending:
        lam = pending.pop(0)
        if abs(lam.imag) <= 1e-12 * (1.0 + abs(lam)):
            linear.append(lam.real)
            continue
        want = lam.conjugate()
        gaps = [abs(v - want) for v in pending]
        if not gaps or min(gaps) > 1e-12 * (1.0 + abs(lam)):
            raise ConjugationViolation(
                "eigenvalue %s has no conjugate partner" % lam
            )
        mu = pending.pop(int(np.argmin(gaps)))
        quadratic.append((lam, mu))
    return linear, quadratic


@dataclass(frozen=True)
class SpectrumSpec:
    """Prescribed eigenvalue multiset, closed under conjugation.

    ``values`` holds the eigenvalues and ``coeffs`` the real coefficients
    a_0, ..., a_(n-1) of the monic polynomial prod(x - lam), lowest degree
    first.
    """

    values: tuple
    coeffs: np.ndarray

    def __post_init__(self):
        values = tuple(complex(v) for v in self.values)
        coeffs = np.asarray(self.coeffs, dtype=float).ravel()
        if len(values) != coeffs.size or not values:
            raise ValueError("need one coefficient per eigenvalue")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coefficients must be finite")
        monic = np.concatenate([[1.0], coeffs[::-1]])
        for lam in values:
            bound = DEFAULT_TOL.rel * (1.0 + abs(lam)) ** len(values)
            if abs(np.polyval(monic, lam)) > bound:
                raise ValueError(
                    "coefficients are inconsistent with eigenvalue %s" % (lam,)
                )
        coeffs.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "coeffs", coeffs)

    def __len__(self):
        return len(self.values)

    @classmethod
    def from_roots(cls, values):
        """Build the spec from eigenvalues, pairing conjugates so the
        polynomial coefficients come out exactly real."""
        linear, quadratic = _pair_conjugates(values)
        monic = np.array([1.0])
        for root in linear:
            monic = np.polymul(monic, [1.0, -root])
        for lam, mu in quadratic:
            monic = np.polymul(
                monic, [1.0, -(lam + mu).real, (lam * mu).real]
            )
        return cls(tuple(values), monic[:0:-1])


def companion_matrix(spec):
    """Companion matrix of the spec's monic polynomial: ones on the
    subdiagonal and -coeffs in the last column."""
    a = spec.coeffs
    n = a.size
    c = np.zeros((n, n))
    if n > 1:
        c[np.arange(1, n), np.arange(n - 1)] = 1.0
    c[:, -1] = -a
    return c


def realizer_with_spectrum(basis, spec, tol=DEFAULT_TOL):
    """A realizer whose restriction to the subspace has the prescribed
    eigenvalues.

    Returns M + M* with M = X @ C @ pinv(X), where C is the companion
    matrix of the spec; then H @ X = X @ C, so the subspace is invariant
    and the restricted operator is similar to C.
    """
    basis = _validated(basis, tol)
    if len(spec) != len(basis):
        raise ValueError(
            "spectrum size %d does not match basis size %d"
            % (len(spec), len(basis))
        )
    x = basis.matrix
    m = x @ companion_matrix(spec) @ pinv(x)
    return m + star_adjoint(m)


def spectrum_family_element(basis, spec, s, tol=DEFAULT_TOL):
    """A spectrum-preserving family element: the prescribed-spectrum
    realizer plus J.T @ Q @ S @ Q.T with Q spanning the complement of the
    whole subspace (n columns), which leaves H @ X = X @ C intact."""
    basis = _validated(basis, tol)
    if not isinstance(s, SkewParam):
        s = SkewParam(as_matrix(s))
    if s.dim != len(basis):
        raise ValueError(
            "parameter must be %d x %d, got %d" % (len(basis), len(basis), s.dim)
        )
    h = realizer_with_spectrum(basis, spec, tol)
    q = orthonormal_complement(basis.matrix)
    return h + _skew_correction(q, s.matrix)


def restricted_spectrum(basis, h):
    """Eigenvalues of h restricted to the basis span, via pinv(X) @ h @ X."""
    if not isinstance(basis, OrderedBasis):
        basis = OrderedBasis(as_matrix(basis))
    h = as_matrix(h)
    x = basis.matrix
    return np.linalg.eigvals(pinv(x) @ h @ x)


def _nearest_in_family(center, p, a):
    # Frobenius-nearest element of center + J.T @ P @ S @ P.T to a: the
    # optimal S is the skew part of P.T @ J @ (a - center) @ P, computed
    # as -(b - b.T)/2 with b = P.T @ J @ (center - a) @ P so that S is
    # skew bitwise.
    b = p.T @ apply_j(center - a) @ p
    s = -0.5 * (b - b.T)
    return center + _skew_correction(p, s)


def nearest_realizer(basis, a, tol=DEFAULT_TOL):
    """The realizer of the basis closest to a in the Frobenius norm.

    For a already in the family this returns a (up to rounding); for
    a = 0 it returns the minimum-norm realizer.
    """
    fam = realization_family(basis, tol)
    a = as_matrix(a)
    if a.shape != fam.min_norm.shape:
        raise ValueError("matrix and basis dimensions do not agree")
    return _nearest_in_family(fam.min_norm, fam.complement, a)


def nearest_realizer_with_spectrum(basis, spec, a, tol=DEFAULT_TOL):
    """The prescribed-spectrum realizer closest to a in the Frobenius norm.

    Same construction as nearest_realizer, but the affine family is the
    spectrum-preserving one, so the correction ranges over the complement
    of the whole subspace and the restricted eigenvalues stay fixed.
    """
    basis = _validated(basis, tol)
    h = realizer_with_spectrum(basis, spec, tol)
    a = as_matrix(a)
    if a.shape != h.shape:
        raise ValueError("matrix and basis dimensions do not agree")
    return _nearest_in_family(h, orthonormal_complement(basis.matrix), a)
