"""Executable checks for the structural claims behind the constructions.

Each verifier measures a defect, normalizes it by the check's tolerance
(so 1.0 is the pass boundary for multi-part checks), and returns a
VerificationReport. Sampled checks draw their own random parameters from
an explicit seed and never mutate shared state, so batches can run in
parallel.
"""

from dataclasses import dataclass

import numpy as np

from .errors import OrthonormalityViolation
from .lagrangian import OrderedBasis
from .linalg import (
    DEFAULT_TOL,
    apply_jt,
    as_matrix,
    frobenius_norm,
    numerical_rank,
    spectral_norm,
    star_adjoint,
)
from .realization import (
    SkewParam,
    family_element,
    realization_family,
    shift_factor,
)

REPORT_HEADER = "name,n,seed,defect,threshold,passed,trials"


@dataclass(frozen=True)
class VerificationReport:
    """One check outcome; passed holds exactly when defect <= threshold."""

    name: str
    n: int
    seed: int
    defect: float
    threshold: float
    passed: bool
    trials: int = 0

    def csv_row(self):
        return "%s,%d,%d,%.17g,%.17g,%s,%d" % (
            self.name,
            self.n,
            self.seed,
            self.defect,
            self.threshold,
            "true" if self.passed else "false",
            self.trials,
        )


def _report(name, n, seed, defect, trials=0, threshold=1.0):
    defect = float(defect)
    return VerificationReport(
        name=name,
        n=n,
        seed=seed,
        defect=defect,
        threshold=threshold,
        passed=bool(defect <= threshold),
        trials=trials,
    )


def _ratio(defect, bound):
    # Violation measure normalized by its tolerance; nonpositive means
    # satisfied, and a violation against a zero tolerance is infinite.
    if defect <= 0.0:
        return 0.0
    if bound == 0.0:
        return float("inf")
    return defect / bound


def _as_basis(basis):
    if isinstance(basis, OrderedBasis):
        return basis
    return OrderedBasis(as_matrix(basis))


def _orthonormality_defect(basis):
    g = basis.matrix.T @ basis.matrix
    return float(np.linalg.norm(g - np.eye(len(basis))))


def verify_frobenius_min(basis, trials=1000, seed=0):
    """Sampled check that the minimum-norm realizer minimizes the
    Frobenius norm over the family.

    Each draw checks dominance against a random family element and the
    orthogonality identity ||H||_F^2 = ||Hmin||_F^2 + ||H - Hmin||_F^2.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    basis = _as_basis(basis)
    fam = realization_family(basis)
    base = frobenius_norm(fam.min_norm)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        s = SkewParam.random(fam.complement.shape[1], rng)
        h = family_element(fam, s)
        hn = frobenius_norm(h)
        worst = max(worst, _ratio(base - hn, 1e-12 * base))
        cross = abs(hn**2 - base**2 - frobenius_norm(h - fam.min_norm) ** 2)
        worst = max(worst, _ratio(cross, 1e-10 * hn**2))
    return _report("frobenius_min", basis.n, seed, worst, trials)


def verify_spectral_min(basis, trials=1000, seed=0):
    """Sampled check that the minimum-norm realizer minimizes the spectral
    norm; for an orthonormal basis its spectral norm must also equal 1."""
    if trials < 1:
        raise ValueError("trials must be positive")
    basis = _as_basis(basis)
    fam = realization_family(basis)
    base = spectral_norm(fam.min_norm)
    worst = 0.0
    if len(basis) >= 2 and _orthonormality_defect(basis) <= DEFAULT_TOL.rel:
        worst = max(worst, _ratio(abs(base - 1.0), 1e-10))
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        s = SkewParam.random(fam.complement.shape[1], rng)
        worst = max(
            worst,
            _ratio(base - spectral_norm(family_element(fam, s)), 1e-10 * base),
        )
    return _report("spectral_min", basis.n, seed, worst, trials)


def verify_dimension(basis, trials=10, seed=0):
    """Check that the family has affine dimension n(n+1)/2.

    Forward: the vectorized generators over the elementary skew-symmetric
    parameters must have full numerical rank. Backward: random matrices
    built from an independently computed complement (complete QR rather
    than the SVD route used elsewhere) must lie in the generator span.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    basis = _as_basis(basis)
    fam = realization_family(basis)
    n = len(fam.basis)
    p = fam.complement
    columns = []
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            s = np.zeros((n + 1, n + 1))
            s[i, j], s[j, i] = 1.0, -1.0
            columns.append(apply_jt(p @ s @ p.T).ravel())
    generators = np.column_stack(columns)
    worst = 0.0 if numerical_rank(generators) == fam.dim else float("inf")

    q_full, _ = np.linalg.qr(fam.basis.left, mode="complete")
    q = q_full[:, fam.basis.left.shape[1] :]
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        s = rng.standard_normal((n + 1, n + 1))
        d = apply_jt(q @ (s - s.T) @ q.T)
        coef, *_ = np.linalg.lstsq(generators, d.ravel(), rcond=None)
        residual = float(np.linalg.norm(generators @ coef - d.ravel()))
        worst = max(worst, _ratio(residual, 1e-10 * frobenius_norm(d)))
    return _report("dimension", basis.n, seed, worst, trials)


def verify_projection_identity(basis, seed=0):
    """For an orthonormal basis, H.T @ H of the minimum-norm realizer must
    equal X_L @ X_L.T + J.T @ X_R @ X_R.T @ J and be idempotent."""
    basis = _as_basis(basis)
    orth = _orthonormality_defect(basis)
    if orth > DEFAULT_TOL.rel:
        raise OrthonormalityViolation(
            "basis is not orthonormal (defect %.3e)" % orth
        )
    fam = realization_family(basis)
    h = fam.min_norm
    hth = h.T @ h
    jr = apply_jt(basis.right)
    projector = basis.left @ basis.left.T + jr @ jr.T
    worst = max(
        _ratio(
            frobenius_norm(hth - projector), 1e-12 * frobenius_norm(h) ** 2
        ),
        _ratio(frobenius_norm(hth @ hth - hth), 1e-12),
    )
    return _report("projection_identity", basis.n, seed, worst)


def verify_norm_equality(basis, seed=0):
    """The spectral norms of the minimum-norm realizer and of its shift
    factor must agree."""
    basis = _as_basis(basis)
    k = shift_factor(basis)
    kn = spectral_norm(k)
    defect = _ratio(abs(spectral_norm(k + star_adjoint(k)) - kn), 1e-10 * kn)
    return _report("norm_equality", basis.n, seed, defect)


def nilpotency_index(h, tol=DEFAULT_TOL):
    """Smallest k with ||h^k||_F <= tol.rel * max(1, ||h||_2)^k, or None
    when no power within the dimension is numerically zero.

    The threshold grows with the k-th power of the norm because rounding
    errors in repeated products are amplified the same way.
    """
    h = as_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise ValueError("matrix must be square")
    scale = max(1.0, spectral_norm(h))
    power = np.eye(h.shape[0])
    bound = tol.rel
    for k in range(1, h.shape[0] + 1):
        power = power @ h
        bound *= scale
        if frobenius_norm(power) <= bound:
            return k
    return None
