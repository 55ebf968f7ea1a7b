"""Isotropic and Lagrangian subspace machinery.

Provides the symplectic pairing, isotropy tests, an isotropization
procedure for nearly isotropic column sets, an isotropy-preserving
Arnoldi iteration, random Lagrangian orthonormal bases, and the gap
metric between subspaces.
"""

from dataclasses import dataclass

import numpy as np

from .errors import LinearDependenceError
from .linalg import (
    DEFAULT_TOL,
    CheckResult,
    apply_j,
    apply_jt,
    as_matrix,
    is_skew_hamiltonian,
    numerical_rank,
    spectral_norm,
)


@dataclass(frozen=True)
class OrderedBasis:
    """Ordered, linearly independent vectors spanning an isotropic subspace.

    The vectors are the columns of ``matrix`` (shape 2n x k with k <= n).
    ``left`` drops the last column and ``right`` drops the first; both are
    empty when the basis has a single vector.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if m.shape[0] % 2 or m.shape[0] == 0:
            raise ValueError("ambient dimension must be even and positive")
        if not 1 <= m.shape[1] <= m.shape[0] // 2:
            raise ValueError(
                "need between 1 and n vectors in R^(2n), got %d in R^%d"
                % (m.shape[1], m.shape[0])
            )
        if numerical_rank(m) != m.shape[1]:
            raise ValueError("basis vectors are not linearly independent")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def __len__(self):
        return self.matrix.shape[1]

    @property
    def n(self):
        """Half the ambient dimension."""
        return self.matrix.shape[0] // 2

    @property
    def left(self):
        return self.matrix[:, :-1]

    @property
    def right(self):
        return self.matrix[:, 1:]

    def vector(self, k):
        """The k-th basis vector, 1-indexed."""
        if not 1 <= k <= len(self):
            raise IndexError("basis has %d vectors" % len(self))
        return self.matrix[:, k - 1]


@dataclass(frozen=True)
class ArnoldiResult:
    """Basis produced by isotropic_arnoldi plus a breakdown flag."""

    basis: OrderedBasis
    breakdown: bool


def symplectic_pairing(x, y):
    """The bilinear form x.T @ J @ y; antisymmetric in its arguments."""
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.shape != y.shape:
        raise ValueError("vectors must have equal length")
    if x.size % 2:
        raise ValueError("length must be even, got %d" % x.size)
    n = x.size // 2
    return float(x[:n] @ y[n:] - x[n:] @ y[:n])


def is_isotropic(x, tol=DEFAULT_TOL):
    """Check that the symplectic form vanishes on the column span of x.

    The defect is the Frobenius norm of x.T @ J @ x, compared against
    tol.rel times the Frobenius norm of the Gram matrix x.T @ x.
    """
    x = as_matrix(x)
    if x.shape[0] % 2:
        raise ValueError("row count must be even, got %d" % x.shape[0])
    defect = float(np.linalg.norm(x.T @ apply_j(x)))
    bound = tol.rel * float(np.linalg.norm(x.T @ x)) + tol.abs
    return CheckResult(defect <= bound, defect)


def isotropize(x, tol=DEFAULT_TOL):
    """Project the columns of x, in order, onto an isotropic configuration.

    The first column is kept. Each later column is replaced by its
    orthogonal projection onto the nullspace of Y.T @ J, where Y collects
    the columns already accepted; that nullspace is the orthogonal
    complement of range(J.T @ Y), so the projection subtracts the
    least-squares component along J.T @ Y (two refinement passes).

    Raises LinearDependenceError when a projected column (numerically)
    vanishes or the result loses full column rank.
    """
    x = as_matrix(x)
    if x.shape[0] % 2:
        raise ValueError("row count must be even, got %d" % x.shape[0])
    k = x.shape[1]
    y = np.array(x, copy=True)
    for j in range(1, k):
        w = apply_jt(y[:, :j])
        v = x[:, j].copy()
        for _ in range(2):
            coef, *_ = np.linalg.lstsq(w, v, rcond=None)
            v = v - w @ coef
        if np.linalg.norm(v) <= tol.rel * np.linalg.norm(x[:, j]):
            raise LinearDependenceError(
                "column %d vanishes under isotropization" % (j + 1)
            )
        y[:, j] = v
    if numerical_rank(y) != k:
        raise LinearDependenceError("isotropized columns are linearly dependent")
    return OrderedBasis(y)


def isotropic_arnoldi(h, x1, k, tol=DEFAULT_TOL):
    """Arnoldi iteration that keeps the Krylov basis isotropic.

    Builds orthonormal vectors q_1, ..., q_k spanning the Krylov spaces of
    the skew-Hamiltonian matrix h started at x1. Each candidate h @ q_j is
    orthogonalized against both the current basis and its image under J
    (two classical Gram-Schmidt passes), which pins the numerical isotropy
    defect near machine precision.

    Returns an ArnoldiResult; on breakdown the basis built so far is
    returned with the flag set instead of raising.
    """
    h = as_matrix(h)
    ok = is_skew_hamiltonian(h, tol)
    if not ok.passed:
        raise ValueError(
            "matrix is not skew-Hamiltonian (defect %.3e)" % ok.defect
        )
    n = h.shape[0] // 2
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n, got k=%d with n=%d" % (k, n))
    x1 = np.asarray(x1, dtype=float).ravel()
    if x1.size != 2 * n:
        raise ValueError("start vector has wrong length")
    nrm = np.linalg.norm(x1)
    if nrm == 0.0:
        raise ValueError("start vector is zero")

    q = np.empty((2 * n, k))
    q[:, 0] = x1 / nrm
    for j in range(1, k):
        v = h @ q[:, j - 1]
        scale = np.linalg.norm(v)
        for _ in range(2):
            u = np.concatenate([q[:, :j], apply_j(q[:, :j])], axis=1)
            v = v - u @ (u.T @ v)
        nrm = np.linalg.norm(v)
        if nrm <= tol.rel * scale + tol.abs:
            return ArnoldiResult(OrderedBasis(q[:, :j]), True)
        q[:, j] = v / nrm
    return ArnoldiResult(OrderedBasis(q), False)


def random_lagrangian_onb(n, seed):
    """Random orthonormal basis of a Lagrangian subspace of R^(2n).

    Runs the isotropic Arnoldi iteration on a random skew-Hamiltonian
    matrix J.T @ (R - R.T) with a random start vector; deterministic in
    the seed. Retries on breakdown and gives up after 10 attempts.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(seed)
    for _ in range(10):
        r = rng.standard_normal((2 * n, 2 * n))
        start = rng.standard_normal(2 * n)
        result = isotropic_arnoldi(apply_jt(r - r.T), start, n)
        if not result.breakdown:
            return result.basis
    raise RuntimeError("no full Krylov basis after 10 random draws")


def _orthonormal_range(x):
    x = as_matrix(x)
    if x.shape[1] == 0 or numerical_rank(x) != x.shape[1]:
        raise ValueError("input must have full column rank")
    q, _ = np.linalg.qr(x)
    return q


def subspace_gap(x, y):
    """Spectral-norm gap between the column spans of x and y.

    Returns ||P_x - P_y||_2 where P_m is the orthogonal projector onto
    range(m); the value is clamped to [0, 1], the range it occupies for
    orthogonal projectors. Both inputs must have full column rank.
    """
    qx = _orthonormal_range(x)
    qy = _orthonormal_range(y)
    value = spectral_norm(qx @ qx.T - qy @ qy.T)
    return min(1.0, max(0.0, value))
