"""Dense-matrix core: the symplectic operator J, the star adjoint,
SVD-based pseudoinverse and complements, norms, and matrix text I/O.

All matrices are plain numpy arrays of float64. J is never materialized
in computational paths; applying it is a block swap with negation.
"""

from dataclasses import dataclass

import numpy as np

EPS = float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class Tolerance:
    """Relative/absolute tolerance pair used by the numerical predicates."""

    rel: float = 1e-10
    abs: float = 1e-13

    def __post_init__(self):
        if self.rel < 0 or self.abs < 0:
            raise ValueError("tolerances must be nonnegative")


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a numerical predicate: verdict plus the measured defect."""

    passed: bool
    defect: float

    def __bool__(self):
        return self.passed


def as_matrix(a):
    """Coerce to a 2-d float64 array and reject non-finite entries."""
    m = np.asarray(a, dtype=float)
    if m.ndim != 2:
        raise ValueError("expected a 2-d array, got ndim=%d" % m.ndim)
    if m.size and not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def _even_square(a):
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix, got shape %s" % (m.shape,))
    if m.shape[0] % 2:
        raise ValueError("dimension must be even, got %d" % m.shape[0])
    return m


def j_matrix(n):
    """The 2n x 2n matrix [[0, I], [-I, 0]] of the symplectic form."""
    if n < 1:
        raise ValueError("n must be positive")
    j = np.zeros((2 * n, 2 * n))
    j[:n, n:] = np.eye(n)
    j[n:, :n] = -np.eye(n)
    return j


def apply_j(a):
    """J @ a for a vector or matrix with 2n rows, without forming J."""
    a = np.asarray(a, dtype=float)
    if a.shape[0] % 2:
        raise ValueError("row count must be even, got %d" % a.shape[0])
    n = a.shape[0] // 2
    return np.concatenate([a[n:], -a[:n]], axis=0)


def apply_jt(a):
    """J.T @ a for a vector or matrix with 2n rows, without forming J."""
    a = np.asarray(a, dtype=float)
    if a.shape[0] % 2:
        raise ValueError("row count must be even, got %d" % a.shape[0])
    n = a.shape[0] // 2
    return np.concatenate([-a[n:], a[:n]], axis=0)


@dataclass(frozen=True)
class SymplecticForm:
    """The bilinear form (x, y) -> x.T @ J @ y on R^(2n)."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")

    def matrix(self):
        return j_matrix(self.n)

    def apply(self, a):
        """J @ a; maps a stacked vector (u, v) to (v, -u)."""
        if np.asarray(a).shape[0] != 2 * self.n:
            raise ValueError("operand must have %d rows" % (2 * self.n))
        return apply_j(a)

    def apply_transpose(self, a):
        if np.asarray(a).shape[0] != 2 * self.n:
            raise ValueError("operand must have %d rows" % (2 * self.n))
        return apply_jt(a)


def star_adjoint(a):
    """J.T @ a.T @ J, the adjoint of a with respect to the symplectic form.

    Implemented as two block permutations, so the result is exact and
    applying the map twice reproduces the input bitwise.
    """
    a = _even_square(a)
    return apply_jt(apply_jt(a).T)


def is_skew_hamiltonian(a, tol=DEFAULT_TOL):
    """Check J.T @ a.T @ J == a; the defect is the Frobenius gap."""
    a = _even_square(a)
    defect = float(np.linalg.norm(a - star_adjoint(a)))
    bound = tol.rel * float(np.linalg.norm(a)) + tol.abs
    return CheckResult(defect <= bound, defect)


def singular_value_cutoff(shape, s_max):
    """Rank cutoff max(dims) * eps * s_max, shared by pinv and rank decisions."""
    return max(shape) * EPS * s_max


def pinv(x):
    """Moore-Penrose pseudoinverse via SVD with the shared rank cutoff."""
    x = as_matrix(x)
    if x.size == 0:
        return np.zeros((x.shape[1], x.shape[0]))
    u, s, vt = np.linalg.svd(x, full_matrices=False)
    cutoff = singular_value_cutoff(x.shape, s[0])
    inv = np.zeros_like(s)
    keep = s > cutoff
    inv[keep] = 1.0 / s[keep]
    return (vt.T * inv) @ u.T


def numerical_rank(x):
    """Rank by singular values under the shared cutoff."""
    x = as_matrix(x)
    if x.size == 0:
        return 0
    s = np.linalg.svd(x, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > singular_value_cutoff(x.shape, s[0])))


def orthonormal_complement(x):
    """Orthonormal basis (as columns) of the orthogonal complement of range(x).

    Returns a 2n x (2n - r) matrix where r is the numerical rank of x; the
    complement of a zero-column matrix is the identity.
    """
    x = as_matrix(x)
    m = x.shape[0]
    if x.shape[1] == 0:
        return np.eye(m)
    u, s, _ = np.linalg.svd(x, full_matrices=True)
    if s[0] == 0.0:
        return u
    r = int(np.count_nonzero(s > singular_value_cutoff(x.shape, s[0])))
    return u[:, r:]


def spectral_norm(a):
    """Largest singular value."""
    a = as_matrix(a)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def frobenius_norm(a):
    """Square root of the sum of squared entries."""
    return float(np.linalg.norm(np.asarray(a, dtype=float)))


def format_matrix(a):
    """Render a matrix as text: a 'rows cols' header line, then one line
    per row. Entries carry 17 significant digits, which round-trips
    float64 exactly."""
    a = as_matrix(a)
    lines = ["%d %d" % a.shape]
    for row in a:
        lines.append(" ".join("%.17g" % v for v in row))
    return "\n".join(lines) + "\n"


def save_matrix(path, a):
    """Write format_matrix output to a file."""
    text = format_matrix(a)
    with open(path, "w") as fh:
        fh.write(text)


def load_matrix(path):
    """Read a matrix written by save_matrix."""
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError("%s: expected a 'rows cols' header line" % path)
        try:
            rows, cols = int(header[0]), int(header[1])
        except ValueError:
            raise ValueError("%s: malformed header %r" % (path, " ".join(header)))
        if rows < 1 or cols < 1:
            raise ValueError("%s: dimensions must be positive" % path)
        try:
            a = np.loadtxt(fh, ndmin=2)
        except ValueError as exc:
            raise ValueError("%s: %s" % (path, exc))
    if a.shape != (rows, cols):
        raise ValueError(
            "%s: header says %dx%d but body has shape %s" % (path, rows, cols, a.shape)
        )
    return as_matrix(a)
