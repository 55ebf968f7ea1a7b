"""Shared generators for the test suite."""

import numpy as np

from skewham import OrderedBasis, random_lagrangian_onb


def mixed_basis(n, seed):
    """Non-orthonormal Lagrangian basis: an orthonormal one recombined
    with a well-conditioned matrix (condition number at most 4)."""
    onb = random_lagrangian_onb(n, seed)
    rng = np.random.default_rng((seed, 9091))
    q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    return OrderedBasis(onb.matrix @ (q * rng.uniform(0.5, 2.0, size=n)))


def random_basis(n, seed):
    """Random Lagrangian basis, orthonormal for even seeds and mixed for
    odd ones."""
    if seed % 2 == 0:
        return random_lagrangian_onb(n, seed)
    return mixed_basis(n, seed)
