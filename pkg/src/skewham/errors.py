"""Exception types shared across the package."""


class IsotropyViolation(ValueError):
    """The symplectic form does not vanish on the given basis."""


class LinearDependenceError(ValueError):
    """A vector degenerated during isotropization, breaking independence."""


class ConjugationViolation(ValueError):
    """A requested eigenvalue multiset is not closed under conjugation."""


class OrthonormalityViolation(ValueError):
    """A check that needs an orthonormal basis received a non-orthonormal one."""
