"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class ArithmeticIntegrityError(ArithmeticError):
    """A computed value contradicts a proven bound.

    Raised when, e.g., a matrix entry has a denominator outside the
    proven upper bound.  This can only mean an arithmetic bug, so callers
    are expected to abort rather than recover.
    """


class NonIntegralResidue(ArithmeticError):
    """A rational has no residue modulo ``m`` (its denominator shares a factor with ``m``)."""

    def __init__(self, value, modulus):
        self.value = value
        self.modulus = modulus
        super().__init__(f"{value} has no residue mod {modulus}")
