class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConvergenceError(ArithmeticError):
    """A numerical procedure failed to reach its tolerance."""


class VerificationError(AssertionError):
    """An exact identity that must hold did not (indicates an arithmetic bug)."""
