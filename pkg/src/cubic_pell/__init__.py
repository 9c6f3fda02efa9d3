"""Cubic theta coefficients, cubic Gauss sums and the L-series of cubic Pell equations."""
from .eisenstein import EisensteinInt, KRational, ThetaIndex
from .errors import ConvergenceError, DomainError, VerificationError

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError", "DomainError", "EisensteinInt", "KRational", "ThetaIndex",
    "VerificationError", "__version__",
]
