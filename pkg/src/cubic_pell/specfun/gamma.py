"""Complex gamma function through log-gamma."""
from __future__ import annotations

import cmath

import numpy as np
from scipy import special

from ..errors import DomainError


def _check_pole(s: complex) -> None:
    if s.imag == 0 and s.real <= 0 and s.real == round(s.real):
        raise DomainError(f"gamma has a pole at {s.real:g}")


def log_gamma(s) -> complex:
    """Principal branch of log Gamma(s)."""
    s = complex(s)
    _check_pole(s)
    return complex(special.loggamma(s))


def gamma_complex(s) -> complex:
    s = complex(s)
    _check_pole(s)
    if s.imag == 0:
        return complex(special.gamma(s.real))
    return cmath.exp(special.loggamma(s))


def rgamma(s) -> complex:
    """1/Gamma(s), zero at the poles."""
    return complex(special.rgamma(complex(s)))


def log_gamma_array(s: np.ndarray) -> np.ndarray:
    return special.loggamma(np.asarray(s, dtype=complex))
