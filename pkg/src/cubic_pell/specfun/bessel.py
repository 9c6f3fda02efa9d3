"""K-Bessel functions of real and imaginary order by trapezoidal quadrature.

Both integrands are entire and decay doubly exponentially, so the plain
trapezoid rule converges geometrically once the step resolves the width of
the peak.
"""
from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError
from .gamma import gamma_complex
from .quadrature import DEFAULT, QuadratureConfig


def _log_peak_drop(y: float, v: float, t_star: float, margin: float) -> float:
    """End of the range where -y cosh t + v t lies within ``margin`` of its peak."""
    peak = -y * math.cosh(t_star) + v * t_star

    def logf(t):
        return -y * math.cosh(t) + v * t

    lo, hi = t_star, t_star + 1.0
    while logf(hi) > peak - margin:
        lo, hi = hi, hi + 2.0 * (hi - t_star)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if logf(mid) > peak - margin:
            lo = mid
        else:
            hi = mid
    return hi


def bessel_k_real(v: float, y: float, config: QuadratureConfig = DEFAULT) -> float:
    """K_v(y) = int_0^inf exp(-y cosh t) cosh(v t) dt."""
    v = abs(float(v))
    y = float(y)
    if not y > 0:
        raise DomainError("bessel_k_real needs y > 0")
    t_star = math.asinh(v / y)
    upper = _log_peak_drop(y, v, t_star, config.truncation_margin)
    h = min(0.05, 0.5 / (y * y + v * v) ** 0.25)
    t = np.arange(int(math.ceil(upper / h)) + 1) * h
    ch = np.cosh(t)
    # work relative to the peak so that tiny y or large v cannot overflow
    peak = -y * math.cosh(t_star) + v * t_star
    vals = 0.5 * (np.exp(-y * ch + v * t - peak) + np.exp(-y * ch - v * t - peak))
    vals[0] *= 0.5
    return h * math.fsum(vals) * math.exp(peak)


def bessel_k_imag(t: float, y: float, config: QuadratureConfig = DEFAULT) -> float:
    """K_{2it}(y) = int_0^inf exp(-y cosh v) cos(2 t v) dv.

    The line of integration is moved to Im v = theta, chosen so that the
    phase is stationary at the origin; the cancellation that makes the real
    line hopeless for large t then disappears and the result keeps a
    relative accuracy near 1e-12 even where K is of size exp(-pi t).
    """
    y = float(y)
    if not y > 0:
        raise DomainError("bessel_k_imag needs y > 0")
    mu = abs(2.0 * float(t))
    if mu == 0.0:
        return bessel_k_real(0.0, y, config)
    delta = min(0.5 * math.pi, 8.0 / mu)
    theta = min(math.asin(min(1.0, mu / y)), 0.5 * math.pi - delta)
    yc = y * math.cos(theta)
    ys = y * math.sin(theta)
    margin = config.truncation_margin
    # room to the anti-Stokes line bounds how far the strip extends
    d = min(delta, 0.5 * math.pi - theta)
    h = min(0.1, math.pi * d / (margin + mu * d / 2.0), 0.5 / math.sqrt(yc))
    upper = math.acosh(1.0 + (margin + mu * d) / yc)
    v = np.arange(int(math.ceil(upper / h)) + 1) * h
    vals = np.exp(-yc * (np.cosh(v) - 1.0)) * np.cos(mu * v - ys * np.sinh(v))
    vals[0] *= 0.5
    return h * math.fsum(vals) * math.exp(-mu * theta - yc)


_AIRY_CONST = float(gamma_complex(1.0 / 3.0).real) / (2.0 ** (2.0 / 3.0) * 3.0 ** (1.0 / 6.0))


def kbessel_branch(t: float, y: float) -> str:
    """Which case of the bound applies: 'i', 'ii' or 'iii'."""
    t, y = float(t), float(y)
    if not (t > 0 and y > 0):
        raise DomainError("kbessel_bound_f needs t, y > 0")
    Y = 4.0 * math.pi * y
    two_t = 2.0 * t
    if Y >= two_t:
        return "i"
    if Y < 1.0:
        raise DomainError(f"no bound for 4 pi y = {Y:g} < min(1, 2t)")
    if Y <= two_t - 0.5 * two_t ** (1.0 / 3.0):
        return "ii"
    return "iii"


def kbessel_bound_f(t: float, y: float) -> float:
    """f(t, y) with |K_{2it}(4 pi y)| <= exp(-pi t) f(t, y)."""
    branch = kbessel_branch(t, y)
    Y = 4.0 * math.pi * y
    two_t = 2.0 * t
    if branch == "i":
        root = math.sqrt(max(Y * Y - two_t * two_t, 0.0))
        expo = -root + two_t * math.acos(min(1.0, two_t / Y))
        cands = [_AIRY_CONST * two_t ** (-1.0 / 3.0)]
        if root > 0:
            cands.append(math.sqrt(math.pi / 2.0) / math.sqrt(root))
        return math.exp(expo) * min(cands)
    if branch == "ii":
        return 5.0 / (two_t * two_t - Y * Y) ** 0.25
    return 4.0 * two_t ** (-1.0 / 3.0)

