"""Gauss 2F1 on the real line z < 1, its Mellin-Barnes integral, and Appell F1."""
from __future__ import annotations

import cmath
import math

import numpy as np
from scipy import special

from ..errors import ConvergenceError, DomainError
from .gamma import log_gamma
from .quadrature import DEFAULT, QuadratureConfig, fsum_complex, tanh_sinh_log


def _is_nonpos_int(c: complex) -> bool:
    return c.imag == 0 and c.real <= 0 and c.real == round(c.real)


def _is_int(c: complex) -> bool:
    return c.imag == 0 and c.real == round(c.real)


def _near_int(c: complex, tol: float = 1e-4) -> bool:
    # connection formulas lose about tol^-1 ulps next to an integer
    return abs(c.imag) < tol and abs(c.real - round(c.real)) < tol


def _series(a: complex, b: complex, c: complex, z: float, max_terms: int = 2_000_000) -> complex:
    """Plain hypergeometric series, for 0 <= |z| < 1."""
    term = 1.0 + 0j
    total = 1.0 + 0j
    comp = 0j
    for k in range(max_terms):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        # Kahan-compensated accumulation
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if abs(term) <= 1e-17 * abs(total) and k > 2:
            return total
        if term == 0:
            return total
    raise ConvergenceError(f"2F1 series did not converge at z = {z}")


def _pfaff(a, b, c, z):
    # F(a,b;c;z) = (1-z)^(-a) F(a, c-b; c; z/(z-1))
    return cmath.exp(-a * math.log1p(-z)) * _unit_interval(a, c - b, c, z / (z - 1.0))


def _unit_interval(a, b, c, z):
    """2F1 for 0 <= z < 1."""
    if z <= 0.5:
        return _series(a, b, c, z)
    cab = c - a - b
    if _near_int(cab) or _is_nonpos_int(a) or _is_nonpos_int(b):
        return _series(a, b, c, z)
    # connection to 1 - z, whose two series converge at rate 1 - z < 1/2
    w = 1.0 - z
    out = 0j
    if not (_is_nonpos_int(c - a) or _is_nonpos_int(c - b)):
        lg = log_gamma(c) + log_gamma(cab) - log_gamma(c - a) - log_gamma(c - b)
        out += cmath.exp(lg) * _series(a, b, 1.0 - cab, w)
    lg = log_gamma(c) + log_gamma(-cab) - log_gamma(a) - log_gamma(b)
    out += cmath.exp(lg + cab * math.log(w)) * _series(c - a, c - b, cab + 1.0, w)
    return out


def _large_negative(a, b, c, z):
    """2F1 for z < -1 through the argument 1/(1 - z) in (0, 1/2)."""
    w = 1.0 / (1.0 - z)
    lw = math.log(w)
    out = 0j
    if not (_is_nonpos_int(b) or _is_nonpos_int(c - a)):
        lg = log_gamma(c) + log_gamma(b - a) - log_gamma(b) - log_gamma(c - a)
        out += cmath.exp(lg + a * lw) * _series(a, c - b, a - b + 1.0, w)
    if not (_is_nonpos_int(a) or _is_nonpos_int(c - b)):
        lg = log_gamma(c) + log_gamma(a - b) - log_gamma(a) - log_gamma(c - b)
        out += cmath.exp(lg + b * lw) * _series(b, c - a, b - a + 1.0, w)
    return out


def gauss_2f1(a, b, c, z) -> complex:
    """2F1(a, b; c; z) for real z < 1 and complex parameters.

    0 <= z <= 1/2 uses the series; z in [-1, 0) the Pfaff transform; z < -1
    the 1/(1-z) connection formula (Pfaff when b - a is an integer); z > 1/2
    the 1 - z connection formula.
    """
    a, b, c = complex(a), complex(b), complex(c)
    z = float(z)
    if _is_nonpos_int(c):
        raise DomainError("2F1 needs c not a nonpositive integer")
    if not z < 1.0:
        raise DomainError("gauss_2f1 is restricted to real z < 1")
    if z == 0.0:
        return 1.0 + 0j
    if z > 0.0:
        return _unit_interval(a, b, c, z)
    if z >= -1.0 or _near_int(b - a):
        return _pfaff(a, b, c, z)
    return _large_negative(a, b, c, z)


def gauss_2f1_array(a, b, c, zs) -> np.ndarray:
    return np.array([gauss_2f1(a, b, c, z) for z in np.asarray(zs, dtype=float)])


def gauss_2f1_mellin_barnes(a, b, c, z, r: float, config: QuadratureConfig = DEFAULT) -> complex:
    """2F1 from its Barnes integral along Re(w) = -r.

        2F1 = G(c)/(G(a)G(b)) (1/2 pi i) int G(a+w) G(b+w) G(-w) / G(c+w) (-z)^w dw
    """
    a, b, c = complex(a), complex(b), complex(c)
    z, r = float(z), float(r)
    if not z < 0:
        raise DomainError("Mellin-Barnes evaluation needs z < 0")
    if not (r > 0 and a.real > r and b.real > r):
        raise DomainError("Mellin-Barnes needs Re(a), Re(b) > r > 0")
    if _is_nonpos_int(c):
        raise DomainError("2F1 needs c not a nonpositive integer")
    L = math.log(-z)
    delta = min(r, a.real - r, b.real - r)
    margin = config.truncation_margin
    h = 2.0 * math.pi * delta / (margin + abs(L) * delta + 5.0)

    def log_f(v):
        w = -r + 1j * v
        return (special.loggamma(a + w) + special.loggamma(b + w) + special.loggamma(-w)
                - special.loggamma(c + w) + w * L)

    # decay is like exp(-pi |v|) times a power; walk outwards until it is negligible
    ref = float(np.max(np.real(log_f(np.linspace(-5, 5, 41)))))
    V = 10.0 + abs(a.imag) + abs(b.imag) + abs(c.imag)
    while max(log_f(V).real, log_f(-V).real) > ref - margin - 5.0:
        V *= 1.3
    k = int(math.ceil(V / h))
    v = np.arange(-k, k + 1) * h
    vals = np.exp(log_f(v))
    integral = h * fsum_complex(vals) / (2.0 * math.pi)
    pref = cmath.exp(log_gamma(c) - log_gamma(a) - log_gamma(b))
    return pref * integral


def appell_f1_picard(alpha, beta1, beta2, c, z1, z2, config: QuadratureConfig = DEFAULT) -> complex:
    """Appell F1 from Picard's single integral

        G(c)/(G(alpha)G(c-alpha)) int_0^1 t^(alpha-1) (1-t)^(c-alpha-1)
                                        (1-z1 t)^(-beta1) (1-z2 t)^(-beta2) dt

    evaluated by tanh-sinh quadrature in log space, which absorbs both
    endpoint singularities.
    """
    alpha, beta1, beta2, c = (complex(x) for x in (alpha, beta1, beta2, c))
    z1, z2 = float(z1), float(z2)
    if not (c.real > alpha.real > 0):
        raise DomainError("Picard's integral needs Re(c) > Re(alpha) > 0")
    if not (z1 < 1 and z2 < 1):
        raise DomainError("appell_f1_picard needs z1, z2 < 1")
    p, q = alpha, c - alpha
    # the transformed integrand behaves like exp(-min(Re p, Re q) pi/2 e^|x|)
    m = min(p.real, q.real)
    x_max = math.asinh((config.truncation_margin + 10.0) / (math.pi * m) + 1.0)

    def log_integrand(log_t, log_1mt, t):
        out = (p - 1.0) * log_t + (q - 1.0) * log_1mt
        if beta1 != 0:
            out = out - beta1 * np.log1p(-z1 * t)
        if beta2 != 0:
            out = out - beta2 * np.log1p(-z2 * t)
        return out

    integral = tanh_sinh_log(log_integrand, x_max, rel_tol=min(config.rel_tol, 1e-11))
    return cmath.exp(log_gamma(c) - log_gamma(p) - log_gamma(q)) * integral


def f1_reduction_check(a, b1, b2, c, z1, z2, config: QuadratureConfig = DEFAULT) -> float:
    """|F1(a,b1,b2,c;z1,z2) - (1-z1)^-b1 (1-z2)^-b2 F1(c-a,b1,b2,c;z1/(z1-1),z2/(z2-1))|."""
    z1, z2 = float(z1), float(z2)
    if not (abs(z1) < 1 and abs(z2) < 1):
        raise DomainError("the reduction identity needs |z1|, |z2| < 1")
    a, b1, b2, c = (complex(x) for x in (a, b1, b2, c))
    lhs = appell_f1_picard(a, b1, b2, c, z1, z2, config)
    pref = cmath.exp(-b1 * math.log1p(-z1) - b2 * math.log1p(-z2))
    rhs = pref * appell_f1_picard(c - a, b1, b2, c, z1 / (z1 - 1.0), z2 / (z2 - 1.0), config)
    return abs(lhs - rhs)
