"""Integral identities between K-Bessel, gamma and hypergeometric functions.

Each ``*_check`` returns the absolute residual |LHS - RHS| with both sides
computed by separate routes.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from ..errors import DomainError
from .bessel import bessel_k_real
from .gamma import log_gamma
from .hypergeometric import appell_f1_picard, gauss_2f1
from .quadrature import DEFAULT, QuadratureConfig, fsum_complex, panel_nodes

_FOUR_PI = 4.0 * math.pi


# ---------------------------------------------------------------------------
# int_0^inf (a + cosh u)^w cosh(u/3) du

def cosh_integral(w, a, config: QuadratureConfig = DEFAULT) -> complex:
    """Direct quadrature of int_0^inf (a + cosh u)^w cosh(u/3) du, Re(w) < -1/3."""
    w, a = complex(w), float(a)
    if not w.real < -1.0 / 3.0:
        raise DomainError("cosh_integral needs Re(w) < -1/3")
    if not a > -1.0:
        raise DomainError("cosh_integral needs a > -1")
    # beyond U, (a + cosh u)^w = (e^u/2)^w (1 + O(a e^-u)) and the rest is elementary
    U = 40.0
    rate = abs(w.imag) + 1.0
    panels = max(40, int(math.ceil(U * rate / 2.0)))
    u, wt = panel_nodes(0.0, U, panels, 16)
    vals = wt * np.exp(w * np.log(a + np.cosh(u))) * np.cosh(u / 3.0)
    body = fsum_complex(vals)
    p, m = w + 1.0 / 3.0, w - 1.0 / 3.0
    tail = cmath.exp(-(w + 1.0) * math.log(2.0)) * (-cmath.exp(p * U) / p - cmath.exp(m * U) / m)
    return body + tail


def cosh_lemma_rhs(w, a, config: QuadratureConfig = DEFAULT) -> complex:
    """(a+1)^w/(18w^2-2) [(3-9w) Phi1 - (3+9w) Phi2] with Phi1, Phi2 Appell values."""
    w, a = complex(w), float(a)
    if not w.real < -1.0 / 3.0:
        raise DomainError("the lemma needs Re(w) < -1/3")
    if not a > 1.0:
        raise DomainError("the lemma needs a > 1")
    denom = 18.0 * w * w - 2.0
    if abs(denom) < 1e-12:
        raise DomainError("18 w^2 - 2 vanishes")
    r = math.sqrt((a - 1.0) / (a + 1.0))
    z1, z2 = 0.5 - 0.5 * r, 0.5 + 0.5 * r
    phi1 = appell_f1_picard(1.0, -w, -w, -w + 2.0 / 3.0, z1, z2, config)
    phi2 = appell_f1_picard(1.0, -w, -w, -w + 4.0 / 3.0, z1, z2, config)
    pref = cmath.exp(w * math.log(a + 1.0)) / denom
    return pref * ((3.0 - 9.0 * w) * phi1 - (3.0 + 9.0 * w) * phi2)


def cosh_lemma_check(w, a, config: QuadratureConfig = DEFAULT) -> float:
    rhs = cosh_lemma_rhs(w, a, config)
    return abs(cosh_integral(w, a, config) - rhs)


# ---------------------------------------------------------------------------
# K_a(m y) K_a(n y) = int_0^inf K_0(alpha(u) y) cosh(a u) du

def bessel_product_identity_check(av: float, m: float, n: float, y: float,
                                  config: QuadratureConfig = DEFAULT) -> float:
    av, m, n, y = float(av), float(m), float(n), float(y)
    if not (m > 0 and n > 0 and y > 0):
        raise DomainError("m, n, y must be positive")
    lhs = bessel_k_real(av, m * y, config) * bessel_k_real(av, n * y, config)

    def alpha(u):
        return math.sqrt(m * m + n * n + 2.0 * m * n * math.cosh(u))

    # K_0(z) ~ e^-z, so the integrand dies once alpha(u) y - |a| u passes the margin
    margin = config.truncation_margin
    upper = 1.0
    while alpha(upper) * y - abs(av) * upper - (m + n) * y < margin + 5.0:
        upper *= 1.3
    h = 0.02
    k = int(math.ceil(upper / h))
    vals = np.array([bessel_k_real(0.0, alpha(i * h) * y, config) * math.cosh(av * i * h)
                     for i in range(k + 1)])
    vals[0] *= 0.5
    rhs = h * math.fsum(vals)
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# the Mellin transform of K_{1/3}(m y) K_{1/3}(n y) e^{-y}

def identity1_lhs(s, m: float, n: float, config: QuadratureConfig = DEFAULT) -> complex:
    """int_0^inf K_{1/3}(m y) K_{1/3}(n y) e^-y y^(2s) dy/y, trapezoid in log y."""
    s = complex(s)
    if not s.real > 1.0 / 3.0:
        raise DomainError("identity1 needs Re(s) > 1/3")
    margin = config.truncation_margin
    # near 0 the integrand is ~ y^(2s - 2/3); near infinity ~ exp(-(1+m+n) y)
    x_lo = -(margin + 5.0) / (2.0 * s.real - 2.0 / 3.0)
    lam = 1.0 + m + n
    y_hi = 1.0
    while lam * y_hi - 2.0 * s.real * math.log(y_hi) < margin + 10.0:
        y_hi *= 1.5
    x_hi = math.log(y_hi)
    h = 0.05
    xs = np.arange(math.floor(x_lo / h), math.ceil(x_hi / h) + 1) * h
    vals = []
    for x in xs:
        yv = math.exp(x)
        k = bessel_k_real(1.0 / 3.0, m * yv, config) * bessel_k_real(1.0 / 3.0, n * yv, config)
        vals.append(k * cmath.exp(2.0 * s * x - yv))
    return h * fsum_complex(vals)


def identity1_rhs(s, m: float, n: float, config: QuadratureConfig = DEFAULT) -> complex:
    """(sqrt(pi)/2^(2s)) G(2s)^2/G(2s+1/2) int_0^inf 2F1(s+1/2, s; 2s+1/2; 1 - alpha(u)^2) cosh(u/3) du."""
    s = complex(s)
    if not s.real > 1.0 / 3.0:
        raise DomainError("identity1 needs Re(s) > 1/3")
    margin = config.truncation_margin
    # 2F1(..., 1 - alpha^2) ~ C alpha^(-2s), so the integrand decays like e^(-(Re s - 1/3) u)
    C = abs(math.log(m * n)) + 10.0
    U = (margin + C) / (s.real - 1.0 / 3.0)
    h = 0.1
    k = int(math.ceil(U / h))
    vals = []
    for i in range(k + 1):
        u = i * h
        alpha2 = m * m + n * n + 2.0 * m * n * math.cosh(u)
        vals.append(gauss_2f1(s + 0.5, s, 2.0 * s + 0.5, 1.0 - alpha2) * math.cosh(u / 3.0))
    vals[0] *= 0.5
    integral = h * fsum_complex(vals)
    lg = 2.0 * log_gamma(2.0 * s) - log_gamma(2.0 * s + 0.5) - 2.0 * s * math.log(2.0)
    return math.sqrt(math.pi) * cmath.exp(lg) * integral


def identity1_check(s, m: float, n: float, config: QuadratureConfig = DEFAULT) -> float:
    return abs(identity1_lhs(s, m, n, config) - identity1_rhs(s, m, n, config))


# ---------------------------------------------------------------------------
# int_0^inf y^(2s - 4/3) e^(-4 pi y) K_{1/3}(4 pi y) dy

def first_integral_lhs(s, config: QuadratureConfig = DEFAULT) -> complex:
    s = complex(s)
    if not s.real > 1.0 / 3.0:
        raise DomainError("the first integral needs Re(s) > 1/3")
    margin = config.truncation_margin
    x_lo = -(margin + 5.0) / (2.0 * s.real - 2.0 / 3.0)
    # e^{-8 pi y} past y ~ (margin + 2 Re s log y)/(8 pi)
    y_hi = 1.0
    while 8.0 * math.pi * y_hi - 2.0 * s.real * math.log(y_hi) < margin + 10.0:
        y_hi *= 1.5
    h = 0.05
    xs = np.arange(math.floor(x_lo / h), math.ceil(math.log(y_hi) / h) + 1) * h
    vals = []
    for x in xs:
        yv = math.exp(x)
        z = _FOUR_PI * yv
        vals.append(bessel_k_real(1.0 / 3.0, z, config) * cmath.exp((2.0 * s - 1.0 / 3.0) * x - z))
    return h * fsum_complex(vals)


def first_integral_rhs(s) -> complex:
    """2^(-6s+1) pi^(-2s+5/6) G(2s) G(2s-2/3) / G(2s+1/6)."""
    s = complex(s)
    if s == 1.0 / 3.0:
        raise DomainError("s = 1/3 is a pole")
    lg = (log_gamma(2.0 * s) + log_gamma(2.0 * s - 2.0 / 3.0) - log_gamma(2.0 * s + 1.0 / 6.0)
          + (1.0 - 6.0 * s) * math.log(2.0) + (5.0 / 6.0 - 2.0 * s) * math.log(math.pi))
    return cmath.exp(lg)


def first_integral_check(s, config: QuadratureConfig = DEFAULT) -> float:
    """Relative residual |LHS - RHS| / |RHS|."""
    rhs = first_integral_rhs(s)
    return abs(first_integral_lhs(s, config) - rhs) / abs(rhs)


def first_integral_residue_probe(offset: float = 1e-6) -> float:
    """(s - 1/3) times the closed form, at s = 1/3 + offset."""
    s = 1.0 / 3.0 + offset
    return (offset * first_integral_rhs(s)).real


def first_integral_residue() -> float:
    """The exact residue at s = 1/3: 2^-2 pi^(1/6) G(2/3)/G(5/6).

    Gamma(2s - 2/3) has residue 1/2 in s there, so the constant is one half
    of 2^-1 pi^(1/6) G(2/3)/G(5/6).
    """
    lg = log_gamma(2.0 / 3.0) - log_gamma(5.0 / 6.0)
    return 0.25 * math.pi ** (1.0 / 6.0) * math.exp(lg.real)


def stated_residue_constant() -> float:
    """2^-1 pi^(1/6) G(2/3)/G(5/6)."""
    lg = log_gamma(2.0 / 3.0) - log_gamma(5.0 / 6.0)
    return 0.5 * math.pi ** (1.0 / 6.0) * math.exp(lg.real)
