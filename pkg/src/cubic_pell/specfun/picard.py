"""The Picard-type integral

    F(s, x) = int_0^1 (t^(s-4/3) + t^(s-2/3)) (x t + (t-1)^2/2)^(-s) dt,

its s-derivative, its binomial expansion in x, and its large-|Im s| asymptotics.

Writing x t + (t-1)^2/2 = P(t)/2 with P(t) = 1 + 2(x-1) t + t^2 gives
F = 2^s [J(s-4/3) + J(s-2/3)], J(beta) = int_0^1 t^beta P^(-s) dt.  The piece
[0, eps] is integrated term by term from the Gegenbauer expansion of P^(-s);
the rest becomes, after t = exp(-v),

    int_0^V (t^(-1/3) + t^(1/3)) exp(s L(v)) dv,   L = log t - log P(t) real,

so one complex exponential per node serves both F and dF/ds.
"""
from __future__ import annotations

import cmath
import math
from functools import lru_cache

import numpy as np

from ..errors import ConvergenceError, DomainError
from .quadrature import DEFAULT, QuadratureConfig, fsum_complex, panel_nodes

_LOG2 = math.log(2.0)
_HEAD_TERMS = 60


def _check(s: complex, x: float) -> None:
    if not s.real > 1.0 / 3.0:
        raise DomainError("picard_F needs Re(s) > 1/3")
    if not x > 0:
        raise DomainError("picard_F needs x > 0")


def _radius(x: float) -> float:
    """Distance from 0 to the nearest root of P."""
    if x >= 2.0:
        return (x - 1.0) - math.sqrt(x * (x - 2.0))
    return 1.0


@lru_cache(maxsize=256)
def _tail_rule(x: float, size_bucket: int, osc_bucket: int):
    """Nodes in v, weights times (t^-1/3 + t^1/3), and L(v) for the tail.

    Depends on s only through coarse buckets of |s| and |Im s|, so nearby s
    (finite differences, conjugates) see the same rule.
    """
    eps = _radius(x) * 0.25 / (1.0 + 4.0 * size_bucket)
    upper = -math.log(eps)
    rate = 2.0 * 4.0 * osc_bucket + 1.0
    panels = max(8, int(math.ceil(upper * rate / 4.0)))
    v, w = panel_nodes(0.0, upper, panels, 16)
    t = np.exp(-v)
    P = 1.0 + 2.0 * (x - 1.0) * t + t * t
    L = -v - np.log(P)
    W = w * (t ** (-1.0 / 3.0) + t ** (1.0 / 3.0))
    for arr in (W, L):
        arr.setflags(write=False)
    return eps, W, L


def _rule(s: complex, x: float):
    return _tail_rule(float(x), int(math.ceil(abs(s) / 4.0)), int(math.ceil(abs(s.imag) / 4.0)))


def _head(s: complex, x: float, eps: float, with_deriv: bool):
    """int_0^eps (t^(s-4/3) + t^(s-2/3)) P^(-s) dt and its s-derivative.

    P^(-s) = sum c_k t^k (Gegenbauer recurrence, with d_k = dc_k/ds), and each
    t^(k + s -/+ 1/3) integrates in closed form.  eps is well inside the
    radius of convergence, so the terms fall off at least like 4^-k.
    """
    beta = x - 1.0
    le = math.log(eps)
    val = 0j
    der = 0j
    c_prev, c = 0j, 1.0 + 0j
    d_prev, d = 0j, 0j
    eps_k = 1.0
    e_lo = cmath.exp((s - 1.0 / 3.0) * le)
    e_hi = cmath.exp((s + 1.0 / 3.0) * le)
    for k in range(_HEAD_TERMS):
        g_lo = s - 1.0 / 3.0 + k
        g_hi = s + 1.0 / 3.0 + k
        a_lo = e_lo * eps_k
        a_hi = e_hi * eps_k
        term = c * (a_lo / g_lo + a_hi / g_hi)
        val += term
        if with_deriv:
            der += d * (a_lo / g_lo + a_hi / g_hi)
            der += c * (a_lo * (le / g_lo - 1.0 / (g_lo * g_lo)) + a_hi * (le / g_hi - 1.0 / (g_hi * g_hi)))
        if k > 4 and abs(c) * eps_k < 1e-18 * abs(val) and abs(c_prev) * eps_k < 1e-17 * abs(val):
            break
        # (k+1) c_{k+1} = -2 beta (k+s) c_k - (k-1+2s) c_{k-1}
        c_next = -(2.0 * beta * (k + s) * c + (k - 1 + 2.0 * s) * c_prev) / (k + 1)
        if with_deriv:
            d_next = -(2.0 * beta * (k + s) * d + 2.0 * beta * c
                       + (k - 1 + 2.0 * s) * d_prev + 2.0 * c_prev) / (k + 1)
            d_prev, d = d, d_next
        c_prev, c = c, c_next
        eps_k *= eps
    return val, der


def _evaluate(s: complex, x: float, with_deriv: bool):
    eps, W, L = _rule(s, x)
    e = np.exp(s * L)
    tail = fsum_complex(W * e)
    head, head_d = _head(s, x, eps, with_deriv)
    two_s = cmath.exp(s * _LOG2)
    F = two_s * (head + tail)
    if not with_deriv:
        return F, None
    dtail = fsum_complex(W * L * e)
    return F, _LOG2 * F + two_s * (head_d + dtail)


def picard_F(s, x, config: QuadratureConfig = DEFAULT) -> complex:
    s, x = complex(s), float(x)
    _check(s, x)
    return _evaluate(s, x, False)[0]


def picard_F_deriv(s, x, config: QuadratureConfig = DEFAULT) -> complex:
    """d/ds F(s, x)."""
    s, x = complex(s), float(x)
    _check(s, x)
    return _evaluate(s, x, True)[1]


def picard_F_with_deriv(s, x) -> tuple[complex, complex]:
    s, x = complex(s), float(x)
    _check(s, x)
    return _evaluate(s, x, True)


def binomial_expand_F(s, x, x0, K: int, config: QuadratureConfig = DEFAULT) -> complex:
    """sum_{k<=K} binom(-s, k) (x - x0)^k F(s + k, x0)."""
    s, x, x0 = complex(s), float(x), float(x0)
    _check(s, x0)
    if K < 0:
        raise DomainError("K must be nonnegative")
    dx = x - x0
    coef = 1.0 + 0j
    total = 0j
    prev = None
    for k in range(K + 1):
        term = coef * picard_F(s + k, x0) if k == 0 or dx != 0 else 0j
        if prev is not None and prev != 0 and term != 0 and k >= 3 and abs(term) > abs(prev):
            raise ConvergenceError(f"binomial expansion diverges: term ratio {abs(term / prev):.3g} > 1")
        total += term
        prev = term
        coef *= (-s - k) / (k + 1) * dx
    return total


def saddle_asymptotic(sigma: float, t: float, a: float) -> complex:
    """(2 pi/|t|)^(1/2) e^(-i t log a) 2 a^(-sigma) a^(-1/2)."""
    sigma, t, a = float(sigma), float(t), float(a)
    if t == 0:
        raise DomainError("the asymptotic needs t != 0")
    if not a > 0:
        raise DomainError("the asymptotic needs a > 0")
    return math.sqrt(2.0 * math.pi / abs(t)) * cmath.exp(-1j * t * math.log(a)) * 2.0 * a ** (-sigma - 0.5)


def saddle_leading_term(sigma: float, t: float, a: float) -> complex:
    """Leading term of F(sigma + i t, a) as |t| grows.

    With phi(u) = log u - log(a u + (u-1)^2/2) the integrand is
    (u^(-4/3) + u^(-2/3)) exp(s phi(u)).  phi is stationary at the endpoint
    u = 1, with phi(1) = -log a and phi''(1) = -1/a, so only half of the
    Gaussian is picked up:

        2 a^(-s) * (1/2) (2 pi a/|t|)^(1/2) e^(-i pi/4 sgn t).
    """
    sigma, t, a = float(sigma), float(t), float(a)
    if t == 0:
        raise DomainError("the asymptotic needs t != 0")
    if not a > 0:
        raise DomainError("the asymptotic needs a > 0")
    phase = -t * math.log(a) - math.copysign(math.pi / 4.0, t)
    return math.sqrt(2.0 * math.pi / abs(t)) * cmath.exp(1j * phase) * a ** (0.5 - sigma)
