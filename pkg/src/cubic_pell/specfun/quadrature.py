"""Quadrature building blocks shared by the special functions."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and truncation policy.

    ``truncation_margin`` is the drop, in natural-log units below the peak of
    an integrand, at which an infinite range is cut.
    """

    abs_tol: float = 1e-14
    rel_tol: float = 1e-12
    max_subdivisions: int = 40
    truncation_margin: float = 40.0

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 10:
            raise ValueError("max_subdivisions must be at least 10")
        if not self.truncation_margin > 0:
            raise ValueError("truncation_margin must be positive")


DEFAULT = QuadratureConfig()


@lru_cache(maxsize=None)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def panel_nodes(a: float, b: float, panels: int, n: int = 16) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes and weights for [a, b] split into equal panels."""
    x, w = gauss_legendre(n)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def fsum_complex(values) -> complex:
    """Compensated sum of a complex array."""
    values = np.asarray(values)
    if np.iscomplexobj(values):
        return complex(math.fsum(values.real), math.fsum(values.imag))
    return complex(math.fsum(values), 0.0)


def decay_point(logf, start: float, drop: float, step: float = 0.5, limit: int = 200) -> float:
    """First point right of ``start`` where logf has fallen ``drop`` below logf(start).

    ``logf`` must be eventually decreasing; the step grows geometrically.
    """
    target = logf(start) - drop
    x = start
    for _ in range(limit):
        x += step
        if logf(x) < target:
            return x
        step *= 1.5
    raise ArithmeticError("integrand does not decay")


def even_trapezoid(f, h: float, upper: float) -> float | complex:
    """h [f(0)/2 + sum_k f(kh)] for an even rapidly decaying integrand, k h <= upper.

    ``f`` takes a numpy array.
    """
    k = int(math.ceil(upper / h))
    vals = f(np.arange(k + 1) * h)
    vals[0] *= 0.5
    return h * fsum_complex(vals) if np.iscomplexobj(vals) else h * math.fsum(vals)


def tanh_sinh_log(log_integrand, x_max: float, rel_tol: float, max_levels: int = 12):
    """Integral over [0, 1] of exp(log_integrand(log t, log(1 - t))) by tanh-sinh.

    The map t = (1 + tanh(pi/2 sinh x))/2 is evaluated through logs so that
    endpoint singularities t^(p-1), (1-t)^(q-1) never underflow or cancel.
    ``log_integrand`` receives arrays (log t, log(1-t), t) and returns the
    complex log of the integrand.  Levels halve h until successive sums agree.
    """
    h = 0.5
    prev = None
    acc = 0j
    for level in range(max_levels):
        if level == 0:
            xs = np.arange(-math.ceil(x_max / h), math.ceil(x_max / h) + 1) * h
        else:
            xs = (np.arange(-math.ceil(x_max / h), math.ceil(x_max / h)) * 2 + 1) * h
        u = math.pi * np.sinh(xs)
        log_t = -np.logaddexp(0.0, -u)
        log_1mt = -np.logaddexp(0.0, u)
        t = np.exp(log_t)
        logw = np.log(math.pi * np.cosh(xs)) + log_t + log_1mt
        vals = np.exp(log_integrand(log_t, log_1mt, t) + logw)
        acc += fsum_complex(vals)
        total = acc * h
        if prev is not None and abs(total - prev) <= rel_tol * abs(total):
            return total
        prev = total
        h *= 0.5
    raise ArithmeticError("tanh-sinh did not converge")
