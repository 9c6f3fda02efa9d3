"""Truncated Dirichlet series built from theta coefficients, and zeta_K.

Indices nu run over lam^-3 Z[w]; every loop works on the numerator
N = lam^3 nu, so |nu|^2 = norm(N)/27 and 1 + d nu has numerator lam^3 + d N.
"""
from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import bernoulli

from .eisenstein import LAMBDA3, enumerate_disc, ensure_sieve
from .errors import DomainError
from .specfun import identity1_lhs, identity1_rhs, picard_F
from .theta_tau import _decompose_raw, _tau_from_raw, theta_index

_SQRT27 = math.sqrt(27.0)
_L3U, _L3V = LAMBDA3.u, LAMBDA3.v

# |tau(nu)| <= C_TAU |nu|^(1/3): from |tau|^2 <= 3^(n+5) N(b) and 3^n N(b) <= (81 |nu|^2)^(1/3)
C_TAU = 3.0 ** (19.0 / 6.0)
# lam^-3 Z[w]: points per unit area, and the diameter of a fundamental parallelogram
LATTICE_DENSITY = 18.0 * math.sqrt(3.0)
CELL_DIAMETER = 1.0 / 3.0

_CHUNK = 4096


@dataclass(frozen=True)
class TruncatedSum:
    value: complex
    terms_total: int
    terms_nonzero: int
    radius: float
    tail_bound: float | None = None

    def __post_init__(self):
        if self.terms_nonzero > self.terms_total:
            raise ValueError("terms_nonzero exceeds terms_total")
        if not self.radius > 0:
            raise ValueError("radius must be positive")


@dataclass(frozen=True)
class AdFactor:
    value: float


def _check_d(d: int) -> int:
    d = int(d)
    if d < 2:
        raise DomainError("d must be an integer > 1")
    n = d
    p = 2
    while p * p * p <= n:
        if n % (p * p * p) == 0:
            raise DomainError(f"d = {d} is not cubefree")
        p += 1
    return d


def a_d(d: int, nu) -> AdFactor:
    """(|nu|^2 + |1 + d nu|^2 - 1) / (2 |nu| |1 + d nu|)."""
    nu = theta_index(nu)
    d = int(d)
    n1 = nu.norm()
    n2 = nu.affine(d).norm()
    if n1 == 0 or n2 == 0:
        raise DomainError("a_d needs nu != 0 and 1 + d nu != 0")
    num = n1 + n2 - 1
    # square the exact rational, take one square root, restore the sign
    ratio = Fraction(num * num) / (4 * n1 * n2)
    return AdFactor(math.copysign(math.sqrt(ratio), num))


def _a_d_num(d: int, n1: int, n2: int) -> float:
    """a_d from the integer numerator norms norm(lam^3 nu) and norm(lam^3 (1 + d nu))."""
    return (n1 + n2 - 27) / (2.0 * math.sqrt(n1 * n2))


# ---------------------------------------------------------------------------
# term enumeration

def _numerators(R: float) -> list[tuple[int, int]]:
    if not R > 0:
        raise DomainError("radius must be positive")
    return [(z.u, z.v) for z in enumerate_disc(_SQRT27 * R)]


def _run_chunks(fn, items: list, workers: int) -> list:
    """Apply ``fn`` to fixed-size chunks (in order) and concatenate."""
    chunks = [items[i:i + _CHUNK] for i in range(0, len(items), _CHUNK)]
    if workers <= 1 or len(chunks) <= 1:
        parts = [fn(c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(fn, chunks))
    out = []
    for p in parts:
        out.extend(p)
    return out


def support_pairs(d: int, R: float, workers: int = 1) -> tuple[list[tuple], int]:
    """Tuples (u, v, raw_nu, raw_succ) where tau(nu) tau(1 + d nu) != 0, and the index count.

    The order is the enumeration order of enumerate_disc.
    """
    d = _check_d(d)
    nums = _numerators(R)
    ensure_sieve(int(27 * R * R * (d + 1) ** 2) + 64)

    def work(chunk):
        out = []
        for u, v in chunk:
            raw = _decompose_raw(u, v)
            if raw is None:
                continue
            su, sv = _L3U + d * u, _L3V + d * v
            raw2 = _decompose_raw(su, sv)
            if raw2 is None:
                continue
            out.append((u, v, raw, raw2))
        return out

    return _run_chunks(work, nums, workers), len(nums)


def _fsum_c(values) -> complex:
    if not values:
        return 0j
    arr = np.asarray(values, dtype=complex)
    return complex(math.fsum(arr.real), math.fsum(arr.imag))


def _pair_terms(d: int, s: complex, R: float, workers: int, star: bool):
    d = _check_d(d)
    s = complex(s)
    pairs, total = support_pairs(d, R, workers)
    limit = (d * d + 1) / (2.0 * d)

    def work(chunk):
        out = []
        for u, v, raw, raw2 in chunk:
            t1 = _tau_from_raw(raw)
            t2 = _tau_from_raw(raw2)
            n1 = u * u - u * v + v * v
            su, sv = _L3U + d * u, _L3V + d * v
            n2 = su * su - su * sv + sv * sv
            # |nu (1 + d nu)| = sqrt(n1 n2)/27
            log_abs = 0.5 * math.log(n1) + 0.5 * math.log(n2) - math.log(27.0)
            term = t1 * t2.conjugate() * cmath.exp(-s * log_abs)
            if star:
                term *= _a_d_num(d, n1, n2) - limit
            out.append(term)
        return out

    terms = _run_chunks(work, pairs, workers)
    nonzero = sum(1 for t in terms if t != 0)
    return _fsum_c(terms), total, nonzero


def l_tail_bound(d: int, sigma: float, R: float) -> float:
    """Majorant of sum over |nu| > R of |tau(nu) tau(1+d nu)| |nu (1+d nu)|^-sigma.

    Uses |tau(nu)| <= C_TAU |nu|^(1/3), |1 + d nu| >= d |nu| - 1, and the
    lattice comparison sum f(|nu|) <= density * int_{|z| > R - delta} f(|z| - delta)
    for decreasing f.  Finite for sigma > 4/3.
    """
    p = 2.0 / 3.0 - 2.0 * sigma
    beta = 1.0 / 3.0 - sigma
    Rp = R - 2.0 * CELL_DIAMETER
    if not (p < -2.0 and Rp > 0 and d - 1.0 / Rp > 0):
        return math.inf
    radial = Rp ** (p + 2.0) / (-p - 2.0) + CELL_DIAMETER * Rp ** (p + 1.0) / (-p - 1.0)
    return C_TAU ** 2 * (d - 1.0 / Rp) ** beta * LATTICE_DENSITY * 2.0 * math.pi * radial


def hjl_tail_bound(s: float, R: float) -> float:
    """Majorant of sum over |nu| > R of |tau(nu)|^2 |nu|^(-2s)."""
    p = 2.0 / 3.0 - 2.0 * s
    Rp = R - 2.0 * CELL_DIAMETER
    if not (p < -2.0 and Rp > 0):
        return math.inf
    radial = Rp ** (p + 2.0) / (-p - 2.0) + CELL_DIAMETER * Rp ** (p + 1.0) / (-p - 1.0)
    return C_TAU ** 2 * LATTICE_DENSITY * 2.0 * math.pi * radial


def L_d_truncated(d: int, s, R: float, workers: int = 1) -> TruncatedSum:
    """sum over 0 < |nu| <= R of tau(nu) conj(tau(1 + d nu)) |nu (1 + d nu)|^-s."""
    s = complex(s)
    value, total, nonzero = _pair_terms(d, s, R, workers, star=False)
    return TruncatedSum(value, total, nonzero, float(R), l_tail_bound(d, s.real, R))


def L_d_star_truncated(d: int, s, R: float, workers: int = 1) -> TruncatedSum:
    """As L_d_truncated with the extra factor a_d(nu) - (d^2 + 1)/(2d)."""
    value, total, nonzero = _pair_terms(d, complex(s), R, workers, star=True)
    return TruncatedSum(value, total, nonzero, float(R))


def sharp_x(d: int) -> float:
    return (d + 1) ** 2 / (2.0 * d)


def L_d_sharp_truncated(d: int, s, R: float, workers: int = 1) -> TruncatedSum:
    """F(s, x_d) L_d(s) - s F(s+1, x_d) L_d*(s) with x_d = (d+1)^2/(2d)."""
    s = complex(s)
    x = sharp_x(d)
    L = L_d_truncated(d, s, R, workers)
    Ls = L_d_star_truncated(d, s, R, workers)
    value = picard_F(s, x) * L.value - s * picard_F(s + 1.0, x) * Ls.value
    return TruncatedSum(value, L.terms_total, L.terms_nonzero, float(R))


def s_d_term_bessel(s, m: float, n: float) -> complex:
    """int_0^inf K_{1/3}(4 pi m y) K_{1/3}(4 pi n y) e^(-4 pi y) y^(2s) dy/y."""
    s = complex(s)
    return cmath.exp(-2.0 * s * math.log(4.0 * math.pi)) * identity1_lhs(s, m, n)


def s_d_term_hypergeometric(s, m: float, n: float) -> complex:
    """The same term through the 2F1 representation."""
    s = complex(s)
    return cmath.exp(-2.0 * s * math.log(4.0 * math.pi)) * identity1_rhs(s, m, n)


def S_d_bessel_truncated(d: int, s, R: float, workers: int = 1) -> TruncatedSum:
    s = complex(s)
    if not s.real > 1.0 / 3.0:
        raise DomainError("S_d needs Re(s) > 1/3")
    d = _check_d(d)
    pairs, total = support_pairs(d, R, workers)

    def work(chunk):
        out = []
        for u, v, raw, raw2 in chunk:
            coef = _tau_from_raw(raw) * _tau_from_raw(raw2).conjugate()
            m = math.sqrt((u * u - u * v + v * v) / 27.0)
            su, sv = _L3U + d * u, _L3V + d * v
            n = math.sqrt((su * su - su * sv + sv * sv) / 27.0)
            out.append(coef * s_d_term_bessel(s, m, n))
        return out

    terms = _run_chunks(work, pairs, workers)
    return TruncatedSum(_fsum_c(terms), total, sum(1 for t in terms if t != 0), float(R))


# ---------------------------------------------------------------------------
# zeta_K = zeta * L(., chi_-3)

_EM_N = 10_000
_EM_TERMS = 10
_B2K = [float(b) for b in bernoulli(2 * _EM_TERMS)[2::2]]


def hurwitz_zeta(s: float, a: float) -> float:
    """zeta(s, a) for real s > 1 by Euler-Maclaurin after N = 10^4 terms."""
    k = np.arange(_EM_N, dtype=float) + a
    head = math.fsum(k ** (-s))
    X = _EM_N + a
    tail = X ** (1.0 - s) / (s - 1.0) + 0.5 * X ** (-s)
    rising = s
    fact = 2.0
    xp = X ** (-s - 1.0)
    for j in range(1, _EM_TERMS + 1):
        # B_2j / (2j)! * s (s+1) ... (s+2j-2) * X^(-s-2j+1)
        tail += _B2K[j - 1] / fact * rising * xp
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        fact *= (2 * j + 1) * (2 * j + 2)
        xp /= X * X
    return head + tail


def chi_minus3(n: int) -> int:
    return (0, 1, -1)[n % 3]


def zeta_K(s: float) -> float:
    """Dedekind zeta of Q(sqrt(-3)) at real s > 1."""
    s = float(s)
    if not s > 1:
        raise DomainError("zeta_K needs s > 1")
    zeta = hurwitz_zeta(s, 1.0)
    # L(s, chi): consecutive pairs (3k+1)^-s - (3k+2)^-s, i.e. a difference of Hurwitz zetas
    L = 3.0 ** (-s) * (hurwitz_zeta(s, 1.0 / 3.0) - hurwitz_zeta(s, 2.0 / 3.0))
    return zeta * L


def hjl_rhs(s: float) -> float:
    s = float(s)
    if not s > 1:
        raise DomainError("the closed form needs s > 1")
    num = 2.0 * 3.0 ** (5.0 + 3.0 * s) * (1.0 + 3.0 ** (1.0 - 2.0 * s)) * (1.0 - 3.0 ** (-s))
    return num * zeta_K(3.0 * s - 1.0) * zeta_K(s) / ((1.0 - 3.0 ** (-2.0 * s)) * zeta_K(2.0 * s))


def hjl_lhs_truncated(s: float, R: float, workers: int = 1) -> TruncatedSum:
    """sum over 0 < |nu| <= R of |tau(nu)|^2 |nu|^(-2s)."""
    s = float(s)
    if not s > 1:
        raise DomainError("hjl_lhs_truncated needs s > 1")
    nums = _numerators(R)
    ensure_sieve(int(27 * R * R) + 64)

    def work(chunk):
        out = []
        for u, v in chunk:
            raw = _decompose_raw(u, v)
            if raw is None:
                continue
            t = _tau_from_raw(raw)
            a2 = t.real * t.real + t.imag * t.imag
            # |nu|^2 = N/27
            out.append(a2 * ((u * u - u * v + v * v) / 27.0) ** (-s))
        return out

    terms = _run_chunks(work, nums, workers)
    value = math.fsum(terms)
    return TruncatedSum(complex(value, 0.0), len(nums), sum(1 for t in terms if t), float(R),
                        hjl_tail_bound(s, R))

