"""Fourier coefficients tau(nu) of the cubic theta function, nu in lam^-3 Z[w].

A nonzero coefficient requires nu to have one of the shapes

    F1, F2, F3:  nu = +-w^j lam^(3n-4) a b^3   (j = 0, 1, 2;  n >= 1)
    F4:          nu = +-    lam^(3n-3) a b^3   (n >= 0)

with a squarefree, and a, b = 1 (mod 3).  The witness is unique.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .eisenstein import (
    LAMBDA,
    ONE,
    OMEGA,
    UNITS,
    EisensteinInt,
    KRational,
    ThetaIndex,
    factor_coprime,
)
from .errors import DomainError
from .gauss_sums import gauss_sum_from_primes

FORMS = ("F1", "F2", "F3", "F4")

# the constant sigma = 9 sqrt(3)/2; its square is 243/4
SIGMA = 4.5 * math.sqrt(3.0)
SIGMA_SQUARED = Fraction(243, 4)

_E_MINUS_2PI_9 = cmath.exp(-2j * math.pi / 9)
_E_PLUS_2PI_9 = cmath.exp(2j * math.pi / 9)

_LAMBDA2 = LAMBDA * LAMBDA
# Gauss-sum argument for each form
_MU_FOR_FORM = (_LAMBDA2, OMEGA * _LAMBDA2, OMEGA * OMEGA * _LAMBDA2, ONE)


@dataclass(frozen=True)
class TauDecomposition:
    form: str
    sign: int
    n: int
    a: EisensteinInt
    b: EisensteinInt

    @property
    def omega_exp(self) -> int:
        return 0 if self.form == "F4" else FORMS.index(self.form)

    @property
    def lambda_exp(self) -> int:
        """Exponent of lam in nu: 3n - 4 for F1-F3, 3n - 3 for F4."""
        return 3 * self.n - 3 if self.form == "F4" else 3 * self.n - 4

    def reconstruct(self) -> ThetaIndex:
        """The index nu rebuilt exactly from the witness."""
        unit = UNITS[self.omega_exp + (0 if self.sign > 0 else 3)]
        # lam^3 nu = unit * lam^(lambda_exp + 3) * a * b^3, and lambda_exp + 3 >= 0
        return ThetaIndex(unit * LAMBDA ** (self.lambda_exp + 3) * self.a * self.b ** 3)


def _decompose_raw(u: int, v: int):
    """Decomposition of nu = (u + v w)/lam^3 with the prime list of a, or None."""
    if u == 0 and v == 0:
        return None
    e = -3
    while (u + v) % 3 == 0:
        u, v = (2 * v - u) // 3, (v - 2 * u) // 3
        e += 1
    r = e % 3
    if r == 1:
        return None
    # unit normalisation of the lam-free part without factoring
    k = _unit_of(u, v)
    j = k % 3
    if r == 0 and j != 0:
        return None
    sign = -1 if k >= 3 else 1
    unit = UNITS[k]
    c = EisensteinInt(u, v) * unit.conj()
    _, primes = factor_coprime(c.u, c.v)
    a, b = ONE, ONE
    a_primes = []
    for pu, pv, mult in primes:
        q = mult % 3
        if q == 2:
            return None
        p = EisensteinInt(pu, pv)
        if q:
            a = a * p
            a_primes.append((pu, pv))
        if mult >= 3:
            b = b * p ** (mult // 3)
    if r == 0:
        form, n = 3, (e + 3) // 3
    else:
        form, n = j, (e + 4) // 3
    return form, sign, n, a, b, a_primes


def _unit_of(u: int, v: int) -> int:
    """Index of the unit e with (u + v w)/e = 1 (mod 3); lam must not divide u + v w."""
    # u + v w = e * primary = e (mod 3), and the six units are distinct mod 3
    return _UNIT_TABLE[(u % 3, v % 3)]


def _build_unit_table():
    table = {}
    for k, e in enumerate(UNITS):
        table[(e.u % 3, e.v % 3)] = k
    return table


_UNIT_TABLE = _build_unit_table()


def tau_decompose(nu: ThetaIndex) -> TauDecomposition | None:
    raw = _decompose_raw(nu.num.u, nu.num.v)
    if raw is None:
        return None
    form, sign, n, a, b, _ = raw
    return TauDecomposition(FORMS[form], sign, n, a, b)


def _tau_from_raw(raw) -> complex:
    form, sign, n, a, b, a_primes = raw
    mu = _MU_FOR_FORM[form]
    g = gauss_sum_from_primes(mu.u, mu.v, a_primes).conjugate()
    scale = math.sqrt(b.norm() / a.norm())
    if form == 3:
        return g * scale * 3.0 ** ((n + 5) / 2)
    val = g * scale * 3.0 ** (n / 2 + 2)
    if form == 1:
        val *= _E_MINUS_2PI_9
    elif form == 2:
        val *= _E_PLUS_2PI_9
    return val


def tau(nu: ThetaIndex) -> complex:
    raw = _decompose_raw(nu.num.u, nu.num.v)
    if raw is None:
        return 0j
    return _tau_from_raw(raw)


def tau_num(u: int, v: int) -> complex:
    """tau((u + v w)/lam^3) on plain integers, for bulk loops."""
    raw = _decompose_raw(u, v)
    if raw is None:
        return 0j
    return _tau_from_raw(raw)


def tau_bound(nu: ThetaIndex) -> float:
    """The majorant 3^((n+5)/2) |b| of |tau(nu)|."""
    dec = tau_decompose(nu)
    if dec is None:
        raise DomainError(f"{nu!r} has no tau decomposition")
    return 3.0 ** ((dec.n + 5) / 2) * math.sqrt(dec.b.norm())


def theta_index(value) -> ThetaIndex:
    """Convenience: a ThetaIndex from an Eisenstein integer, a Fraction or a KRational."""
    if isinstance(value, ThetaIndex):
        return value
    if isinstance(value, (int, tuple, EisensteinInt)):
        return ThetaIndex.from_integral(EisensteinInt.coerce(value))
    return ThetaIndex.from_krational(KRational.coerce(value))
