"""Cubic Pell witnesses n y^3 - d m x^3 = 1 read off from pairs tau(nu), tau(1 + d nu)."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .eisenstein import LAMBDA, ONE, UNITS, EisensteinInt, KRational, ThetaIndex
from .errors import VerificationError
from .lfunctions import _check_d, support_pairs
from .theta_tau import FORMS, TauDecomposition


@dataclass(frozen=True)
class PellWitness:
    nu: ThetaIndex
    dec_nu: TauDecomposition
    dec_succ: TauDecomposition
    m: KRational
    x: KRational
    n: KRational
    y: KRational
    pure_integral: bool

    @property
    def m_has_lambda2(self) -> bool:
        """True when m carries the factor lam^2 (forms F1-F3), so m is not squarefree."""
        return self.dec_nu.form != "F4"

    @property
    def n_has_lambda2(self) -> bool:
        return self.dec_succ.form != "F4"


def _lambda_power(k: int) -> KRational:
    if k >= 0:
        return KRational(LAMBDA ** k)
    return KRational(ONE, LAMBDA ** (-k))


def cube_factorisation(dec: TauDecomposition) -> tuple[KRational, KRational]:
    """(m, x) with value = m x^3.

    F4  (lam^(3n-3)):  m = +-a,            x = lam^(n-1) b
    F1-F3 (lam^(3n-4)): m = +-w^j lam^2 a,  x = lam^(n-2) b
    """
    unit = UNITS[dec.omega_exp + (0 if dec.sign > 0 else 3)]
    if dec.form == "F4":
        m = KRational(unit * dec.a)
        x = _lambda_power(dec.n - 1) * KRational(dec.b)
    else:
        m = KRational(unit * LAMBDA * LAMBDA * dec.a)
        x = _lambda_power(dec.n - 2) * KRational(dec.b)
    return m, x


def _is_integral(q: KRational) -> bool:
    return q.is_integral()


def witness_from_decompositions(d: int, nu: ThetaIndex, dec_nu: TauDecomposition,
                                dec_succ: TauDecomposition) -> PellWitness:
    """Build and exactly verify the witness; a failed identity raises VerificationError."""
    if dec_nu is None or dec_succ is None:
        raise ValueError("both decompositions are required")
    d = int(d)
    m, x = cube_factorisation(dec_nu)
    n, y = cube_factorisation(dec_succ)
    nu_val = nu.value()
    succ_val = KRational(ONE) + nu_val * d
    if m * x ** 3 != nu_val:
        raise VerificationError(f"nu != m x^3 at {nu!r}")
    if n * y ** 3 != succ_val:
        raise VerificationError(f"1 + d nu != n y^3 at {nu!r}")
    if n * y ** 3 - m * x ** 3 * d != KRational(ONE):
        raise VerificationError(f"n y^3 - d m x^3 != 1 at {nu!r}")
    pure = dec_nu.form == "F4" and dec_succ.form == "F4" and _is_integral(x) and _is_integral(y)
    return PellWitness(nu, dec_nu, dec_succ, m, x, n, y, pure)


def _dec(raw) -> TauDecomposition:
    form, sign, n, a, b, _ = raw
    return TauDecomposition(FORMS[form], sign, n, a, b)


def _order_key(nu: ThetaIndex):
    z = complex(nu)
    angle = math.atan2(z.imag, z.real) % (2.0 * math.pi)
    return nu.num.norm(), angle


def find_solutions(d: int, R: float, workers: int = 1) -> list[PellWitness]:
    """Witnesses for every 0 < |nu| <= R with tau(nu) conj(tau(1 + d nu)) != 0.

    Sorted by |nu| and then by the argument of nu in [0, 2 pi).
    """
    d = _check_d(d)
    pairs, _ = support_pairs(d, R, workers)
    out = []
    for u, v, raw, raw2 in pairs:
        nu = ThetaIndex(EisensteinInt(u, v))
        out.append(witness_from_decompositions(d, nu, _dec(raw), _dec(raw2)))
    out.sort(key=lambda w: _order_key(w.nu))
    return out
