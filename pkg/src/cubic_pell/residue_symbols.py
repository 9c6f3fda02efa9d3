"""Cubic residue symbols, the additive character e(.) and residue systems."""
from __future__ import annotations

import cmath
import itertools
import math
from functools import lru_cache
from typing import Iterator

from .eisenstein import LAMBDA, EisensteinInt, KRational, factor, inverse_mod
from .errors import DomainError

TWO_PI = 2.0 * math.pi

# w^k as complex numbers, exact up to rounding of sqrt(3)/2
OMEGA_POWERS = (1.0 + 0.0j, complex(-0.5, math.sqrt(3.0) / 2), complex(-0.5, -math.sqrt(3.0) / 2))


class CubicSymbolValue:
    """Either 0 or w^k with k in {0, 1, 2}."""

    __slots__ = ("k",)

    def __init__(self, k: int | None):
        self.k = None if k is None else k % 3

    @property
    def is_zero(self) -> bool:
        return self.k is None

    @property
    def tag(self) -> str:
        return "zero" if self.k is None else f"omega_power {self.k}"

    def __mul__(self, other: "CubicSymbolValue") -> "CubicSymbolValue":
        if self.k is None or other.k is None:
            return ZERO_SYMBOL
        return CubicSymbolValue(self.k + other.k)

    def __eq__(self, other):
        if isinstance(other, CubicSymbolValue):
            return self.k == other.k
        if other == 0:
            return self.k is None
        if other == 1:
            return self.k == 0
        return NotImplemented

    def __hash__(self):
        return hash(("chi3", self.k))

    def __complex__(self):
        return 0j if self.k is None else OMEGA_POWERS[self.k]

    def conj(self) -> "CubicSymbolValue":
        return self if self.k is None else CubicSymbolValue(-self.k)

    def __repr__(self):
        return "CubicSymbolValue(0)" if self.k is None else f"CubicSymbolValue(w^{self.k})"


ZERO_SYMBOL = CubicSymbolValue(None)
ONE_SYMBOL = CubicSymbolValue(0)


# ---------------------------------------------------------------------------
# symbols at a single primary prime, on plain integers

@lru_cache(maxsize=None)
def prime_data(pu: int, pv: int) -> tuple:
    """Reduction data for the residue field of the primary prime pu + pv w.

    ('split', p, r) when the field is Z/p with w = r, or ('inert', q) for
    the field F_q[w] of q^2 elements.
    """
    n = pu * pu - pu * pv + pv * pv
    if pv == 0:
        q = -pu
        return ("inert", q)
    p = n
    # pu + pv w = 0 (mod pi)  =>  w = -pu / pv
    r = (-pu * pow(pv, -1, p)) % p
    return ("split", p, r)


def fq2_mul(a, b, c, d, q):
    bd = b * d
    return (a * c - bd) % q, (a * d + b * c - bd) % q


def fq2_pow(x, y, e, q):
    ru, rv = 1, 0
    while e:
        if e & 1:
            ru, rv = fq2_mul(ru, rv, x, y, q)
        x, y = fq2_mul(x, y, x, y, q)
        e >>= 1
    return ru, rv


def symbol_at_prime(bu: int, bv: int, data: tuple) -> int:
    """Index k with (beta/pi) = w^k, or -1 when pi divides beta."""
    if data[0] == "split":
        _, p, r = data
        x = (bu + bv * r) % p
        if x == 0:
            return -1
        t = pow(x, (p - 1) // 3, p)
        if t == 1:
            return 0
        return 1 if t == r else 2
    q = data[1]
    x, y = bu % q, bv % q
    if x == 0 and y == 0:
        return -1
    tu, tv = fq2_pow(x, y, (q * q - 1) // 3, q)
    if (tu, tv) == (1, 0):
        return 0
    if (tu, tv) == (0, 1):
        return 1
    return 2


def check_modulus(a) -> list[tuple[int, int]]:
    """Validate a squarefree primary modulus coprime to lam; return its primes as (u, v)."""
    a = EisensteinInt.coerce(a)
    if not a:
        raise DomainError("modulus must be nonzero")
    if a.norm() % 3 == 0:
        raise DomainError(f"modulus {a} is not coprime to lambda")
    if not a.is_primary():
        raise DomainError(f"modulus {a} is not primary (= 1 mod 3)")
    f = factor(a)
    if any(k != 1 for _, k in f.primes):
        raise DomainError(f"modulus {a} is not squarefree")
    return [(p.u, p.v) for p, _ in f.primes]


def cubic_symbol(beta, a) -> CubicSymbolValue:
    """The cubic residue symbol (beta/a)_3 for primary squarefree a coprime to lam."""
    beta = EisensteinInt.coerce(beta)
    total = 0
    for pu, pv in check_modulus(a):
        k = symbol_at_prime(beta.u, beta.v, prime_data(pu, pv))
        if k < 0:
            return ZERO_SYMBOL
        total += k
    return CubicSymbolValue(total)


# ---------------------------------------------------------------------------
# the additive character

def exp_2pi_i_frac(num: int, den: int) -> complex:
    """exp(2 pi i num/den), reducing num mod den exactly first."""
    r = num % den
    if 2 * r > den:
        r -= den
    return cmath.exp(1j * (TWO_PI * r / den))


def e_char(q) -> complex:
    """e(q) = exp(4 pi i Re q) with Re q reduced mod 1/2 in exact arithmetic."""
    r = KRational.coerce(q).re_exact() * 2
    return exp_2pi_i_frac(r.numerator, r.denominator)


# ---------------------------------------------------------------------------
# residue systems

def _local_residues(p: EisensteinInt, k: int, ramified: bool) -> list[EisensteinInt]:
    if ramified:
        # lam^k: x + y w with 0 <= x < 3^ceil(k/2), 0 <= y < 3^floor(k/2)
        nx, ny = 3 ** ((k + 1) // 2), 3 ** (k // 2)
        return [EisensteinInt(x, y) for y in range(ny) for x in range(nx)]
    n = p.norm()
    if p.v == 0:
        q = abs(p.u) ** k
        return [EisensteinInt(x, y) for y in range(q) for x in range(q)]
    return [EisensteinInt(x, 0) for x in range(n ** k)]


def residues_mod(a) -> Iterator[EisensteinInt]:
    """A complete residue system modulo a, assembled by the Chinese remainder theorem."""
    a = EisensteinInt.coerce(a)
    if not a:
        raise DomainError("modulus must be nonzero")
    f = factor(a)
    parts = []
    if f.lambda_exp:
        parts.append((LAMBDA ** f.lambda_exp, _local_residues(LAMBDA, f.lambda_exp, True)))
    for p, k in f.primes:
        parts.append((p ** k, _local_residues(p, k, False)))
    if not parts:
        yield EisensteinInt(0, 0)
        return
    if len(parts) == 1:
        yield from parts[0][1]
        return
    idem = []
    for mod, _ in parts:
        cof = a.exact_div(mod)
        idem.append(cof * inverse_mod(cof, mod))
    for combo in itertools.product(*(res for _, res in parts)):
        beta = EisensteinInt(0, 0)
        for r, e in zip(combo, idem):
            beta = beta + r * e
        yield beta % a
