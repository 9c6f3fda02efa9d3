"""Exact arithmetic in the Eisenstein integers Z[w] and the field Q(sqrt(-3)).

Elements are written u + v*w with w = exp(2*pi*i/3), so w^2 = -1 - w.
The ramified prime is lam = 1 + 2w = sqrt(-3).
"""
from __future__ import annotations

import math
import threading
from array import array
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .errors import DomainError

SQRT3 = math.sqrt(3.0)


class EisensteinInt:
    """The element u + v*w of Z[w]."""

    __slots__ = ("u", "v")

    def __init__(self, u: int = 0, v: int = 0):
        self.u = int(u)
        self.v = int(v)

    @classmethod
    def coerce(cls, z) -> "EisensteinInt":
        if isinstance(z, EisensteinInt):
            return z
        if isinstance(z, (int, np.integer)):
            return cls(int(z), 0)
        if isinstance(z, tuple) and len(z) == 2:
            return cls(z[0], z[1])
        raise TypeError(f"cannot interpret {z!r} as an Eisenstein integer")

    def __repr__(self):
        return f"EisensteinInt({self.u}, {self.v})"

    def __str__(self):
        if self.v == 0:
            return str(self.u)
        return f"{self.u}{'+' if self.v >= 0 else '-'}{abs(self.v)}w"

    def __eq__(self, other):
        if isinstance(other, EisensteinInt):
            return self.u == other.u and self.v == other.v
        if isinstance(other, int):
            return self.v == 0 and self.u == other
        return NotImplemented

    def __hash__(self):
        return hash((self.u, self.v))

    def __bool__(self):
        return self.u != 0 or self.v != 0

    def __neg__(self):
        return EisensteinInt(-self.u, -self.v)

    def __add__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return EisensteinInt(self.u + other.u, self.v + other.v)

    __radd__ = __add__

    def __sub__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return EisensteinInt(self.u - other.u, self.v - other.v)

    def __rsub__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.u, self.v, other.u, other.v
        bd = b * d
        return EisensteinInt(a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not integral")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "EisensteinInt":
        return EisensteinInt(self.u - self.v, -self.v)

    def norm(self) -> int:
        return self.u * self.u - self.u * self.v + self.v * self.v

    def __complex__(self):
        return complex(self.u - 0.5 * self.v, 0.5 * SQRT3 * self.v)

    def __abs__(self):
        return math.sqrt(self.norm())

    def divides(self, other: "EisensteinInt") -> bool:
        n = self.norm()
        if n == 0:
            return not other
        p = other * self.conj()
        return p.u % n == 0 and p.v % n == 0

    def exact_div(self, other) -> "EisensteinInt":
        """self / other, which must be exact."""
        other = EisensteinInt.coerce(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Z[w]")
        p = self * other.conj()
        qu, ru = divmod(p.u, n)
        qv, rv = divmod(p.v, n)
        if ru or rv:
            raise ArithmeticError(f"{other} does not divide {self}")
        return EisensteinInt(qu, qv)

    def divmod_round(self, other) -> tuple["EisensteinInt", "EisensteinInt"]:
        """Quotient by nearest-lattice rounding and the remainder, norm(rem) < norm(other)."""
        other = EisensteinInt.coerce(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Z[w]")
        p = self * other.conj()
        q = EisensteinInt(_round_div(p.u, n), _round_div(p.v, n))
        return q, self - q * other

    def __mod__(self, other):
        return self.divmod_round(other)[1]

    def is_unit(self) -> bool:
        return self.norm() == 1

    def is_primary(self) -> bool:
        return (self.u - 1) % 3 == 0 and self.v % 3 == 0


def _maybe(z):
    if isinstance(z, EisensteinInt):
        return z
    if isinstance(z, (int, np.integer)):
        return EisensteinInt(int(z), 0)
    return None


def _round_div(a: int, n: int) -> int:
    # nearest integer to a/n for n > 0, ties rounded up
    return (2 * a + n) // (2 * n)


ZERO = EisensteinInt(0, 0)
ONE = EisensteinInt(1, 0)
OMEGA = EisensteinInt(0, 1)
OMEGA2 = EisensteinInt(-1, -1)
LAMBDA = EisensteinInt(1, 2)
LAMBDA3 = LAMBDA * LAMBDA * LAMBDA  # -3 - 6w

# unit index k encodes (-1)^(k // 3) * w^(k % 3)
UNITS = (ONE, OMEGA, OMEGA2, -ONE, -OMEGA, -OMEGA2)
_UNIT_INDEX = {(z.u, z.v): k for k, z in enumerate(UNITS)}


def unit_from_index(k: int) -> EisensteinInt:
    return UNITS[k]


def unit_index(z: EisensteinInt) -> int:
    try:
        return _UNIT_INDEX[(z.u, z.v)]
    except KeyError:
        raise DomainError(f"{z} is not a unit") from None


def norm(z) -> int:
    return EisensteinInt.coerce(z).norm()


def conj(z) -> EisensteinInt:
    return EisensteinInt.coerce(z).conj()


def gcd(z, w) -> EisensteinInt:
    """A greatest common divisor, defined up to a unit."""
    a, b = EisensteinInt.coerce(z), EisensteinInt.coerce(w)
    while b:
        a, b = b, a.divmod_round(b)[1]
    return a


def xgcd(z, w) -> tuple[EisensteinInt, EisensteinInt, EisensteinInt]:
    """Return (g, s, t) with s*z + t*w = g = gcd(z, w)."""
    r0, r1 = EisensteinInt.coerce(z), EisensteinInt.coerce(w)
    s0, s1, t0, t1 = ONE, ZERO, ZERO, ONE
    while r1:
        q, r = r0.divmod_round(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0


def inverse_mod(z, m) -> EisensteinInt:
    g, s, _ = xgcd(z, m)
    if not g.is_unit():
        raise DomainError(f"{z} is not invertible modulo {m}")
    # s*z = g (mod m) with g a unit, so z^-1 = s * g^-1
    return (s * g.conj()) % EisensteinInt.coerce(m)


def lambda_valuation(z) -> tuple[int, EisensteinInt]:
    """Return (e, rest) with z = lam^e * rest and lam not dividing rest."""
    z = EisensteinInt.coerce(z)
    if not z:
        raise DomainError("lambda-valuation of 0 is undefined")
    u, v = z.u, z.v
    e = 0
    # lam | u + v w iff 3 | u + v; then (u + v w)/lam = (u + v w)(-lam)/3
    while (u + v) % 3 == 0:
        u, v = (2 * v - u) // 3, (v - 2 * u) // 3
        e += 1
    return e, EisensteinInt(u, v)


def unit_normalize(m) -> tuple[int, EisensteinInt]:
    """Write m = unit * primary with primary = 1 (mod 3); returns (unit index, primary)."""
    m = EisensteinInt.coerce(m)
    if m.norm() % 3 == 0:
        raise DomainError(f"{m} is divisible by lambda and has no primary associate")
    for k, unit in enumerate(UNITS):
        # candidate primary = m / unit = m * conj(unit)
        c = m * unit.conj()
        if c.is_primary():
            return k, c
    raise AssertionError("no primary associate found")  # unreachable


def primary_part(m) -> EisensteinInt:
    return unit_normalize(m)[1]


# ---------------------------------------------------------------------------
# rational factorisation helpers

class _Sieve:
    """Smallest-prime-factor table, grown on demand."""

    def __init__(self):
        self._lock = threading.Lock()
        self.limit = 1
        self.spf = array("i", [0, 1])

    def ensure(self, limit: int):
        if limit <= self.limit:
            return
        with self._lock:
            if limit <= self.limit:
                return
            n = max(int(limit), 2 * self.limit, 1 << 16)
            spf = np.zeros(n + 1, dtype=np.int32)
            spf[1] = 1
            for p in range(2, math.isqrt(n) + 1):
                if spf[p] == 0:
                    block = spf[p * p:: p]
                    block[block == 0] = p
            zero = spf == 0
            spf[zero] = np.nonzero(zero)[0]
            self.spf = array("i", spf.tobytes())
            self.limit = n


_SIEVE = _Sieve()


def ensure_sieve(limit: int):
    """Precompute smallest prime factors up to limit (speeds up factor for norms below it)."""
    _SIEVE.ensure(limit)


def factor_int(n: int) -> list[tuple[int, int]]:
    """Prime factorisation of a positive integer as sorted (p, k) pairs."""
    if n < 1:
        raise DomainError("factor_int needs n >= 1")
    out = []
    if n <= _SIEVE.limit:
        spf = _SIEVE.spf
        while n > 1:
            p = spf[n]
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
        return out
    for p in (2, 3):
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
    p = 5
    step = 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
        p += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return out


_SPLIT: dict[int, EisensteinInt] = {}


def split_prime(p: int) -> EisensteinInt:
    """A primary prime of norm p for a rational prime p = 1 (mod 3).

    The choice is deterministic; the other prime above p is its conjugate.
    """
    pi = _SPLIT.get(p)
    if pi is not None:
        return pi
    if p % 3 != 1:
        raise DomainError(f"{p} does not split in Z[w]")
    e = (p - 1) // 3
    g = 2
    while True:
        r = pow(g, e, p)
        if r != 1:
            break
        g += 1
    # r is a primitive cube root of unity mod p, so p | N(r - w) = r^2 + r + 1
    pi = gcd(EisensteinInt(p, 0), EisensteinInt(r, -1))
    if pi.norm() != p:
        raise AssertionError(f"failed to split {p}")
    pi = primary_part(pi)
    other = pi.conj()
    # canonical representative: smaller (u, v) of the conjugate pair
    if (other.u, other.v) < (pi.u, pi.v):
        pi = other
    _SPLIT[p] = pi
    return pi


def _strip(u: int, v: int, pu: int, pv: int, n: int) -> tuple[int, int, int]:
    """Divide u + v w by the prime pu + pv w of norm n as often as possible."""
    # multiply by conj(p) = (pu - pv) - pv w
    cu, cv = pu - pv, -pv
    k = 0
    while True:
        bd = v * cv
        tu = u * cu - bd
        tv = u * cv + v * cu - bd
        if tu % n or tv % n:
            return k, u, v
        u, v = tu // n, tv // n
        k += 1


@dataclass(frozen=True)
class Factorization:
    """m = UNITS[unit] * lam^lambda_exp * prod(p^k for p, k in primes)."""

    unit: int
    lambda_exp: int
    primes: tuple[tuple[EisensteinInt, int], ...]

    def value(self) -> EisensteinInt:
        z = UNITS[self.unit] * LAMBDA ** self.lambda_exp
        for p, k in self.primes:
            z = z * p ** k
        return z


def factor_coprime(u: int, v: int) -> tuple[int, list[tuple[int, int, int]]]:
    """Factor u + v w (not divisible by lam) on plain integers.

    Returns (unit index, [(pu, pv, k), ...]) in order of increasing norm.
    """
    out = []
    for p, k in factor_int(u * u - u * v + v * v):
        if p % 3 == 2:
            j, u, v = _strip(u, v, -p, 0, p * p)
            out.append((-p, 0, j))
        else:
            pi = _SPLIT.get(p) or split_prime(p)
            i, u, v = _strip(u, v, pi.u, pi.v, p)
            if i:
                out.append((pi.u, pi.v, i))
            if i < k:
                ou, ov = pi.u - pi.v, -pi.v
                out.append((ou, ov, k - i))
                # the remaining exponent all belongs to the conjugate
                _, u, v = _strip(u, v, ou, ov, p)
    return _UNIT_INDEX[(u, v)], out


def factor(m) -> Factorization:
    """Factor m into a unit, a power of lam and powers of pairwise non-associate primary primes."""
    m = EisensteinInt.coerce(m)
    if not m:
        raise DomainError("cannot factor 0")
    e, rest = lambda_valuation(m)
    k, raw = factor_coprime(rest.u, rest.v)
    primes = [(EisensteinInt(pu, pv), j) for pu, pv, j in raw]
    primes.sort(key=lambda pk: (pk[0].norm(), pk[0].u, pk[0].v))
    return Factorization(k, e, tuple(primes))


def is_squarefree(m) -> bool:
    f = factor(m)
    return f.lambda_exp <= 1 and all(k == 1 for _, k in f.primes)


def cube_split(m1) -> tuple[EisensteinInt, EisensteinInt] | None:
    """Write a primary m1 as a*b^3 with a squarefree; None if some exponent is 2 mod 3."""
    m1 = EisensteinInt.coerce(m1)
    if m1.norm() % 3 == 0 or not m1.is_primary():
        raise DomainError(f"cube_split needs a primary element coprime to lambda, got {m1}")
    a, b = ONE, ONE
    for p, k in factor(m1).primes:
        r = k % 3
        if r == 2:
            return None
        if r:
            a = a * p
        b = b * p ** (k // 3)
    return a, b


def enumerate_norm(bound: int) -> Iterator[EisensteinInt]:
    """All nonzero z with norm(z) <= bound, ordered by v then u."""
    bound = int(bound)
    if bound < 1:
        return
    # 4 N = (2u - v)^2 + 3 v^2
    vmax = math.isqrt(4 * bound // 3)
    for v in range(-vmax, vmax + 1):
        disc = 4 * bound - 3 * v * v
        s = math.isqrt(disc)
        # |2u - v| <= s
        lo = -((s - v) // 2)
        hi = (s + v) // 2
        for u in range(lo, hi + 1):
            if u or v:
                yield EisensteinInt(u, v)


def enumerate_disc(R: float) -> Iterator[EisensteinInt]:
    """All nonzero z with |z| <= R, each once.

    R^2 is rounded to an integer bound with a relative slack of 1e-12 so that
    R = sqrt(3) includes norm 3.
    """
    if R < 1:
        return iter(())
    return enumerate_norm(math.floor(R * R * (1 + 1e-12)))


# ---------------------------------------------------------------------------
# the field K

class KRational:
    """num/den in Q(sqrt(-3)) with gcd(num, den) a unit."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        num = EisensteinInt.coerce(num)
        den = EisensteinInt.coerce(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = ZERO, ONE
            return
        g = gcd(num, den)
        if not g.is_unit():
            num = num.exact_div(g)
            den = den.exact_div(g)
        # make den primary-like when possible to keep the representation tidy
        if den.norm() % 3:
            k, den2 = unit_normalize(den)
            num = num * UNITS[k].conj()
            den = den2
        self.num, self.den = num, den

    @classmethod
    def coerce(cls, q) -> "KRational":
        if isinstance(q, KRational):
            return q
        if isinstance(q, Fraction):
            return cls(q.numerator, q.denominator)
        return cls(EisensteinInt.coerce(q))

    def __repr__(self):
        return f"KRational({self.num!r}, {self.den!r})"

    def __eq__(self, other):
        if not isinstance(other, KRational):
            try:
                other = KRational.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        # hash of the canonical value num*conj(den)/norm(den)
        c = self.num * self.den.conj()
        n = self.den.norm()
        return hash((Fraction(c.u, n), Fraction(c.v, n)))

    def __neg__(self):
        return KRational(-self.num, self.den)

    def __add__(self, other):
        other = KRational.coerce(other)
        return KRational(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-KRational.coerce(other))

    def __rsub__(self, other):
        return KRational.coerce(other) - self

    def __mul__(self, other):
        other = KRational.coerce(other)
        return KRational(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = KRational.coerce(other)
        if not other.num:
            raise ZeroDivisionError("division by zero in K")
        return KRational(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return KRational.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return KRational(ONE) / (self ** (-k))
        return KRational(self.num ** k, self.den ** k)

    def __bool__(self):
        return bool(self.num)

    def conj(self) -> "KRational":
        return KRational(self.num.conj(), self.den.conj())

    def coords(self) -> tuple[Fraction, Fraction]:
        """Exact (x, y) with self = x + y*w."""
        c = self.num * self.den.conj()
        n = self.den.norm()
        return Fraction(c.u, n), Fraction(c.v, n)

    def re_exact(self) -> Fraction:
        x, y = self.coords()
        return x - y / 2

    def norm(self) -> Fraction:
        return Fraction(self.num.norm(), self.den.norm())

    def is_integral(self) -> bool:
        return self.den.divides(self.num)

    def to_integral(self) -> EisensteinInt:
        return self.num.exact_div(self.den)

    def __complex__(self):
        x, y = self.coords()
        return complex(float(x) - 0.5 * float(y), 0.5 * SQRT3 * float(y))


def re_exact(q) -> Fraction:
    return KRational.coerce(q).re_exact()


class ThetaIndex:
    """nu = num / lam^3, an element of lam^-3 Z[w]."""

    __slots__ = ("num",)

    def __init__(self, num):
        self.num = EisensteinInt.coerce(num)

    @classmethod
    def from_integral(cls, z) -> "ThetaIndex":
        return cls(EisensteinInt.coerce(z) * LAMBDA3)

    @classmethod
    def from_krational(cls, q) -> "ThetaIndex":
        q = KRational.coerce(q)
        num = q * KRational(LAMBDA3)
        if not num.is_integral():
            raise DomainError(f"{q!r} is not in lam^-3 Z[w]")
        return cls(num.to_integral())

    def __repr__(self):
        return f"ThetaIndex({self.num.u}, {self.num.v})"

    def __eq__(self, other):
        return isinstance(other, ThetaIndex) and self.num == other.num

    def __hash__(self):
        return hash(("nu", self.num.u, self.num.v))

    def __bool__(self):
        return bool(self.num)

    def value(self) -> KRational:
        return KRational(self.num, LAMBDA3)

    def norm(self) -> Fraction:
        return Fraction(self.num.norm(), 27)

    def __abs__(self):
        return math.sqrt(self.num.norm() / 27.0)

    def affine(self, d: int, c=ONE) -> "ThetaIndex":
        """c + d*nu for c in Z[w]."""
        return ThetaIndex(EisensteinInt.coerce(c) * LAMBDA3 + self.num * d)

    def __complex__(self):
        return complex(self.num) / complex(LAMBDA3)
