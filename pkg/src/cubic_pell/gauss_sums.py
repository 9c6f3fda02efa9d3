"""Cubic Gauss sums g(mu, a) = sum over beta mod a of (beta/a)_3 e(mu beta / a).

Two evaluation routes are provided.

* ``gauss_sum`` / ``gauss_sum_general`` sum directly over a residue system.
* ``gauss_sum_mult`` builds g(mu, a) from the prime sums g(1, pi) using the
  twisted multiplicativity obtained from the Chinese remainder theorem,

      g(mu, a1 a2) = (a2/a1)_3 (a1/a2)_3 g(mu, a1) g(mu, a2),
      g(mu, pi)    = conj((mu/pi)_3) g(1, pi),

  and evaluates each g(1, pi) with vectorised Gaussian periods.  This is the
  route used for the theta coefficients, where moduli reach norms ~10^6.
"""
from __future__ import annotations

import math
import threading

import numpy as np

from .eisenstein import EisensteinInt, KRational, ThetaIndex, factor_int
from .residue_symbols import (
    OMEGA_POWERS,
    check_modulus,
    cubic_symbol,
    e_char,
    exp_2pi_i_frac,
    fq2_pow,
    prime_data,
    residues_mod,
    symbol_at_prime,
)


def gauss_sum(mu, a) -> complex:
    """Direct summation of g(mu, a) for mu in Z[w]."""
    mu = EisensteinInt.coerce(mu)
    a = EisensteinInt.coerce(a)
    primes = [prime_data(pu, pv) for pu, pv in check_modulus(a)]
    n = a.norm()
    ac = a.conj()
    # 2 Re(mu beta / a) = 2 Re(mu beta conj(a)) / N(a); the numerator is an integer
    c = mu * ac
    cu, cv = c.u, c.v
    re_parts = []
    im_parts = []
    for beta in residues_mod(a):
        k = 0
        for data in primes:
            j = symbol_at_prime(beta.u, beta.v, data)
            if j < 0:
                break
            k += j
        else:
            bd = beta.v * cv
            xu = beta.u * cu - bd
            xv = beta.u * cv + beta.v * cu - bd
            z = OMEGA_POWERS[k % 3] * exp_2pi_i_frac(2 * xu - xv, n)
            re_parts.append(z.real)
            im_parts.append(z.imag)
    if not re_parts:
        return 0j
    return complex(float(np.sum(re_parts)), float(np.sum(im_parts)))


def gauss_sum_general(mu: ThetaIndex, a) -> complex:
    """g(mu, a) = sum (3 beta/a)_3 e(3 mu beta/a) for mu in lam^-3 Z[w].

    Every argument of e(.) is formed as an exact element of K.
    """
    if not isinstance(mu, ThetaIndex):
        raise TypeError("gauss_sum_general expects a ThetaIndex")
    a = EisensteinInt.coerce(a)
    check_modulus(a)
    three_mu = KRational(mu.num * 3, EisensteinInt(-3, -6))
    three_mu_over_a = three_mu / KRational(a)
    acc = []
    for beta in residues_mod(a):
        chi = cubic_symbol(beta * 3, a)
        if chi.is_zero:
            continue
        acc.append(complex(chi) * e_char(three_mu_over_a * KRational(beta)))
    if not acc:
        return 0j
    arr = np.array(acc)
    return complex(float(np.sum(arr.real)), float(np.sum(arr.imag)))


# ---------------------------------------------------------------------------
# prime sums g(1, pi) via Gaussian periods

def _primitive_root(p: int) -> int:
    ells = [ell for ell, _ in factor_int(p - 1)]
    g = 2
    while any(pow(g, (p - 1) // ell, p) == 1 for ell in ells):
        g += 1
    return g


def _geometric_mod(g: int, n: int, p: int) -> np.ndarray:
    """[g^0, g^1, ..., g^(n-1)] mod p as int64 (p < 3e9)."""
    out = np.empty(n, dtype=np.int64)
    out[0] = 1
    filled = 1
    while filled < n:
        m = min(filled, n - filled)
        np.multiply(out[:m], pow(g, filled, p), out=out[filled:filled + m])
        np.remainder(out[filled:filled + m], p, out=out[filled:filled + m])
        filled += m
    return out


def _split_periods_numpy(p: int, g: int, h: int) -> tuple[float, float]:
    """The two periods sum_{i = j mod 3} cos(2 pi h g^i / p), j = 0, 1, over a full cycle."""
    # -1 = g^((p-1)/2) is a cube, so the second half of the cycle mirrors the first
    half = (p - 1) // 2
    x = _geometric_mod(g, half, p)
    np.multiply(x, h, out=x)
    np.remainder(x, p, out=x)
    c = np.cos(x * (2.0 * math.pi / p)).reshape(-1, 3)
    return 2.0 * float(c[:, 0].sum()), 2.0 * float(c[:, 1].sum())


try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None


if njit is not None:

    @njit(cache=True, nogil=True)
    def _split_periods_jit(p, g, h):
        # cosine table on [0, p/2] by rotation, re-seeded every 128 steps
        m = p // 2 + 1
        tab = np.empty(m)
        w = 2.0 * math.pi / p
        c1 = math.cos(w)
        s1 = math.sin(w)
        for k0 in range(0, m, 128):
            c = math.cos(w * k0)
            s = math.sin(w * k0)
            for k in range(k0, min(k0 + 128, m)):
                tab[k] = c
                c, s = c * c1 - s * s1, s * c1 + c * s1
        # two independent chains over the cosets g^(3i) and g^(3i+1), half cycle each
        sixth = (p - 1) // 6
        g3 = g * g % p * g % p
        a = h % p
        b = a * g % p
        e0 = 0.0
        e1 = 0.0
        for _ in range(sixth):
            e0 += tab[min(a, p - a)]
            e1 += tab[min(b, p - b)]
            a = a * g3 % p
            b = b * g3 % p
        return 2.0 * e0, 2.0 * e1

    _split_periods = _split_periods_jit
else:  # pragma: no cover
    _split_periods = _split_periods_numpy


def _split_prime_sum(pu: int, pv: int, periods=None) -> complex:
    _, p, r = prime_data(pu, pv)
    h = (2 * pu - pv) % p
    g = _primitive_root(p)
    t = pow(g, (p - 1) // 3, p)
    zeta = 1 if t == r else 2
    eta0, eta1 = (periods or _split_periods)(p, g, h)
    # the three periods add up to the sum of e(x/p) over all x != 0, which is -1
    eta = (eta0, eta1, -1.0 - eta0 - eta1)
    return sum(OMEGA_POWERS[(zeta * j) % 3] * eta[j] for j in range(3))


def _fq2_generator(q: int) -> tuple[int, int]:
    order = q * q - 1
    ells = [ell for ell, _ in factor_int(order)]
    for y in range(1, q):
        for x in range(q):
            if all(fq2_pow(x, y, order // ell, q) != (1, 0) for ell in ells):
                return x, y
    raise AssertionError("no generator found")


def _inert_prime_sum(q: int) -> complex:
    order = q * q - 1
    gx, gy = _fq2_generator(q)
    t = fq2_pow(gx, gy, order // 3, q)
    zeta = 1 if t == (0, 1) else 2
    # for odd q the second half of the cycle is the negative of the first
    n, fold = (order, 1.0) if q == 2 else (order // 2, 2.0)
    xs = np.empty(n, dtype=np.int64)
    ys = np.empty(n, dtype=np.int64)
    xs[0], ys[0] = 1, 0
    filled = 1
    while filled < n:
        m = min(filled, n - filled)
        cu, cv = fq2_pow(gx, gy, filled, q)
        a, b = xs[:m], ys[:m]
        bd = b * cv
        xs[filled:filled + m] = (a * cu - bd) % q
        ys[filled:filled + m] = (a * cv + b * cu - bd) % q
        filled += m
    # e(beta/q) = exp(2 pi i (2x - y) / q) for beta = x + y w
    c = np.cos(((2 * xs - ys) % q) * (2.0 * math.pi / q))
    eta = fold * c.reshape(-1, 3).sum(axis=0)
    return sum(OMEGA_POWERS[(zeta * j) % 3] * eta[j] for j in range(3))


_PRIME_SUMS: dict[tuple[int, int], complex] = {}
_PRIME_LOCK = threading.Lock()


def prime_gauss_sum(pi) -> complex:
    """g(1, pi) for a primary prime pi coprime to lam (cached)."""
    pi = EisensteinInt.coerce(pi)
    key = (pi.u, pi.v)
    val = _PRIME_SUMS.get(key)
    if val is not None:
        return val
    conj_key = (pi.u - pi.v, -pi.v)
    val = _PRIME_SUMS.get(conj_key)
    if val is not None:
        # g(1, conj pi) = conj g(1, pi): same additive phases, conjugate character
        val = val.conjugate()
    elif pi.v == 0:
        val = _inert_prime_sum(-pi.u)
    else:
        val = _split_prime_sum(pi.u, pi.v)
    with _PRIME_LOCK:
        _PRIME_SUMS[key] = val
    return val


def gauss_sum_from_primes(mu_u: int, mu_v: int, primes) -> complex:
    """g(mu, a) for a = product of the given distinct primary primes (as (u, v) pairs)."""
    if not primes:
        return 1.0 + 0j
    datas = [prime_data(pu, pv) for pu, pv in primes]
    k = 0
    val = 1.0 + 0j
    for (pu, pv), data in zip(primes, datas):
        j = symbol_at_prime(mu_u, mu_v, data)
        if j < 0:
            return 0j
        k -= j
        val *= prime_gauss_sum(EisensteinInt(pu, pv))
    for i in range(len(primes)):
        for j in range(i + 1, len(primes)):
            k += symbol_at_prime(primes[j][0], primes[j][1], datas[i])
            k += symbol_at_prime(primes[i][0], primes[i][1], datas[j])
    return val * OMEGA_POWERS[k % 3]


def gauss_sum_mult(mu, a) -> complex:
    """g(mu, a) assembled from cached prime sums; agrees with gauss_sum."""
    mu = EisensteinInt.coerce(mu)
    primes = check_modulus(a)
    return gauss_sum_from_primes(mu.u, mu.v, primes)

