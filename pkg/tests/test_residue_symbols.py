import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import zw_oracle as zo
from cubic_pell.eisenstein import (
    EisensteinInt,
    KRational,
    enumerate_norm,
    factor,
    gcd,
    is_squarefree,
)
from cubic_pell.errors import DomainError
from cubic_pell.residue_symbols import cubic_symbol, e_char, residues_mod


def primary_squarefree(bound):
    out = []
    for z in enumerate_norm(bound):
        if z.norm() > 1 and z.norm() % 3 and z.is_primary() and is_squarefree(z):
            out.append(z)
    return out


MODULI = primary_squarefree(400)
PRIMES = [z for z in MODULI if len(factor(z).primes) == 1]
moduli = st.sampled_from(MODULI)
betas = st.builds(EisensteinInt, st.integers(-500, 500), st.integers(-500, 500))


def test_euler_criterion_at_primes():
    for p in PRIMES:
        for beta in [EisensteinInt(2, 0), EisensteinInt(5, 7), EisensteinInt(-11, 3), EisensteinInt(1, 1), p]:
            k = zo.cubic_symbol_euler((beta.u, beta.v), (p.u, p.v))
            got = cubic_symbol(beta, p)
            assert got.k == k


@given(betas, betas, moduli)
def test_multiplicative_in_beta(b1, b2, a):
    assert cubic_symbol(b1 * b2, a) == cubic_symbol(b1, a) * cubic_symbol(b2, a)


@given(betas, moduli)
def test_cubes_are_residues(g, a):
    if not gcd(g, a).is_unit():
        assert cubic_symbol(g ** 3, a).is_zero
        return
    assert cubic_symbol(g ** 3, a) == 1


@given(betas, moduli)
def test_depends_on_class_only(beta, a):
    assert cubic_symbol(beta, a) == cubic_symbol(beta + a * EisensteinInt(3, -2), a)


@settings(max_examples=200)
@given(st.sampled_from(PRIMES), st.sampled_from(PRIMES))
def test_cubic_reciprocity(p, q):
    if p == q:
        return
    assert cubic_symbol(p, q) == cubic_symbol(q, p)


def test_supplement_for_omega():
    # (w/pi) = w^((N pi - 1)/3)
    w = EisensteinInt(0, 1)
    for p in PRIMES:
        assert cubic_symbol(w, p).k == ((p.norm() - 1) // 3) % 3


def test_rejects_bad_modulus():
    with pytest.raises(DomainError):
        cubic_symbol(EisensteinInt(2, 0), EisensteinInt(1, 2))    # lam
    with pytest.raises(DomainError):
        cubic_symbol(EisensteinInt(2, 0), EisensteinInt(-2, 0) * EisensteinInt(-2, 0))  # not squarefree


krats = st.builds(KRational, st.builds(EisensteinInt, st.integers(-10**4, 10**4), st.integers(-10**4, 10**4)),
                  st.builds(EisensteinInt, st.integers(-60, 60), st.integers(-60, 60)).filter(bool))


@given(krats, krats)
def test_e_char_homomorphism(q1, q2):
    assert abs(e_char(q1 + q2) - e_char(q1) * e_char(q2)) < 1e-14


@given(krats)
def test_e_char_formula(q):
    expect = cmath.exp(4j * math.pi * float(q.re_exact()))
    assert abs(e_char(q) - expect) < 1e-9
    assert abs(abs(e_char(q)) - 1) < 1e-15


def test_e_char_exact_reduction():
    # Re q = 10^30 + 1/4 still gives e(q) = -1
    q = KRational.coerce(Fraction(4 * 10**30 + 1, 4))
    assert abs(e_char(q) + 1) < 1e-15


def test_residue_system_complete_and_distinct():
    # prime, inert-prime power, lam power, mixed moduli up to norm 10^4
    norms = {9973, 2401, 6561, 4 ** 6, 3 * 7 * 13 * 31, 9604, 10000}
    seen = 0
    for z in enumerate_norm(10**4):
        if z.norm() not in norms or not (z.u > 0 and z.v >= 0):
            continue
        seen += 1
        basis = zo.hermite_basis((z.u, z.v))
        reps = [zo.reduce_mod((r.u, r.v), basis) for r in residues_mod(z)]
        assert len(reps) == z.norm()
        assert len(set(reps)) == z.norm()
    assert seen >= len(norms)


def test_residue_system_every_small_modulus():
    for z in enumerate_norm(300):
        basis = zo.hermite_basis((z.u, z.v))
        reps = {zo.reduce_mod((r.u, r.v), basis) for r in residues_mod(z)}
        assert len(reps) == z.norm()
