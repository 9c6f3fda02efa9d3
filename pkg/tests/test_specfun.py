"""Special functions against values frozen from mpmath (30 digits, then rounded)."""
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubic_pell.errors import ConvergenceError, DomainError
from cubic_pell.specfun import (
    appell_f1_picard,
    bessel_k_imag,
    bessel_k_real,
    bessel_product_identity_check,
    binomial_expand_F,
    cosh_integral,
    cosh_lemma_check,
    f1_reduction_check,
    first_integral_check,
    first_integral_residue,
    first_integral_residue_probe,
    gamma_complex,
    gauss_2f1,
    gauss_2f1_mellin_barnes,
    identity1_check,
    identity1_lhs,
    kbessel_bound_f,
    kbessel_branch,
    log_gamma,
    picard_F,
    picard_F_deriv,
    picard_F_with_deriv,
    saddle_leading_term,
)
from cubic_pell.specfun.quadrature import QuadratureConfig

# ---------------------------------------------------------------------------
# gamma


def test_gamma_values():
    assert abs(gamma_complex(1 + 1j)) == pytest.approx(0.52156404686493984116, rel=1e-14)
    assert gamma_complex(2.5 - 3j) == pytest.approx(-0.21811897108112289748 - 0.072034763407175033565j, rel=1e-13)
    lg = log_gamma(0.3 + 200j)
    assert lg.real == pytest.approx(-314.29999012408354536, rel=1e-14)
    # the branch is the principal log-gamma, continuous in Im s
    assert lg.imag == pytest.approx(859.34942237769384304, rel=1e-14)


def test_gamma_poles_rejected():
    for s in (0, -1, -7):
        with pytest.raises(DomainError):
            gamma_complex(s)


@given(st.floats(0.1, 20), st.floats(-50, 50))
def test_gamma_recurrence(x, y):
    s = complex(x, y)
    assert log_gamma(s + 1) - log_gamma(s) == pytest.approx(np.log(s) + 0j, abs=1e-10)


# ---------------------------------------------------------------------------
# K-Bessel

K_REAL = [
    (1 / 3, 1.0, 0.43843063344153436171),
    (2.5, 0.01, 375987.97477979480781),
    (5.0, 0.3, 157139.1233712167135),
    (0.0, 7.5, 0.00024917761635611438901),
    (1.25, 40.0, 8.5563480157724771978e-19),
]

K_IMAG = [
    (1.0, 1.0, 0.08061699762236597857),
    (5.0, 3.0, -6.3759939798738606711e-8),
    (10.0, 4 * math.pi, -3.8079421554551883471e-15),
    (20.0, 10.0, 1.1871170083975646075e-28),
    (20.0, 60.0, 1.4831147843344500878e-33),
    (50.0, 1.0, -3.3141746052773009367e-70),
]


@pytest.mark.parametrize("v,y,expect", K_REAL)
def test_bessel_k_real(v, y, expect):
    assert bessel_k_real(v, y) == pytest.approx(expect, rel=1e-12)


@pytest.mark.parametrize("t,y,expect", K_IMAG)
def test_bessel_k_imag(t, y, expect):
    # relative to the scale e^(-pi t) of the function, not to a possibly tiny value
    scale = math.exp(-math.pi * t)
    assert abs(bessel_k_imag(t, y) - expect) <= 1e-9 * max(abs(expect), scale * 1e-3)


def test_bessel_k_real_recurrence():
    # K_{v+1}(y) - K_{v-1}(y) = (2v/y) K_v(y)
    for v, y in [(0.7, 0.5), (1.5, 3.0), (4.0, 12.0)]:
        lhs = bessel_k_real(v + 1, y) - bessel_k_real(v - 1, y)
        assert lhs == pytest.approx(2 * v / y * bessel_k_real(v, y), rel=1e-12)


def test_kbessel_branches():
    t = 10.0
    assert kbessel_branch(t, 30 / (4 * math.pi)) == "i"
    assert kbessel_branch(t, 10 / (4 * math.pi)) == "ii"
    assert kbessel_branch(t, 19.5 / (4 * math.pi)) == "iii"
    with pytest.raises(DomainError):
        kbessel_branch(t, 0.5 / (4 * math.pi))


@settings(max_examples=60, deadline=None)
@given(st.floats(1, 20), st.floats(1, 80))
def test_kbessel_bound_holds(t, Y):
    y = Y / (4 * math.pi)
    assert abs(bessel_k_imag(t, Y)) <= math.exp(-math.pi * t) * kbessel_bound_f(t, y)


# ---------------------------------------------------------------------------
# 2F1

F21 = [
    ((1.7, 1.2, 2.9, -5.0), 0.23317480894259363212),
    ((1.5, 1.2, 2.7, -0.5), 0.75566303540074266346),
    ((0.8, 2.5, 1.1, -9.9), 0.038356661122861743246),
    ((1.4 + 0.5j, 0.9, 2.4 + 1j, 0.8), 1.9842609116139518368 - 0.17641549547518418524j),
    ((1.2, 0.7, 1.9, 0.95), 2.8133635618449975209),
    ((2.2, 1.7, 1.7, -50.0), 0.00017512397750302670654),
]


@pytest.mark.parametrize("args,expect", F21)
def test_gauss_2f1_values(args, expect):
    assert gauss_2f1(*args) == pytest.approx(expect, rel=1e-12)


pars = st.floats(0.5, 3.0)


@settings(max_examples=50, deadline=None)
@given(pars, pars, pars, st.floats(-10, -0.1))
def test_pfaff_path_matches_mellin_barnes(a, b, c, z):
    r = 0.5 * min(a, b)
    assert abs(gauss_2f1(a, b, c, z) - gauss_2f1_mellin_barnes(a, b, c, z, r)) <= 1e-6


@given(pars, pars, st.floats(-0.9, 0.45))
def test_2f1_elementary_case(a, c, z):
    # 2F1(a, b; b; z) = (1 - z)^-a
    assert gauss_2f1(a, c, c, z) == pytest.approx((1 - z) ** (-a), rel=1e-12)


# ---------------------------------------------------------------------------
# Appell F1


def test_appell_f1_values():
    assert appell_f1_picard(1, 1.5, 1.5, 2.2, 0.3, -0.4) == pytest.approx(0.98335675311617887685, rel=1e-12)
    assert appell_f1_picard(0.6, -0.8, 1.3, 1.9, 0.5, -0.7) == pytest.approx(0.71054819287454626237, rel=1e-12)


@settings(max_examples=20, deadline=None)
@given(st.floats(1.5, 3.5), st.floats(0.05, 0.95), st.floats(-1.5, 1.5), st.floats(-1.5, 1.5),
       st.floats(-0.9, 0.9), st.floats(-0.9, 0.9))
def test_f1_reduction(c, frac, b1, b2, z1, z2):
    a = 0.2 + frac * (c - 0.4)
    assert f1_reduction_check(a, b1, b2, c, z1, z2) <= 1e-8


def test_f1_reduces_to_2f1_when_one_beta_vanishes():
    assert appell_f1_picard(0.9, 1.3, 0.0, 2.1, -0.6, 0.2) == pytest.approx(gauss_2f1(0.9, 1.3, 2.1, -0.6), rel=1e-12)


# ---------------------------------------------------------------------------
# Picard integral F(s, x)

# mpmath at 20 digits, integrating in v = -log t over many short panels
PICARD = [
    (1.2, 2.0, 1.80127456858731149),
    (0.5, 2.25, 8.74100695455639377),
    (2 + 5j, 2.25, -0.007566727568679727 + 0.324275404925278403j),
    (0.6 + 10j, 0.3, 0.224137011613565594 - 0.865769510701924188j),
    (3.0, 5.0, 0.0269169512736601809),
    (1.1, 2.3, 1.8846426912211278),
    (0.9 - 4j, 1.5, -0.757640510583426126 + 0.748763746556298405j),
    (0.75 + 30j, 2.25, 0.373534817671314154 + 0.00920703266817243105j),
]


@pytest.mark.parametrize("s,x,expect", PICARD)
def test_picard_values(s, x, expect):
    assert abs(picard_F(s, x) - expect) <= 1e-11 * abs(expect)


def test_picard_closed_form_at_s1_x2():
    # x = 2: x t + (t-1)^2/2 = (1+t)^2/2, so F = 2 int (t^(-1/3) + t^(1/3)) (1+t)^-2 dt
    assert picard_F(1.0, 2.0) == pytest.approx(2.4183991523122904675, rel=1e-13)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.34, 3.0), st.floats(1.0, 5.0))
def test_picard_positive_for_real_s(s, x):
    F = picard_F(s, x)
    assert F.real > 0 and F.imag == 0


@settings(max_examples=40, deadline=None)
@given(st.floats(0.4, 2.0), st.floats(-40, 40), st.floats(0.3, 5.0))
def test_picard_conjugate_symmetry(sig, t, x):
    s = complex(sig, t)
    assert abs(picard_F(s.conjugate(), x) - picard_F(s, x).conjugate()) <= 1e-12 * max(1.0, abs(picard_F(s, x)))


@pytest.mark.parametrize("s,x", [(0.8, 2.25), (1.3 + 2j, 1.5), (0.6 + 15j, 2.25), (2 - 7j, 3.0), (0.52 + 29j, 2.25)])
def test_picard_derivative_finite_difference(s, x):
    h = 1e-5
    fd = (picard_F(s + h, x) - picard_F(s - h, x)) / (2 * h)
    d = picard_F_deriv(s, x)
    assert abs(d - fd) <= 1e-5 * abs(d)
    assert picard_F_with_deriv(s, x) == (picard_F(s, x), d)


def test_picard_deterministic():
    a = [picard_F(0.7 + 12.3j, 2.25) for _ in range(3)]
    assert a[0] == a[1] == a[2]
    b = picard_F_deriv(0.7 + 12.3j, 2.25)
    assert b == picard_F_deriv(0.7 + 12.3j, 2.25)


def test_picard_domain():
    with pytest.raises(DomainError):
        picard_F(1 / 3, 2.0)
    with pytest.raises(DomainError):
        picard_F(1.0, 0.0)


def test_binomial_expansion():
    exact = picard_F(1.1, 2.3)
    errs = [abs(binomial_expand_F(1.1, 2.3, 2.25, K) - exact) for K in range(7)]
    assert errs[-1] <= 1e-6
    assert all(errs[k + 1] < errs[k] for k in range(6))


def test_binomial_expansion_divergence_detected():
    with pytest.raises(ConvergenceError):
        binomial_expand_F(1.1, 6.0, 1.0, 12)


def test_leading_term_at_large_t():
    for t in (200.0, -300.0, 400.0):
        F = picard_F(complex(0.75, t), 2.25)
        assert abs(F / saddle_leading_term(0.75, t, 2.25) - 1) < 1e-2


# ---------------------------------------------------------------------------
# identities


@pytest.mark.parametrize("s", [0.75, 1.0, 1.25, 2.0 + 3j])
def test_first_integral(s):
    assert first_integral_check(s) <= 1e-8


def test_first_integral_residue():
    assert first_integral_residue_probe(1e-6) == pytest.approx(first_integral_residue(), rel=1e-3)
    expect = mpmath.pi ** (mpmath.mpf(1) / 6) * mpmath.gamma(mpmath.mpf(2) / 3) / (4 * mpmath.gamma(mpmath.mpf(5) / 6))
    assert first_integral_residue() == pytest.approx(float(expect), rel=1e-13)


@settings(max_examples=8, deadline=None)
@given(st.floats(0.5, 4), st.floats(0.5, 4), st.floats(0.3, 2))
def test_bessel_product(m, n, y):
    assert bessel_product_identity_check(1 / 3, m, n, y) <= 1e-6


@pytest.mark.parametrize("s,m,n,expect", [
    (1.2, 2, 3, 0.03729996274924604),
    (0.9, 1, 1, 0.5175873952581953),
    (1.5, 0.7, 2.2, 0.06876826954203434),
])
def test_identity1(s, m, n, expect):
    assert identity1_check(s, m, n) <= 1e-5
    assert identity1_lhs(s, m, n).real == pytest.approx(expect, rel=1e-9)


def test_cosh_integral_value():
    assert cosh_integral(-1.5, 3).real == pytest.approx(0.29227430551227903735, rel=1e-13)


@pytest.mark.parametrize("w,a", [(-1.5, 3), (-0.6, 2), (-2, 1.5), (-0.9 + 2j, 2.5)])
def test_cosh_lemma(w, a):
    assert cosh_lemma_check(w, a) <= 1e-7


def test_quadrature_config_validation():
    with pytest.raises((DomainError, ValueError)):
        QuadratureConfig(abs_tol=-1)
