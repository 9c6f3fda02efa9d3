"""Special functions: gamma, K-Bessel, 2F1, Appell F1, the Picard integral."""
from .bessel import bessel_k_imag, bessel_k_real, kbessel_bound_f, kbessel_branch
from .gamma import gamma_complex, log_gamma, rgamma
from .hypergeometric import (
    appell_f1_picard,
    f1_reduction_check,
    gauss_2f1,
    gauss_2f1_mellin_barnes,
)
from .identities import (
    bessel_product_identity_check,
    cosh_integral,
    cosh_lemma_check,
    cosh_lemma_rhs,
    first_integral_check,
    first_integral_lhs,
    first_integral_residue,
    first_integral_residue_probe,
    first_integral_rhs,
    identity1_check,
    identity1_lhs,
    identity1_rhs,
    stated_residue_constant,
)
from .picard import (
    binomial_expand_F,
    picard_F,
    picard_F_deriv,
    picard_F_with_deriv,
    saddle_asymptotic,
    saddle_leading_term,
)
from .quadrature import DEFAULT, QuadratureConfig

__all__ = [
    "DEFAULT",
    "QuadratureConfig",
    "appell_f1_picard",
    "bessel_k_imag",
    "bessel_k_real",
    "bessel_product_identity_check",
    "binomial_expand_F",
    "cosh_integral",
    "cosh_lemma_check",
    "cosh_lemma_rhs",
    "f1_reduction_check",
    "first_integral_check",
    "first_integral_lhs",
    "first_integral_residue",
    "first_integral_residue_probe",
    "first_integral_rhs",
    "gamma_complex",
    "gauss_2f1",
    "gauss_2f1_mellin_barnes",
    "identity1_check",
    "identity1_lhs",
    "identity1_rhs",
    "kbessel_bound_f",
    "kbessel_branch",
    "log_gamma",
    "picard_F",
    "picard_F_deriv",
    "picard_F_with_deriv",
    "rgamma",
    "saddle_asymptotic",
    "saddle_leading_term",
    "stated_residue_constant",
]
