"""Truncated q-series, theta and eta generators, lattice thetas and numeric evaluation."""

from .generators import (dedekind_eta, divisor_sums, eisenstein_P, eta4_quotient, euler_product,
                         modulus_square_w, theta_power, theta_series)
from .jfunction import j_from_eisenstein, j_oracle, lemma1_check, s_series
from .lattice import is_positive_definite, leading_minors, theta_from_gram
from .laurent import (FracPrefixSeries, LaurentSeries, series_add, series_inverse, series_mul,
                      series_pow)
from .numeric import (eisenstein_P_numeric, eta_numeric, euler_numeric, gram_theta_numeric, nome,
                      numeric_eval, theta_numeric)

__all__ = [
    "FracPrefixSeries", "LaurentSeries", "dedekind_eta", "divisor_sums", "eisenstein_P",
    "eisenstein_P_numeric", "eta4_quotient", "eta_numeric", "euler_numeric", "euler_product",
    "gram_theta_numeric", "is_positive_definite", "j_from_eisenstein", "j_oracle",
    "leading_minors", "lemma1_check", "modulus_square_w", "nome", "numeric_eval", "s_series",
    "series_add", "series_inverse", "series_mul", "series_pow", "theta_from_gram",
    "theta_numeric", "theta_power", "theta_series",
]
