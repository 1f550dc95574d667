"""Rigorous cross-verification of the odd infinite product for the cosine.

The library evaluates the classical identity

    cos(pi / 2n) = prod_{k>=1} (1 - 1/((2k-1)^2 n^2)),    n > 1,

by three independent routes (truncated product, coefficient series through
the exponential, Maclaurin cosine), each carried with a proven absolute
error bound, together with the exact-rational machinery behind the series
route: the quadratic coefficient recurrence, its Bernoulli and tangent
oracles, and the formal power-series fixed point.
"""

from .arith import (
    BoundedReal,
    DomainError,
    ExactRational,
    pi_constant,
    rational_arith,
    real_from_rational,
)
from .recurrence import (
    BernoulliTable,
    CoefficientTable,
    bernoulli_numbers,
    lambda_closed_form,
    lambda_coefficients,
    tangent_coefficients,
)
from .series import (
    EvenSeries,
    OddSeries,
    integrate_twice_scaled,
    ode_residual,
    picard_fixed_point,
    reference_series,
    square_odd,
)
from .analytic import (
    IdentityReport,
    LambdaEstimate,
    PartialProductResult,
    RearrangementReport,
    cos_approx,
    exp_approx,
    lambda_direct,
    log_approx,
    neg_log_product_series,
    partial_product,
    product_trace,
    rearrangement_check,
    verify_identity,
)

__all__ = [
    "BernoulliTable",
    "BoundedReal",
    "CoefficientTable",
    "DomainError",
    "EvenSeries",
    "ExactRational",
    "IdentityReport",
    "LambdaEstimate",
    "OddSeries",
    "PartialProductResult",
    "RearrangementReport",
    "bernoulli_numbers",
    "cos_approx",
    "exp_approx",
    "integrate_twice_scaled",
    "lambda_closed_form",
    "lambda_coefficients",
    "lambda_direct",
    "log_approx",
    "neg_log_product_series",
    "ode_residual",
    "partial_product",
    "pi_constant",
    "picard_fixed_point",
    "product_trace",
    "rational_arith",
    "real_from_rational",
    "rearrangement_check",
    "reference_series",
    "square_odd",
    "tangent_coefficients",
    "verify_identity",
]

__version__ = "0.1.0"
