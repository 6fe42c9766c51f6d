"""Certified enclosures of the Mathieu series S(r) = sum_{n>=1} 2n/(n^2 + r^2)^2.

Everything is computed with exact rationals and rational-endpoint intervals,
so each reported inequality is decided without floating point.
"""

from .asymptotics import LaurentSeries, alpha_coefficients, alpha_series, nested_approximant, s_series
from .errors import (
    DegenerateTransform,
    DomainError,
    IntervalDivisionError,
    MathieuBoundsError,
    MethodInapplicable,
    PrecisionExhausted,
    PrecisionInsufficient,
)
from .exact import (
    AccuracyRequest,
    Interval,
    bernoulli,
    decimal_string,
    pi_enclosure,
    to_rational,
    zeta_enclosure,
)
from .mathieu import (
    CertifiedValue,
    Method,
    MethodConfig,
    alpha,
    alzer_bound,
    eval_direct,
    eval_lampret,
    eval_russell,
    eval_s,
    eval_zeta_series,
    hoorfar_qi_bound,
    t_function,
)
from .polyalg import (
    Polynomial,
    Positivity,
    RationalFunction,
    Sign,
    positivity_on_interval,
    reciprocal_transform,
    sign_certificate,
    taylor_shift,
)
from .verify import (
    BestConstants,
    CheckResult,
    LemmaReport,
    Status,
    VerifyConfig,
    alpha_transform,
    best_constants,
    order_reversal_check,
    verify_lemma1,
    verify_lemma2,
    verify_lemma3,
    verify_theorem,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
