"""Coefficient asymptotics for generating functions with square-root type singularities.

Typical use::

    from sqrtasym import RationalFunction, sqrt_expansion
    exp = sqrt_expansion(RationalFunction((2,), (1, 1)), K=2)   # Catalan numbers / 4^n
"""

from .equivariant import (
    check_vanishing,
    equivariant_expansion,
    equivariant_pole_expansion,
    expand,
    interior_pole_expansion,
    lift_from_invariant,
    reduce_to_invariant,
)
from .errors import (
    DegenerateWarning,
    DomainMismatchError,
    MixedPiPowerError,
    PreconditionError,
    SqrtAsymError,
    TruncationError,
)
from .expansion import AsymptoticExpansion, evaluate_at_index, evaluate_expansion, exact_value
from .models import EquivariantEnvelope, InteriorPole, RawLocalMap, SqrtHolomorphic, SqrtPole
from .oracle import coefficient_at, exact_coeffs, numeric_coeffs, residual_slope, richardson_fit
from .series import (
    ExactScalar,
    RationalFunction,
    TruncatedSeries,
    polynomial,
    series_add,
    series_compose,
    series_decompose,
    series_exp,
    series_log,
    series_mul,
    series_pow,
    series_reciprocal,
    series_reversion,
    series_sqrt,
)
from .special import (
    binom_coeff,
    cn_asymptotic,
    e_table,
    gamma_eval,
    gamma_exact,
    gen_bernoulli,
    laplace_constants,
    root_constant,
    tricomi_erdelyi_e,
)
from .tauber import (
    analytic_pipeline,
    general_alpha_expansion,
    meromorphic_pipeline,
    pole_expansion,
    sqrt_expansion,
)
from .uniformization import LocalMapData, compose_observable, uniformize
from .verify import VerificationReport, VerifyConfig, verify_model

__version__ = "0.1.0"

__all__ = [
    "AsymptoticExpansion",
    "DegenerateWarning",
    "DomainMismatchError",
    "EquivariantEnvelope",
    "ExactScalar",
    "InteriorPole",
    "LocalMapData",
    "MixedPiPowerError",
    "PreconditionError",
    "RationalFunction",
    "RawLocalMap",
    "SqrtAsymError",
    "SqrtHolomorphic",
    "SqrtPole",
    "TruncatedSeries",
    "TruncationError",
    "VerificationReport",
    "VerifyConfig",
    "analytic_pipeline",
    "binom_coeff",
    "check_vanishing",
    "cn_asymptotic",
    "coefficient_at",
    "compose_observable",
    "e_table",
    "equivariant_expansion",
    "evaluate_at_index",
    "equivariant_pole_expansion",
    "evaluate_expansion",
    "exact_coeffs",
    "exact_value",
    "expand",
    "gamma_eval",
    "gamma_exact",
    "gen_bernoulli",
    "general_alpha_expansion",
    "interior_pole_expansion",
    "laplace_constants",
    "lift_from_invariant",
    "meromorphic_pipeline",
    "numeric_coeffs",
    "pole_expansion",
    "polynomial",
    "reduce_to_invariant",
    "residual_slope",
    "richardson_fit",
    "root_constant",
    "series_add",
    "series_compose",
    "series_decompose",
    "series_exp",
    "series_log",
    "series_mul",
    "series_pow",
    "series_reciprocal",
    "series_reversion",
    "series_sqrt",
    "sqrt_expansion",
    "tricomi_erdelyi_e",
    "uniformize",
    "verify_model",
]
