"""Operational-series evaluators for Airy-type oscillatory integrals."""

from .airy import airy4, airy_ai, airy_ai_deriv
from .numerics import DomainError, EvalResult, TruncationPolicy, compensated_sum, gamma_real
from .opcalc import CoefficientSeries, FresnelSymbol, exp_coefficients, fresnel_symbol, transform_series
from .pearcey import hermite2, pearcey_boundary, pearcey_double_sum, pearcey_hermite, pearcey_pde_residual

__all__ = [
    "CoefficientSeries",
    "DomainError",
    "EvalResult",
    "FresnelSymbol",
    "TruncationPolicy",
    "airy4",
    "airy_ai",
    "airy_ai_deriv",
    "compensated_sum",
    "exp_coefficients",
    "fresnel_symbol",
    "gamma_real",
    "hermite2",
    "pearcey_boundary",
    "pearcey_double_sum",
    "pearcey_hermite",
    "pearcey_pde_residual",
    "transform_series",
]
