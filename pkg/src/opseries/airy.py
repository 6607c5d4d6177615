"""Series evaluators for Ai(x) and the quartic-phase Ai4(x).

Ai(x) = 1/(3^(2/3) pi) sum_n Gamma((n+1)/3)/n! cos((4n+1) pi/6) (3^(1/3) x)^n

Ai4(x) = int_0^inf cos(t^4 + 2xt + 2x^2) dt
       = 1/4 sum_n Gamma((n+1)/4)/n! cos(2x^2 + (5n+1) pi/8) (2x)^n     (corrected)

The ``verbatim`` Ai4 variant repeats cos((5n+1) pi/8) in the sin(2x^2) term
instead of sin((5n+1) pi/8); it is kept so the discrepancy can be measured.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterator

from .numerics import (
    DEFAULT_POLICY,
    DomainError,
    EvalResult,
    TruncationPolicy,
    compensated_sum,
    expi_pi_frac,
    gamma_over_factorial,
)
from .opcalc import exp_coefficients, transform_series

AI_X_MAX = 8.0
AI4_X_MAX = 4.0
VARIANTS = ("corrected", "verbatim")

CBRT3 = 3.0 ** (1.0 / 3.0)
_AI_PREFACTOR = 1.0 / (3.0 ** (2.0 / 3.0) * math.pi)


def _check_point(x: float, x_max: float) -> float:
    x = float(x)
    if not math.isfinite(x) or abs(x) > x_max:
        raise DomainError(f"|x| must be <= {x_max}, got {x!r}")
    return x


def airy_terms(x: float, order: int = 0) -> Iterator[float]:
    """Terms of the order-th derivative of the Ai series, index-shifted.

    Term m is the n = m + order term of the series differentiated ``order``
    times: Gamma((n+1)/3)/m! cos((4n+1) pi/6) 3^(n/3) x^m, times the
    overall 1/(3^(2/3) pi).  Terms with n = 2 (mod 3) are exactly zero.
    """
    scale = CBRT3**order
    power = 1.0
    for m in itertools.count():
        n = m + order
        cos_phase = expi_pi_frac(4 * n + 1, 6).real
        yield _AI_PREFACTOR * gamma_over_factorial((n + 1) / 3.0, m) * cos_phase * scale * power
        power *= x
        scale *= CBRT3


def airy_ai(x: float, policy: TruncationPolicy = DEFAULT_POLICY, *, x_max: float = AI_X_MAX) -> EvalResult:
    """Ai(x) from its operational power series; real-valued (im = 0)."""
    x = _check_point(x, x_max)
    return compensated_sum(airy_terms(x), policy)


def airy_ai_deriv(
    x: float,
    order: int,
    policy: TruncationPolicy = DEFAULT_POLICY,
    *,
    x_max: float = AI_X_MAX,
) -> EvalResult:
    """First or second derivative of Ai by term-wise differentiation."""
    if order not in (1, 2):
        raise DomainError(f"order must be 1 or 2, got {order!r}")
    x = _check_point(x, x_max)
    return compensated_sum(airy_terms(x, order), policy)


def airy_ai_operational(x: float, policy: TruncationPolicy = DEFAULT_POLICY) -> EvalResult:
    """Ai(x) through the generic transform engine.

    With xi = 3^(1/3) t, Ai(x) = 3^(1/3)/pi * Re T(3^(1/3) x | 3) for
    f(u) = exp(i u).
    """
    res = transform_series(exp_coefficients(1j), 3.0, CBRT3 * x, policy)
    k = CBRT3 / math.pi
    return EvalResult(
        value=complex(k * res.value.real, 0.0),
        abs_err_est=k * res.abs_err_est,
        terms_used=res.terms_used,
        converged=res.converged,
    )


def airy4_terms(x: float, variant: str = "corrected") -> Iterator[float]:
    if variant not in VARIANTS:
        raise DomainError(f"variant must be one of {VARIANTS}, got {variant!r}")
    c2, s2 = math.cos(2.0 * x * x), math.sin(2.0 * x * x)
    power = 1.0
    for n in itertools.count():
        phase = expi_pi_frac(5 * n + 1, 8)
        if variant == "corrected":
            bracket = c2 * phase.real - s2 * phase.imag
        else:
            bracket = c2 * phase.real - s2 * phase.real
        yield 0.25 * gamma_over_factorial((n + 1) / 4.0, n) * bracket * power
        power *= 2.0 * x


def airy4(
    x: float,
    variant: str = "corrected",
    policy: TruncationPolicy = DEFAULT_POLICY,
    *,
    x_max: float = AI4_X_MAX,
) -> EvalResult:
    """Ai4(x) = int_0^inf cos(t^4 + 2xt + 2x^2) dt as a power series."""
    x = _check_point(x, x_max)
    return compensated_sum(airy4_terms(x, variant), policy)
