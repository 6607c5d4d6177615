"""Half-line Pearcey integral

    P(x, y) = int_0^inf exp(i (u^4 + x u^2 + y u)) du

by two independent expansions, plus the two-variable Hermite polynomials
H_n(z, w) = n! sum_k z^(n-2k) w^k / ((n-2k)! k!) that drive the second one.

This is not the full-line Pearcey function used in optics.
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

PEARCEY_MAX = 3.0
HERMITE_MAX_N = 400


def _check_point(x: float, y: float) -> tuple[float, float]:
    x, y = float(x), float(y)
    for name, v in (("x", x), ("y", y)):
        if not math.isfinite(v) or abs(v) > PEARCEY_MAX:
            raise DomainError(f"|{name}| must be <= {PEARCEY_MAX}, got {v!r}")
    return x, y


# -- two-variable Hermite polynomials ---------------------------------------


def _scaled(coef: int, value: complex) -> complex:
    # coef * value for an arbitrarily large int coef: round coef once to a
    # 64-bit-wide mantissa, apply its binary exponent last.
    shift = max(coef.bit_length() - 64, 0)
    mant = coef / (1 << shift) if shift else float(coef)
    v = mant * value
    try:
        return complex(math.ldexp(v.real, shift), math.ldexp(v.imag, shift))
    except OverflowError:
        raise OverflowError(f"Hermite term overflows (coefficient ~2^{coef.bit_length()})") from None


def _powers(z: complex, count: int) -> list[complex]:
    out = [1 + 0j]
    for _ in range(count):
        out.append(out[-1] * z)
    return out


def _check_hermite(n: int, z: complex, w: complex) -> tuple[complex, complex]:
    if not (isinstance(n, int) and 0 <= n <= HERMITE_MAX_N):
        raise DomainError(f"n must be an int in [0, {HERMITE_MAX_N}], got {n!r}")
    return complex(z), complex(w)


def _hermite_sum(terms: Iterator[complex]) -> complex:
    total = compensated_sum(terms, _EXACT_FINITE)
    v = total.value
    if not (math.isfinite(v.real) and math.isfinite(v.imag)):
        raise OverflowError("Hermite polynomial value overflows")
    return v


# finite sums: consume every term, never stop early
_EXACT_FINITE = TruncationPolicy(rel_tol=1e-300, small_streak=10**9, max_terms=10**9)


def hermite2(n: int, z: complex, w: complex) -> complex:
    """H_n(z, w) = n! sum_{k <= n/2} z^(n-2k) w^k / ((n-2k)! k!).

    Integer coefficients n!/((n-2k)! k!) are built exactly by the ratio
    recurrence c_{k+1} = c_k (n-2k)(n-2k-1)/(k+1) and rounded once.
    """
    z, w = _check_hermite(n, z, w)
    zp, wp = _powers(z, n), _powers(w, n // 2)

    def terms():
        coef = 1
        for k in range(n // 2 + 1):
            yield _scaled(coef, zp[n - 2 * k] * wp[k])
            coef = coef * (n - 2 * k) * (n - 2 * k - 1) // (k + 1)

    return _hermite_sum(terms())


def hermite2_dw(n: int, z: complex, w: complex) -> complex:
    """d/dw H_n(z, w), differentiating the defining sum in w."""
    z, w = _check_hermite(n, z, w)
    zp, wp = _powers(z, n), _powers(w, n // 2)

    def terms():
        coef = 1
        for k in range(n // 2 + 1):
            if k:
                yield _scaled(coef * k, zp[n - 2 * k] * wp[k - 1])
            coef = coef * (n - 2 * k) * (n - 2 * k - 1) // (k + 1)

    return _hermite_sum(itertools.chain([0j], terms()))


def hermite2_dzz(n: int, z: complex, w: complex) -> complex:
    """d^2/dz^2 H_n(z, w), differentiating the defining sum twice in z."""
    z, w = _check_hermite(n, z, w)
    zp, wp = _powers(z, n), _powers(w, n // 2)

    def terms():
        coef = 1
        for k in range(n // 2 + 1):
            j = n - 2 * k
            if j >= 2:
                yield _scaled(coef * j * (j - 1), zp[j - 2] * wp[k])
            coef = coef * j * (j - 1) // (k + 1)

    return _hermite_sum(itertools.chain([0j], terms()))


# -- expansions of P(x, y) ---------------------------------------------------


def _quartic_term(m: int, k: int) -> complex:
    # (1/4) Gamma((2m+k+1)/4)/(m! k!) exp(i pi (6m+5k+1)/8)
    g = gamma_over_factorial((2 * m + k + 1) / 4.0, m, k)
    return 0.25 * g * expi_pi_frac(6 * m + 5 * k + 1, 8)


def pearcey_double_sum_terms(x: float, y: float) -> Iterator[complex]:
    """Order-n blocks sum_{m+k=n} x^m y^k (1/4) Gamma((2m+k+1)/4)/(m! k!) e^{i pi (6m+5k+1)/8}.

    Same terms as the x^n (y/x)^k form of the double sum, regrouped with m = n - k, so
    x = 0 is a regular point.
    """
    xp, yp = [1.0], [1.0]
    for n in itertools.count():
        if n:
            xp.append(xp[-1] * x)
            yp.append(yp[-1] * y)
        block = 0j
        for k in range(n, -1, -1):
            block += _quartic_term(n - k, k) * (xp[n - k] * yp[k])
        yield block


def pearcey_double_sum(x: float, y: float, policy: TruncationPolicy = DEFAULT_POLICY) -> EvalResult:
    x, y = _check_point(x, y)
    return compensated_sum(pearcey_double_sum_terms(x, y), policy)


def pearcey_boundary_terms(y: float) -> Iterator[complex]:
    """(1/4) Gamma((n+1)/4)/n! e^{i pi (5n+1)/8} y^n, i.e. P(0, y) term by term."""
    power = 1.0
    for n in itertools.count():
        yield _quartic_term(0, n) * power
        power *= y


def pearcey_boundary(y: float, policy: TruncationPolicy = DEFAULT_POLICY) -> EvalResult:
    """P(0, y) = C(4, y d/dy) exp(i y)."""
    _, y = _check_point(0.0, y)
    return compensated_sum(pearcey_boundary_terms(y), policy)


def _hermite_weight(n: int) -> complex:
    # (1/4) e^{i pi/8} e^{i 5 n pi/8} Gamma((n+1)/4) / n!
    return _quartic_term(0, n)


def pearcey_hermite_terms(x: float, y: float, which=hermite2) -> Iterator[complex]:
    w = complex(0.0, -x)
    for n in range(HERMITE_MAX_N + 1):
        yield _hermite_weight(n) * which(n, y, w)


def pearcey_hermite(x: float, y: float, policy: TruncationPolicy = DEFAULT_POLICY) -> EvalResult:
    """P(x, y) = e^{-i x d^2/dy^2} P(0, y) expanded on H_n(y, -i x)."""
    x, y = _check_point(x, y)
    return compensated_sum(pearcey_hermite_terms(x, y), policy)


def pearcey_pde_parts(
    x: float, y: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> tuple[EvalResult, EvalResult]:
    """(i dP/dx, d^2P/dy^2) by term-wise differentiation of the Hermite expansion.

    With w = -i x, i d/dx = d/dw, so the first series uses dH_n/dw and the
    second d^2H_n/dz^2.
    """
    x, y = _check_point(x, y)
    lhs = compensated_sum(pearcey_hermite_terms(x, y, hermite2_dw), policy)
    rhs = compensated_sum(pearcey_hermite_terms(x, y, hermite2_dzz), policy)
    return lhs, rhs


def pearcey_pde_residual(x: float, y: float, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """|i dP/dx - d^2P/dy^2| at (x, y)."""
    lhs, rhs = pearcey_pde_parts(x, y, policy)
    return abs(lhs.value - rhs.value)
