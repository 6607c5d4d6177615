"""Scalar kernels shared by the series evaluators.

Complex values are plain Python ``complex``; every public evaluator returns
an :class:`EvalResult` produced by :func:`compensated_sum`.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass


class DomainError(ValueError):
    """Argument outside the domain an operation is defined (or trusted) on."""


@dataclass(frozen=True)
class TruncationPolicy:
    """Stopping rule for an infinite series.

    Summation stops once ``small_streak`` consecutive terms satisfy
    ``|term| < rel_tol * |partial sum|``, or after ``max_terms`` terms.
    """

    rel_tol: float = 1e-14
    small_streak: int = 3
    max_terms: int = 500

    def __post_init__(self):
        if not (self.rel_tol > 0 and math.isfinite(self.rel_tol)):
            raise DomainError(f"rel_tol must be positive and finite, got {self.rel_tol!r}")
        if self.small_streak < 1:
            raise DomainError(f"small_streak must be >= 1, got {self.small_streak!r}")
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be >= 1, got {self.max_terms!r}")


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class EvalResult:
    value: complex
    abs_err_est: float
    terms_used: int
    converged: bool

    @property
    def real(self) -> float:
        return self.value.real

    @property
    def imag(self) -> float:
        return self.value.imag


def gamma_real(x: float) -> float:
    """Gamma function on the positive real axis.

    Raises DomainError for x <= 0 or non-finite x, OverflowError when the
    result is not representable (x > ~171.62).
    """
    x = float(x)
    if not (x > 0 and math.isfinite(x)):
        raise DomainError(f"gamma_real needs a finite x > 0, got {x!r}")
    try:
        return math.gamma(x)
    except OverflowError:
        raise OverflowError(f"gamma({x!r}) exceeds the double range") from None


def gamma_over_factorial(a: float, *ns: int) -> float:
    """Gamma(a) / (n1! n2! ...), finite even where the factorials overflow."""
    denom = math.prod(math.factorial(n) for n in ns)
    if denom.bit_length() <= 1000 and a <= 170.0:
        return gamma_real(a) / float(denom)
    if not a > 0:
        raise DomainError(f"gamma argument must be > 0, got {a!r}")
    return math.exp(math.lgamma(a) - sum(math.lgamma(n + 1) for n in ns))


def expi_pi(r: float) -> complex:
    """exp(i*pi*r), exact whenever r is a multiple of 1/2."""
    r = math.fmod(float(r), 2.0)
    if r < 0:
        r += 2.0
    twice = 2.0 * r
    if twice == int(twice):
        return _QUARTER_TURNS[int(twice) % 4]
    return complex(math.cos(math.pi * r), math.sin(math.pi * r))


def expi_pi_frac(p: int, q: int) -> complex:
    """exp(i*pi*p/q) for integers p, q > 0; reduces p modulo 2q first."""
    return expi_pi((p % (2 * q)) / q)


_QUARTER_TURNS = (1 + 0j, 1j, -1 + 0j, -1j)


class _Partials:
    # Shewchuk's non-overlapping partials (the algorithm behind math.fsum),
    # kept incrementally so the running sum is available after every add.
    __slots__ = ("partials",)

    def __init__(self):
        self.partials: list[float] = []

    def add(self, x: float) -> None:
        i = 0
        partials = self.partials
        for y in partials:
            if abs(x) < abs(y):
                x, y = y, x
            hi = x + y
            lo = y - (hi - x)
            if lo:
                partials[i] = lo
                i += 1
            x = hi
        partials[i:] = [x]

    def value(self) -> float:
        return math.fsum(self.partials)


def compensated_sum(terms: Iterable[complex], policy: TruncationPolicy = DEFAULT_POLICY) -> EvalResult:
    """Sum a (possibly infinite) stream of complex terms under ``policy``.

    Real and imaginary parts are accumulated separately and exactly, so the
    returned value is the correctly rounded sum of the terms consumed. The
    error estimate is the magnitude of the sum of the last ``small_streak``
    terms.
    """
    re_acc, im_acc = _Partials(), _Partials()
    recent: list[complex] = []
    streak = 0
    used = 0
    converged = False
    for term in terms:
        term = complex(term)
        re_acc.add(term.real)
        im_acc.add(term.imag)
        used += 1
        recent.append(term)
        if len(recent) > policy.small_streak:
            recent.pop(0)
        partial = complex(re_acc.value(), im_acc.value())
        size = abs(term)
        if size == 0.0 or size < policy.rel_tol * abs(partial):
            streak += 1
        else:
            streak = 0
        if streak >= policy.small_streak:
            converged = True
            break
        if used >= policy.max_terms:
            break
    if used == 0:
        raise DomainError("compensated_sum needs at least one term")
    value = complex(re_acc.value(), im_acc.value())
    tail = complex(math.fsum(t.real for t in recent), math.fsum(t.imag for t in recent))
    return EvalResult(value=value, abs_err_est=abs(tail), terms_used=used, converged=converged)
