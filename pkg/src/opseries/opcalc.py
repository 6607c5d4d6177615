"""Generalized Fresnel symbol and the power-series form of the transform

    T(x | alpha) = int_0^inf exp(i xi^alpha) f(x xi) dxi.

Acting with C(alpha, x d/dx) on f = sum a_n x^n is diagonal on monomials,
so T(x | alpha) = sum a_n C(alpha, n) x^n.  Only that diagonal action is
implemented; there is no operator algebra.

Supported f: entire functions of exponential type (a_n = c^n / n!), for
which |a_n| Gamma((n+1)/alpha) -> 0 for every alpha > 1.
"""

from __future__ import annotations

import cmath
import itertools
import math
from collections.abc import Callable, Iterator
from dataclasses import dataclass

from .numerics import (
    DEFAULT_POLICY,
    DomainError,
    EvalResult,
    TruncationPolicy,
    compensated_sum,
    expi_pi,
    gamma_real,
)


@dataclass(frozen=True)
class FresnelSymbol:
    alpha: float
    beta: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha > 1):
            raise DomainError(f"alpha must be > 1, got {self.alpha!r}")
        if not (math.isfinite(self.beta) and self.beta > -1):
            raise DomainError(f"beta must be > -1, got {self.beta!r}")


def fresnel_symbol(s: FresnelSymbol) -> complex:
    """C(alpha, beta) = int_0^inf exp(i xi^alpha) xi^beta dxi in closed form.

    Equals Gamma((1+beta)/alpha)/alpha * exp(i pi (1+beta)/(2 alpha)).
    """
    t = (1.0 + s.beta) / s.alpha
    return (gamma_real(t) / s.alpha) * expi_pi(t / 2.0)


@dataclass(frozen=True)
class CoefficientSeries:
    """Lazily generated power-series coefficients a_0, a_1, ...

    ``generate`` must return a fresh iterator on each call; the series is
    unbounded unless the iterator stops.
    """

    generate: Callable[[], Iterator[complex]]

    def __iter__(self) -> Iterator[complex]:
        return self.generate()

    def __getitem__(self, n: int) -> complex:
        if n < 0:
            raise IndexError(n)
        for a in itertools.islice(self, n, n + 1):
            return a
        return 0j

    def __add__(self, other: CoefficientSeries) -> CoefficientSeries:
        def gen():
            for a, b in itertools.zip_longest(self, other, fillvalue=0j):
                yield a + b

        return CoefficientSeries(gen)

    def __mul__(self, scale: complex) -> CoefficientSeries:
        return CoefficientSeries(lambda: (scale * a for a in self))

    __rmul__ = __mul__


def exp_coefficients(c: complex) -> CoefficientSeries:
    """Coefficients c**n / n! of exp(c x), via a_n = a_{n-1} * c / n."""
    c = complex(c)
    if not cmath.isfinite(c):
        raise DomainError(f"c must be finite, got {c!r}")

    def gen():
        a = 1 + 0j
        yield a
        for n in itertools.count(1):
            a = a * c / n
            yield a

    return CoefficientSeries(gen)


def transform_terms(f: CoefficientSeries, alpha: float, x: complex) -> Iterator[complex]:
    """The addends a_n C(alpha, n) x^n in increasing n."""
    x = complex(x)
    power = 1 + 0j
    for n, a in enumerate(f):
        yield a * fresnel_symbol(FresnelSymbol(alpha, n)) * power
        power *= x


def transform_series(
    f: CoefficientSeries,
    alpha: float,
    x: complex,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> EvalResult:
    """T(x | alpha) = sum_n a_n C(alpha, n) x^n, summed under ``policy``."""
    if not (math.isfinite(alpha) and alpha > 1):
        raise DomainError(f"alpha must be > 1, got {alpha!r}")
    return compensated_sum(transform_terms(f, alpha, x), policy)
