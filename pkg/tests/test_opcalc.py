import cmath
import math
import random

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opseries.numerics import DomainError, TruncationPolicy
from opseries.opcalc import (
    CoefficientSeries,
    FresnelSymbol,
    exp_coefficients,
    fresnel_symbol,
    transform_series,
)
from opseries.oracle import fresnel_quad

GAMMA_QUARTER = 3.6256099082219083  # mpmath.gamma(0.25)


def test_fresnel_point():
    got = fresnel_symbol(FresnelSymbol(2, 0))
    want = math.sqrt(math.pi / 8)
    assert got.real == pytest.approx(want, abs=1e-12)
    assert got.imag == pytest.approx(want, abs=1e-12)
    assert got.real == pytest.approx(0.6266570687, abs=1e-10)


@pytest.mark.parametrize("alpha", [1.25, 1.5, 2.0, 3.0, 4.0, 7.5])
def test_fresnel_beta_alpha_minus_one_is_i_over_alpha(alpha):
    assert fresnel_symbol(FresnelSymbol(alpha, alpha - 1)) == 1j / alpha


def test_fresnel_quartic():
    assert GAMMA_QUARTER == pytest.approx(float(mpmath.gamma(0.25)), rel=1e-15)
    want = GAMMA_QUARTER / 4 * cmath.exp(1j * math.pi / 8)
    got = fresnel_symbol(FresnelSymbol(4, 0))
    assert abs(got - want) < 1e-15
    assert got.real == pytest.approx(0.83740, abs=1e-5)
    assert got.imag == pytest.approx(0.34686, abs=1e-5)
    assert abs(got - fresnel_quad(4, 0).value) < 1e-10


@pytest.mark.parametrize("alpha,beta", [(1.0, 0.0), (0.5, 0.0), (2.0, -1.0), (2.0, -3.0), (math.nan, 0.0)])
def test_fresnel_domain(alpha, beta):
    with pytest.raises(DomainError):
        FresnelSymbol(alpha, beta)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=1.01, max_value=20.0), st.floats(min_value=-0.99, max_value=50.0))
def test_fresnel_modulus_and_argument(alpha, beta):
    c = fresnel_symbol(FresnelSymbol(alpha, beta))
    t = (1 + beta) / alpha
    assert abs(c) == pytest.approx(math.gamma(t) / alpha, rel=1e-13)
    want = math.pi * t / 2
    gap = math.remainder(cmath.phase(c) - want, 2 * math.pi)
    assert abs(gap) <= 1e-13 * max(want, 1.0)


@pytest.mark.parametrize("alpha", [1.5, 2.0, 3.0, 4.0, 5.0])
@pytest.mark.parametrize("beta", [0.0, 0.5, 1.0, 2.0])
def test_fresnel_matches_quadrature(alpha, beta):
    c = fresnel_symbol(FresnelSymbol(alpha, beta))
    q = fresnel_quad(alpha, beta).value
    assert abs(c.real - q.real) <= 1e-8
    assert abs(c.imag - q.imag) <= 1e-8


def test_exp_coefficients():
    assert [exp_coefficients(0)[n] for n in range(4)] == [1, 0, 0, 0]
    assert exp_coefficients(1j)[2] == pytest.approx(-0.5)
    assert exp_coefficients(2j)[3] == pytest.approx(-4j / 3)
    # the series is re-iterable
    f = exp_coefficients(1.5)
    assert list(zip(range(5), f)) == list(zip(range(5), f))


def test_transform_of_constant_is_c_alpha_0():
    for alpha in (1.5, 3.0, 4.0):
        res = transform_series(exp_coefficients(0), alpha, 2.5 - 1j)
        assert res.value == fresnel_symbol(FresnelSymbol(alpha, 0))
        assert res.converged and res.terms_used <= 4


def test_transform_at_zero():
    f = exp_coefficients(3 - 2j)
    res = transform_series(f, 2.5, 0)
    assert res.value == f[0] * fresnel_symbol(FresnelSymbol(2.5, 0))


def test_transform_airy_construction_at_origin():
    res = transform_series(exp_coefficients(1j), 3.0, 0.0)
    assert res.value.real == pytest.approx(math.pi / 3 ** (1 / 3) * 0.355028053887817, rel=1e-14)


def test_transform_airy_construction():
    mpmath.mp.dps = 30
    for t in (-1.0, 0.5, 2.0):
        res = transform_series(exp_coefficients(1j), 3.0, 3 ** (1 / 3) * t)
        assert res.value.real == pytest.approx(math.pi / 3 ** (1 / 3) * float(mpmath.airyai(t)), abs=1e-13)


def test_transform_rejects_bad_alpha():
    with pytest.raises(DomainError):
        transform_series(exp_coefficients(1), 1.0, 0.5)


def test_transform_linearity():
    rng = random.Random(7)
    for _ in range(20):
        c1 = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        c2 = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        alpha = rng.choice([1.5, 2.0, 3.0, 4.0])
        x = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        f, g = exp_coefficients(c1), exp_coefficients(c2)
        rf, rg = transform_series(f, alpha, x), transform_series(g, alpha, x)
        rs = transform_series(f + g, alpha, x)
        slack = rf.abs_err_est + rg.abs_err_est + rs.abs_err_est + 1e-14 * (abs(rf.value) + abs(rg.value))
        assert abs(rs.value - (rf.value + rg.value)) <= slack


def test_transform_scaled_coefficients():
    f = exp_coefficients(0.5j)
    assert transform_series(2 * f, 3.0, 1.0).value == pytest.approx(2 * transform_series(f, 3.0, 1.0).value, rel=1e-15)


@pytest.mark.parametrize("lam", [-1.0, -0.3, 0.0, 0.4, 1.0])
@pytest.mark.parametrize("c,alpha,x", [(1j, 3.0, 0.8), (2j, 4.0, -0.6), (0.5 - 1j, 2.0, 0.7 + 0.2j)])
def test_dilatation_identity(lam, c, alpha, x):
    scaled = transform_series(exp_coefficients(math.exp(lam) * c), alpha, x)
    moved = transform_series(exp_coefficients(c), alpha, math.exp(lam) * x)
    assert abs(scaled.value - moved.value) <= 1e-12 * abs(moved.value)


def test_finite_series_addition_pads_with_zeros():
    short = CoefficientSeries(lambda: iter([1.0, 2.0]))
    total = short + exp_coefficients(0)
    assert [total[n] for n in range(3)] == [2.0, 2.0, 0.0]


def test_policy_cap_reports_non_convergence():
    res = transform_series(exp_coefficients(5j), 1.5, 1.0, TruncationPolicy(max_terms=10))
    assert not res.converged
    assert res.terms_used == 10
