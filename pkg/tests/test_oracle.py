import cmath
import math

import mpmath
import pytest

from opseries import oracle
from opseries.numerics import DomainError
from opseries.opcalc import FresnelSymbol, fresnel_symbol
from opseries.oracle import (
    ContourSpec,
    FixtureRow,
    NonConvergenceError,
    adaptive_gk,
    airy4_quad,
    airy_quad,
    fresnel_quad,
    gk15,
    pearcey_quad,
    rotated_quadrature,
)

FRESNEL_GRID = [(a, b) for a in (1.5, 2.0, 3.0, 4.0, 5.0) for b in (0.0, 0.5, 1.0, 2.0)]


@pytest.mark.parametrize("degree", range(23))
def test_kronrod_rule_exact_for_polynomials(degree):
    val, _ = gk15(lambda s: s**degree, 0.0, 1.0)
    assert abs(val - 1 / (degree + 1)) < 1e-15


def test_gauss_part_exact_through_degree_13():
    # the embedded error estimate vanishes wherever both rules are exact
    for degree in range(14):
        _, err = gk15(lambda s: s**degree, -1.0, 1.0)
        assert err <= 50 * 2.3e-16 * 2  # rounding floor only
    _, err = gk15(lambda s: s**20, -1.0, 1.0)
    assert err > 1e-6


def test_adaptive_gk_smooth_and_singular():
    q = adaptive_gk(math.exp, 0.0, 1.0, 1e-13, 50)
    assert abs(q.value - (math.e - 1)) < 1e-13
    q = adaptive_gk(math.sqrt, 0.0, 1.0, 1e-11, 100)
    assert abs(q.value - 2 / 3) < 1e-11


def test_adaptive_gk_gives_up():
    with pytest.raises(NonConvergenceError):
        adaptive_gk(lambda s: math.sin(1 / s) if s else 0.0, 0.0, 1.0, 1e-14, 5)


def test_contour_spec_validation():
    assert ContourSpec(3.0).rotation == pytest.approx(math.pi / 6)
    for kw in (dict(alpha=1.0), dict(alpha=3.0, rotation=0.0), dict(alpha=3.0, rotation=math.pi / 5),
               dict(alpha=3.0, abs_tol=0.0), dict(alpha=3.0, max_subdivisions=0)):
        with pytest.raises(DomainError):
            ContourSpec(**kw)


def test_fresnel_examples():
    v, err = rotated_quadrature(ContourSpec(2.0), lambda z: 1.0)
    assert abs(v - math.sqrt(math.pi / 8) * (1 + 1j)) < 1e-10
    assert err > 0
    v, _ = rotated_quadrature(ContourSpec(3.0), lambda z: z * z, (2.0, 0.0, 0.0))
    assert abs(v - 1j / 3) < 1e-10
    v, _ = rotated_quadrature(ContourSpec(4.0), lambda z: 1.0)
    assert abs(v - fresnel_symbol(FresnelSymbol(4, 0))) < 1e-10


@pytest.mark.parametrize("alpha,beta", FRESNEL_GRID)
def test_closed_form_agreement(alpha, beta):
    q = fresnel_quad(alpha, beta)
    c = fresnel_symbol(FresnelSymbol(alpha, beta))
    assert abs(q.value.real - c.real) <= 1e-8
    assert abs(q.value.imag - c.imag) <= 1e-8


def test_error_estimate_honesty():
    honest = 0
    for alpha, beta in FRESNEL_GRID:
        q = fresnel_quad(alpha, beta)
        true = abs(q.value - fresnel_symbol(FresnelSymbol(alpha, beta)))
        honest += true <= 10 * q.error
    assert honest >= 0.95 * len(FRESNEL_GRID)


def _rotation_pair(fn, *args):
    return fn(*args), fn(*args, rotation=0.9 * math.pi / (2 * (3.0 if fn is airy_quad else 4.0)))


@pytest.mark.parametrize("x", [-8.0, -2.0, -1.0, 0.0, 1.0, 2.0, 8.0])
def test_airy_rotation_invariance(x):
    a, b = _rotation_pair(airy_quad, x)
    assert abs(a.value - b.value) <= a.error + b.error


@pytest.mark.parametrize("x", [-1.0, 0.0, 0.5, 1.0, 4.0])
def test_airy4_rotation_invariance(x):
    a, b = _rotation_pair(airy4_quad, x)
    assert abs(a.value - b.value) <= a.error + b.error


@pytest.mark.parametrize("x,y", [(-3.0, -3.0), (-1.0, 0.5), (0.0, 0.0), (1.0, 1.0), (3.0, -3.0)])
def test_pearcey_rotation_invariance(x, y):
    a, b = _rotation_pair(pearcey_quad, x, y)
    assert abs(a.value - b.value) <= a.error + b.error


@pytest.mark.parametrize("alpha,beta", [(1.5, 0.5), (3.0, 1.0), (5.0, 2.0)])
def test_fresnel_rotation_invariance(alpha, beta):
    a = fresnel_quad(alpha, beta)
    b = fresnel_quad(alpha, beta, rotation=0.9 * math.pi / (2 * alpha))
    assert abs(a.value - b.value) <= a.error + b.error


def test_airy_quad_examples():
    mpmath.mp.dps = 30
    assert abs(airy_quad(0).value.real - 1 / (3 ** (2 / 3) * math.gamma(2 / 3))) <= 1e-10
    assert abs(airy_quad(0).value.real - 0.355028053887817) <= 1e-10
    assert abs(airy_quad(1).value.real - 0.135292416313) <= 1e-9
    assert abs(airy_quad(-1).value.real - 0.535560883293) <= 1e-9
    for x in (-5.0, 3.0):
        assert abs(airy_quad(x).value.real - float(mpmath.airyai(x))) <= 1e-10


def test_airy4_quad_at_zero():
    want = fresnel_symbol(FresnelSymbol(4, 0)).real
    assert abs(airy4_quad(0).value.real - want) <= 1e-10


def test_pearcey_quad_boundary_is_plain_rotated_integral():
    direct = rotated_quadrature(ContourSpec(4.0), lambda z: cmath.exp(1j * z), oracle.exp_growth((1j,), math.pi / 8))
    assert abs(pearcey_quad(0, 1).value - direct.value) <= 1e-12
    assert abs(pearcey_quad(0, 0).value - fresnel_symbol(FresnelSymbol(4, 0))) <= 1e-10


def test_pearcey_quad_against_mpmath():
    mpmath.mp.dps = 25
    x, y = -1.0, 0.5
    ray = mpmath.exp(1j * mpmath.pi / 8)
    f = lambda s: mpmath.exp(1j * ((ray * s) ** 4 + x * (ray * s) ** 2 + y * ray * s)) * ray
    want = complex(mpmath.quad(f, [0, 1, 2, mpmath.inf]))
    assert abs(pearcey_quad(x, y).value - want) <= 1e-10


def test_quad_domains():
    with pytest.raises(DomainError):
        airy_quad(9.0)
    with pytest.raises(DomainError):
        airy4_quad(-5.0)
    with pytest.raises(DomainError):
        pearcey_quad(0.0, 3.1)


def test_quadrature_unpacks_as_pair():
    value, error = airy_quad(0.5)
    assert isinstance(value, complex) and error > 0


# -- pinned fixtures ------------------------------------------------------------------


def test_fixture_file_covers_pin_points():
    rows = oracle.read_fixtures()
    assert [(r.function, r.x, r.y) for r in rows] == list(oracle.PIN_POINTS)
    assert all(r.protocol == oracle.PIN_PROTOCOL for r in rows)


def test_fixture_line_round_trip():
    for row in oracle.read_fixtures():
        assert FixtureRow.parse(row.format()) == row


def test_fixture_rejects_short_line():
    with pytest.raises(ValueError):
        FixtureRow.parse("ai 0.0 0.0 1.0")


def test_pinned_airy_values_match_mpmath():
    mpmath.mp.dps = 30
    for row in oracle.read_fixtures():
        if row.function == "ai":
            assert abs(row.re - float(mpmath.airyai(row.x))) <= max(row.err, 1e-13)


@pytest.mark.parametrize("row", oracle.read_fixtures(), ids=lambda r: f"{r.function}({r.x},{r.y})")
def test_regression_against_pins(row):
    q = oracle.oracle_value(row.function, row.x, row.y)
    assert abs(q.value - complex(row.re, row.im)) <= row.err + q.error


def test_pinning_is_reproducible(tmp_path):
    points = oracle.PIN_POINTS[:2] + oracle.PIN_POINTS[-1:]
    rows = oracle.write_fixtures(tmp_path / "pins.txt", points)
    pinned = {(r.function, r.x, r.y): r for r in oracle.read_fixtures()}
    for row in rows:
        assert row == pinned[(row.function, row.x, row.y)]
    assert oracle.read_fixtures(tmp_path / "pins.txt") == rows
