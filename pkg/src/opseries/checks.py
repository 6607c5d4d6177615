"""Invariant suites shared by ``opseries check`` and the acceptance tests."""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path

from . import oracle
from .airy import airy4, airy_ai, airy_ai_deriv
from .numerics import DEFAULT_POLICY, TruncationPolicy
from .opcalc import FresnelSymbol, fresnel_symbol
from .pearcey import (
    hermite2,
    hermite2_dw,
    hermite2_dzz,
    pearcey_boundary,
    pearcey_double_sum,
    pearcey_hermite,
    pearcey_pde_residual,
)

AIRY_GRID = (-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0)
AI4_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)
PEARCEY_AXIS = (-1.0, -0.5, 0.0, 0.5, 1.0)
PEARCEY_GRID = tuple((x, y) for x in PEARCEY_AXIS for y in PEARCEY_AXIS)
FRESNEL_GRID = tuple((a, b) for a in (1.5, 2.0, 3.0, 4.0, 5.0) for b in (0.0, 0.5, 1.0, 2.0))
HERMITE_GRID = tuple((complex(z), complex(w)) for z in (-2, -1, 0, 1, 2) for w in (-2, -1, 0, 1, 2))
AI0 = 0.355028053887817
FD_STEP = 1e-2


@dataclass(frozen=True)
class CheckResult:
    name: str
    measured: float
    threshold: float
    passed: bool
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f"  ({self.note})" if self.note else ""
        return f"{status} {self.name}: measured={self.measured:.3e} threshold={self.threshold:.1e}{tail}"


def _at_most(name, measured, threshold, note=""):
    return CheckResult(name, measured, threshold, measured <= threshold, note)


def _component_gap(a: complex, b: complex) -> float:
    return max(abs(a.real - b.real), abs(a.imag - b.imag))


# -- closed-form --------------------------------------------------------------


def check_fresnel_point(tol=1e-12):
    got = fresnel_symbol(FresnelSymbol(2.0, 0.0))
    want = math.sqrt(math.pi / 8.0) * (1 + 1j)
    return _at_most("fresnel C(2,0) = sqrt(pi/8)(1+i)", _component_gap(got, want), tol)


def check_fresnel_grid(tol=1e-8):
    worst = max(
        _component_gap(fresnel_symbol(FresnelSymbol(a, b)), oracle.fresnel_quad(a, b).value)
        for a, b in FRESNEL_GRID
    )
    return _at_most("fresnel closed form vs quadrature, 20-point grid", worst, tol)


# -- Airy -----------------------------------------------------------------------


def check_airy_oracle(tol=1e-9, policy=DEFAULT_POLICY):
    worst = max(abs(airy_ai(x, policy).real - oracle.airy_quad(x).value.real) for x in AIRY_GRID)
    return _at_most("Ai series vs quadrature", worst, tol)


def check_airy_zero(tol=1e-9, policy=DEFAULT_POLICY):
    return _at_most("Ai(0) = 0.355028053887817", abs(airy_ai(0.0, policy).real - AI0), tol)


def check_airy_ode(tol=1e-8, policy=DEFAULT_POLICY):
    worst = max(abs(airy_ai_deriv(x, 2, policy).real - x * airy_ai(x, policy).real) for x in AIRY_GRID)
    return _at_most("Ai ODE residual |y'' - x y|", worst, tol)


def check_ai4_oracle(tol=1e-8, policy=DEFAULT_POLICY):
    worst = max(abs(airy4(x, "corrected", policy).real - oracle.airy4_quad(x).value.real) for x in AI4_GRID)
    return _at_most("Ai4 corrected series vs quadrature", worst, tol)


def check_ai4_verbatim_deviates(floor=1e-4, policy=DEFAULT_POLICY):
    dev = abs(airy4(0.5, "verbatim", policy).real - oracle.airy4_quad(0.5).value.real)
    return CheckResult(
        "Ai4 verbatim series deviates from quadrature at x=0.5", dev, floor, dev > floor, "must exceed threshold"
    )


# -- Pearcey ----------------------------------------------------------------------


def check_dual_expansion(tol=1e-8, policy=DEFAULT_POLICY):
    worst = max(
        _component_gap(pearcey_double_sum(x, y, policy).value, pearcey_hermite(x, y, policy).value)
        for x, y in PEARCEY_GRID
    )
    return _at_most("Pearcey double sum vs Hermite expansion", worst, tol)


def check_boundary_degeneration(policy=DEFAULT_POLICY):
    worst = max(
        abs(pearcey_double_sum(0.0, y, policy).value - pearcey_boundary(y, policy).value) for y in PEARCEY_AXIS
    )
    return CheckResult("Pearcey double sum at x=0 equals boundary series", worst, 0.0, worst == 0.0, "exact")


def check_pearcey_oracle(tol=1e-7, policy=DEFAULT_POLICY):
    worst = 0.0
    for x, y in PEARCEY_GRID:
        q = oracle.pearcey_quad(x, y).value
        worst = max(
            worst,
            _component_gap(pearcey_double_sum(x, y, policy).value, q),
            _component_gap(pearcey_hermite(x, y, policy).value, q),
        )
    return _at_most("Pearcey expansions vs quadrature", worst, tol)


def check_pde_analytic(tol=1e-8, policy=DEFAULT_POLICY):
    worst = max(pearcey_pde_residual(x, y, policy) for x, y in PEARCEY_GRID)
    return _at_most("Pearcey PDE residual, term-wise derivatives", worst, tol)


def fd_pde_residual(x: float, y: float, h: float = FD_STEP, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """|i dP/dx - d^2P/dy^2| with central differences of the double sum."""

    def p(a, b):
        return pearcey_double_sum(a, b, policy).value

    dx = (p(x + h, y) - p(x - h, y)) / (2 * h)
    dyy = (p(x, y + h) - 2 * p(x, y) + p(x, y - h)) / (h * h)
    return abs(1j * dx - dyy)


def check_pde_fd(tol=1e-3, policy=DEFAULT_POLICY):
    worst = max(fd_pde_residual(x, y, FD_STEP, policy) for x, y in PEARCEY_GRID)
    return _at_most(f"Pearcey PDE residual, central differences h={FD_STEP}", worst, tol)


# -- Hermite ------------------------------------------------------------------------


def check_hermite_recurrence(tol=1e-12):
    worst = 0.0
    for z, w in HERMITE_GRID:
        h = [hermite2(n, z, w) for n in range(32)]
        for n in range(1, 31):
            exact = h[n + 1]
            rebuilt = z * h[n] + 2 * w * n * h[n - 1]
            gap = abs(rebuilt - exact)
            worst = max(worst, gap / abs(exact) if exact != 0 else gap)
    return _at_most("Hermite recurrence H_{n+1} = z H_n + 2 w n H_{n-1}, n <= 30", worst, tol)


def _derivative(poly: list[int]) -> list[int]:
    return [i * c for i, c in enumerate(poly)][1:]


def heat_brute_force(n: int, z: complex, w: complex) -> complex:
    """sum_j w^j/j! d^{2j}/dz^{2j} z^n, differentiating a coefficient list.

    Independent of hermite2: the series stops by itself once the 2j-th
    derivative of z^n vanishes.
    """
    poly = [0] * n + [1]  # lowest degree first
    terms = []
    j = 0
    while poly:
        value = sum(c * z**i for i, c in enumerate(poly))
        terms.append(value * w**j / math.factorial(j))
        poly = _derivative(_derivative(poly))
        j += 1
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def check_hermite_operational(tol_ulps=4):
    worst = 0.0
    for n in range(9):
        for z, w in HERMITE_GRID:
            exact = hermite2(n, z, w)
            scale = max(abs(exact), 1.0) * 2.220446049250313e-16
            worst = max(worst, abs(heat_brute_force(n, z, w) - exact) / scale)
    return _at_most("exp(w d^2/dz^2) z^n == H_n(z,w), n <= 8 (ulps)", worst, tol_ulps)


def check_heat_identity(tol_ulps=4):
    worst = 0.0
    for n in range(2, 31):
        for z, w in HERMITE_GRID:
            a, b = hermite2_dw(n, z, w), hermite2_dzz(n, z, w)
            ref = n * (n - 1) * hermite2(n - 2, z, w)
            # rounding yardstick: the same sum with all terms taken positive
            mass = n * (n - 1) * hermite2(n - 2, abs(z), abs(w)).real
            scale = max(mass, 1.0) * 2.220446049250313e-16
            worst = max(worst, abs(a - b) / scale, abs(a - ref) / scale)
    return _at_most("dH_n/dw == d^2H_n/dz^2 == n(n-1) H_{n-2} (ulps)", worst, tol_ulps)


# -- pinned oracle fixtures ------------------------------------------------------------


def check_fixtures(path: Path | str | None = None):
    path = Path(path) if path else oracle.FIXTURE_PATH
    try:
        rows = oracle.read_fixtures(path)
    except (OSError, ValueError) as exc:
        return CheckResult(f"pinned oracle values ({path})", math.inf, 0.0, False, str(exc))
    if not rows:
        return CheckResult(f"pinned oracle values ({path})", math.inf, 0.0, False, "no rows")
    worst_ratio = 0.0
    for row in rows:
        q = oracle.oracle_value(row.function, row.x, row.y)
        gap = abs(q.value - complex(row.re, row.im))
        worst_ratio = max(worst_ratio, gap / (row.err + q.error))
    return _at_most(f"pinned oracle values, {len(rows)} rows (gap / combined error)", worst_ratio, 1.0)


# -- suites -------------------------------------------------------------------------------

Check = Callable[..., CheckResult]

SUITES: dict[str, tuple[Check, ...]] = {
    "closed-form": (check_fresnel_point, check_fresnel_grid),
    "ode": (check_airy_ode,),
    "oracle": (
        check_airy_zero,
        check_airy_oracle,
        check_ai4_oracle,
        check_ai4_verbatim_deviates,
        check_pearcey_oracle,
    ),
    "dual-expansion": (check_dual_expansion, check_boundary_degeneration),
    "pde": (check_pde_analytic, check_pde_fd),
    "hermite": (check_hermite_recurrence, check_hermite_operational, check_heat_identity),
}
SUITE_NAMES = (*SUITES, "fixtures", "all")


def run_suite(name: str, tol: float | None = None, fixtures: Path | str | None = None) -> list[CheckResult]:
    """Run a named suite; ``tol`` replaces every check's default threshold."""
    if name not in SUITE_NAMES:
        raise KeyError(name)
    names = [n for n in SUITE_NAMES if n != "all"] if name == "all" else [name]
    results = []
    for suite in names:
        if suite == "fixtures":
            results.append(check_fixtures(fixtures))
            continue
        for check in SUITES[suite]:
            results.append(check() if tol is None or check is check_boundary_degeneration else check(tol))
    return results
