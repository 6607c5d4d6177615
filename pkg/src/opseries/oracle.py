"""Quadrature ground truth for the oscillatory integrals.

Every integral here has the form I = int_0^inf exp(i xi^alpha) g(xi) dxi.
Putting xi = exp(i theta) s turns the phase factor into
exp(i exp(i alpha theta) s^alpha), which at theta = pi/(2 alpha) is the
plain decay exp(-s^alpha).  The damped integrand is cut off where it drops
below abs_tol/10 and integrated with adaptive Gauss-Kronrod (7/15).
"""

from __future__ import annotations

import cmath
import heapq
import math
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field
from pathlib import Path

from .numerics import DomainError

DEFAULT_ABS_TOL = 1e-10
DEFAULT_MAX_SUBDIVISIONS = 60
CBRT3 = 3.0 ** (1.0 / 3.0)


class NonConvergenceError(RuntimeError):
    """Adaptive quadrature ran out of subdivisions before reaching abs_tol."""


@dataclass(frozen=True)
class ContourSpec:
    alpha: float
    rotation: float | None = None
    abs_tol: float = DEFAULT_ABS_TOL
    max_subdivisions: int = DEFAULT_MAX_SUBDIVISIONS

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha > 1):
            raise DomainError(f"alpha must be > 1, got {self.alpha!r}")
        if self.rotation is None:
            object.__setattr__(self, "rotation", self.full_rotation)
        if not 0 < self.rotation <= self.full_rotation * (1 + 1e-15):
            raise DomainError(
                f"rotation must lie in (0, pi/(2 alpha)] = (0, {self.full_rotation}], got {self.rotation!r}"
            )
        if not self.abs_tol > 0:
            raise DomainError(f"abs_tol must be > 0, got {self.abs_tol!r}")
        if self.max_subdivisions < 1:
            raise DomainError(f"max_subdivisions must be >= 1, got {self.max_subdivisions!r}")

    @property
    def full_rotation(self) -> float:
        return math.pi / (2.0 * self.alpha)


@dataclass(frozen=True)
class Quadrature:
    """Integral value and heuristic absolute error; unpacks as (value, error)."""

    value: complex
    error: float
    panels: int = field(default=1, compare=False)

    def __iter__(self) -> Iterator:
        return iter((self.value, self.error))


# Gauss-Kronrod 7/15 on [-1, 1] (QUADPACK qk15); Gauss nodes are XGK[1::2].
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)
_EPS = 2.220446049250313e-16


def gk15(f: Callable[[float], complex], a: float, b: float) -> tuple[complex, float]:
    """One Gauss-Kronrod panel on [a, b]: (Kronrod estimate, |Kronrod - Gauss|).

    A rounding floor of 50 eps times the panel's absolute mass is folded
    into the error so that estimates never claim better than the arithmetic.
    """
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc = f(center)
    kronrod = _WGK[7] * fc
    gauss = _WG[3] * fc
    mass = _WGK[7] * abs(fc)
    for j in range(7):
        dx = half * _XGK[j]
        f1, f2 = f(center - dx), f(center + dx)
        kronrod += _WGK[j] * (f1 + f2)
        mass += _WGK[j] * (abs(f1) + abs(f2))
        if j % 2:
            gauss += _WG[j // 2] * (f1 + f2)
    kronrod *= half
    gauss *= half
    err = max(abs(kronrod - gauss), 50.0 * _EPS * abs(half) * mass)
    return kronrod, err


def adaptive_gk(
    f: Callable[[float], complex],
    a: float,
    b: float,
    abs_tol: float,
    max_subdivisions: int,
    initial_panels: int = 4,
) -> Quadrature:
    """Globally adaptive bisection of the panel with the largest error."""
    edges = [a + (b - a) * i / initial_panels for i in range(initial_panels + 1)]
    heap = []
    for lo, hi in zip(edges, edges[1:]):
        val, err = gk15(f, lo, hi)
        heap.append((-err, lo, hi, val))
    heapq.heapify(heap)
    splits = 0
    while True:
        total_err = -sum(item[0] for item in heap)
        if total_err <= abs_tol:
            break
        if splits >= max_subdivisions:
            raise NonConvergenceError(
                f"error estimate {total_err:.3g} > abs_tol {abs_tol:.3g} after {splits} subdivisions"
            )
        _, lo, hi, _ = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        for l2, h2 in ((lo, mid), (mid, hi)):
            val, err = gk15(f, l2, h2)
            heapq.heappush(heap, (-err, l2, h2, val))
        splits += 1
    # sum in position order so the result does not depend on heap layout
    items = sorted(heap, key=lambda item: item[1])
    value = complex(math.fsum(i[3].real for i in items), math.fsum(i[3].imag for i in items))
    return Quadrature(value, math.fsum(-i[0] for i in items), len(items))


def _cutoff(decay: float, alpha: float, growth: tuple[float, float, float], target: float) -> float:
    # Smallest s on a geometric grid where the log-bound
    #   -decay s^alpha + p log s + c1 s + c2 s^2
    # is below log(target) and already decreasing.
    power, lin, quad = growth
    log_target = math.log(target)

    def h(s):
        return -decay * s**alpha + power * math.log(s) + lin * s + quad * s * s

    s = 1.0
    while not (h(s) < log_target and h(s * 1.01) < h(s)):
        s *= 1.1
        if s > 1e6:
            raise DomainError("amplitude growth is not dominated by the contour damping")
    return s


def rotated_quadrature(
    spec: ContourSpec,
    amplitude: Callable[[complex], complex],
    growth: tuple[float, float, float] = (0.0, 0.0, 0.0),
) -> Quadrature:
    """int_0^inf exp(i xi^alpha) amplitude(xi) dxi along xi = exp(i rotation) s.

    ``growth = (p, c1, c2)`` bounds the amplitude on the ray:
    |amplitude(exp(i rotation) s)| <= s^p exp(c1 s + c2 s^2).  Call sites
    derive it from the known exponential-type constants of their amplitude.
    """
    alpha, theta = spec.alpha, spec.rotation
    ray = cmath.exp(1j * theta)
    omega = 1j * cmath.exp(1j * alpha * theta)
    if abs(theta - spec.full_rotation) <= 1e-15 * spec.full_rotation:
        omega = complex(-1.0, 0.0)
    decay = -omega.real
    tail_target = spec.abs_tol / 10.0
    s_max = _cutoff(decay, alpha, growth, tail_target)

    def integrand(s: float) -> complex:
        return ray * cmath.exp(omega * s**alpha) * amplitude(ray * s)

    body = adaptive_gk(integrand, 0.0, s_max, 0.9 * spec.abs_tol, spec.max_subdivisions)
    return Quadrature(body.value, body.error + tail_target, body.panels)


def exp_growth(coeffs: tuple[complex, ...], theta: float, power: float = 0.0) -> tuple[float, float, float]:
    """Growth triple for amplitude xi^power exp(b1 xi + b2 xi^2) on the ray at angle theta."""
    b1 = coeffs[0] if len(coeffs) > 0 else 0j
    b2 = coeffs[1] if len(coeffs) > 1 else 0j
    c1 = max((b1 * cmath.exp(1j * theta)).real, 0.0)
    c2 = max((b2 * cmath.exp(2j * theta)).real, 0.0)
    return (power, c1, c2)


def fresnel_quad(alpha: float, beta: float, rotation: float | None = None, **kw) -> Quadrature:
    """C(alpha, beta) by quadrature: amplitude xi^beta."""
    spec = ContourSpec(alpha, rotation, **kw)
    return rotated_quadrature(spec, lambda z: z**beta, (max(beta, 0.0), 0.0, 0.0))


def airy_quad(x: float, rotation: float | None = None, **kw) -> Quadrature:
    """Ai(x) = (3^(1/3)/pi) Re int_0^inf exp(i t^3) exp(i 3^(1/3) x t) dt."""
    x = float(x)
    if not abs(x) <= 8.0:
        raise DomainError(f"|x| must be <= 8, got {x!r}")
    spec = ContourSpec(3.0, rotation, **kw)
    b1 = 1j * CBRT3 * x
    q = rotated_quadrature(spec, lambda z: cmath.exp(b1 * z), exp_growth((b1,), spec.rotation))
    k = CBRT3 / math.pi
    return Quadrature(complex(k * q.value.real, 0.0), k * q.error, q.panels)


def airy4_quad(x: float, rotation: float | None = None, **kw) -> Quadrature:
    """Ai4(x) = Re{exp(2 i x^2) int_0^inf exp(i t^4) exp(2 i x t) dt}."""
    x = float(x)
    if not abs(x) <= 4.0:
        raise DomainError(f"|x| must be <= 4, got {x!r}")
    spec = ContourSpec(4.0, rotation, **kw)
    b1 = 2j * x
    q = rotated_quadrature(spec, lambda z: cmath.exp(b1 * z), exp_growth((b1,), spec.rotation))
    v = cmath.exp(2j * x * x) * q.value
    return Quadrature(complex(v.real, 0.0), q.error, q.panels)


def pearcey_quad(x: float, y: float, rotation: float | None = None, **kw) -> Quadrature:
    """P(x, y) = int_0^inf exp(i (u^4 + x u^2 + y u)) du."""
    x, y = float(x), float(y)
    if not (abs(x) <= 3.0 and abs(y) <= 3.0):
        raise DomainError(f"|x|, |y| must be <= 3, got ({x!r}, {y!r})")
    spec = ContourSpec(4.0, rotation, **kw)
    b1, b2 = 1j * y, 1j * x
    return rotated_quadrature(
        spec, lambda z: cmath.exp(b2 * z * z + b1 * z), exp_growth((b1, b2), spec.rotation)
    )


# -- pinned regression values -------------------------------------------------

FIXTURE_PATH = Path(__file__).with_name("data") / "oracle_fixtures.txt"
FIXTURE_COLUMNS = ("function", "x", "y", "re", "im", "err", "protocol")
PIN_PROTOCOL = "rot2:1.0/0.9"
PIN_AGREEMENT = 1e-9
_PIN_QUAD = dict(abs_tol=1e-13, max_subdivisions=2000)

PIN_POINTS = (
    [("ai", x, 0.0) for x in (-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0)]
    + [("ai4", x, 0.0) for x in (0.0, 0.25, 0.5, 0.75, 1.0)]
    + [("pearcey", x, y) for x in (-1.0, -0.5, 0.0, 0.5, 1.0) for y in (-1.0, -0.5, 0.0, 0.5, 1.0)]
)


@dataclass(frozen=True)
class FixtureRow:
    function: str
    x: float
    y: float
    re: float
    im: float
    err: float
    protocol: str

    def format(self) -> str:
        nums = " ".join(f"{v:.16e}" for v in (self.x, self.y, self.re, self.im, self.err))
        return f"{self.function} {nums} {self.protocol}"

    @classmethod
    def parse(cls, line: str) -> FixtureRow:
        parts = line.split()
        if len(parts) != len(FIXTURE_COLUMNS):
            raise ValueError(f"fixture line needs {len(FIXTURE_COLUMNS)} columns: {line!r}")
        f, x, y, re, im, err, tag = parts
        return cls(f, float(x), float(y), float(re), float(im), float(err), tag)


def oracle_value(function: str, x: float, y: float = 0.0, rotation_scale: float = 1.0, **kw) -> Quadrature:
    """Dispatch to the quadrature for ``function`` in {ai, ai4, pearcey}."""
    alpha = {"ai": 3.0, "ai4": 4.0, "pearcey": 4.0}[function]
    rotation = rotation_scale * math.pi / (2.0 * alpha)
    if function == "ai":
        return airy_quad(x, rotation, **kw)
    if function == "ai4":
        return airy4_quad(x, rotation, **kw)
    return pearcey_quad(x, y, rotation, **kw)


def pin_value(function: str, x: float, y: float = 0.0) -> FixtureRow:
    """Compute one pinned value: full and 0.9 rotations must agree first."""
    full = oracle_value(function, x, y, 1.0, **_PIN_QUAD)
    part = oracle_value(function, x, y, 0.9, **_PIN_QUAD)
    gap = abs(full.value - part.value)
    if gap > PIN_AGREEMENT:
        raise NonConvergenceError(f"{function}({x}, {y}): rotations disagree by {gap:.3g}")
    err = max(full.error, gap)
    return FixtureRow(function, x, y, full.value.real, full.value.imag, err, PIN_PROTOCOL)


def write_fixtures(path: Path | str = FIXTURE_PATH, points=PIN_POINTS) -> list[FixtureRow]:
    rows = [pin_value(*p) for p in points]
    with open(path, "w", encoding="ascii") as fh:
        fh.write("# " + " ".join(FIXTURE_COLUMNS) + "\n")
        for row in rows:
            fh.write(row.format() + "\n")
    return rows


def read_fixtures(path: Path | str = FIXTURE_PATH) -> list[FixtureRow]:
    rows = []
    with open(path, encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                rows.append(FixtureRow.parse(line))
    return rows


if __name__ == "__main__":
    for row in write_fixtures():
        print(row.format())
