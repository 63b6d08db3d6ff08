"""Periodic waves over infinite depth with one vortex per period.

Coordinates are scaled so that the vortex sits at the origin and the
undisturbed surface at ``y = 1``; the period is ``2 pi L``.  The vortex
stream function ``G`` vanishes on the surface and is even in ``x``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import cauchy
from .errors import DomainError, SingularPointError
from .stream_core import Point2, R_MIN_FACTOR

TAIL_TARGET = 1e-13
ORACLE_M = 1024


@dataclass(frozen=True)
class PeriodicParams:
    L: float
    g: float = 1.0
    alpha2: float = 0.01

    def __post_init__(self):
        for name in ("L", "g", "alpha2"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be a finite positive number, got {value!r}")

    @property
    def period(self) -> float:
        return 2.0 * math.pi * self.L


def _log_sin2_plus_sinh2(a, b):
    """``log(sin(a)^2 + sinh(b)^2)`` without overflow for large ``|b|``."""
    with np.errstate(divide="ignore"):
        log_s = 2.0 * np.log(np.abs(np.sin(a)))
        ab = np.abs(b)
        log_sh = np.where(
            ab > 1.0,
            2.0 * ab + 2.0 * np.log1p(-np.exp(-2.0 * ab)) - math.log(4.0),
            2.0 * np.log(np.abs(np.sinh(np.minimum(ab, 1.0)))),
        )
    return np.logaddexp(log_s, log_sh)


def g_stream(pp: PeriodicParams, x, y):
    """``(1/4 pi) log((sin^2(x/2L) + sinh^2(y/2L)) / (sin^2(x/2L) + sinh^2((y-2)/2L)))``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    scalar = x.ndim == 0 and y.ndim == 0
    if np.any(y >= 1.0):
        raise DomainError("y must lie below the surface y = 1")
    L = pp.L
    xr = x - pp.period * np.round(x / pp.period)
    if np.any(np.hypot(xr, y) < R_MIN_FACTOR):
        raise SingularPointError("point coincides with a lattice vortex")
    a = xr / (2 * L)
    out = (_log_sin2_plus_sinh2(a, y / (2 * L)) - _log_sin2_plus_sinh2(a, (y - 2.0) / (2 * L))) / (4 * math.pi)
    return float(out) if scalar else out


def conformal_map_halfstrip(pp: PeriodicParams, z):
    """Map of the half strip ``(-pi L, pi L) x (-inf, 1)`` onto the slit unit disk, fixing 0."""
    T = math.tanh(1.0 / (2.0 * pp.L))
    u = np.tanh((1.0 + 1j * np.asarray(z, dtype=complex)) / (2.0 * pp.L))
    out = (T - u) / (T + u)
    return complex(out) if np.ndim(out) == 0 else out


def c1_periodic(pp: PeriodicParams) -> float:
    """``-coth(1/L) / (4 pi L)``."""
    return -1.0 / (4.0 * math.pi * pp.L * math.tanh(1.0 / pp.L))


def c1_periodic_regularized(pp: PeriodicParams, n: int = 64) -> complex:
    """``(i / 4 pi) conj(f''(0) / f'(0))`` with Cauchy-integral derivatives of the map."""
    r = 0.5 * min(1.0, math.pi * pp.L)
    d1, d2 = cauchy.derivatives(lambda z: conformal_map_halfstrip(pp, z), 0.0, r, (1, 2), n)
    return 1j / (4.0 * math.pi) * (d2 / d1).conjugate()


def _sinh2_half(pp):
    return math.sinh(1.0 / (2.0 * pp.L)) ** 2


def chi_periodic(pp: PeriodicParams, x):
    """``(cosh(1/L) cos(x/L) - 1) / (8 pi^2 L^2 (cos(x/L) - cosh(1/L))^2)``."""
    x = np.asarray(x, dtype=float)
    L = pp.L
    s2 = np.sin(x / (2 * L)) ** 2
    sh2 = _sinh2_half(pp)
    # cos - cosh = -2 (sin^2 + sinh^2) and cosh cos - 1 = 2 sinh^2 - 2 cosh sin^2
    A = s2 + sh2
    out = (2.0 * sh2 - 2.0 * math.cosh(1.0 / L) * s2) / (4.0 * A * A) / (8.0 * math.pi**2 * L * L)
    return float(out) if out.ndim == 0 else out


def chi_periodic_ad1(pp: PeriodicParams, x):
    """``-(1/8 pi^2 L) sin(x/L) / (cos(x/L) - cosh(1/L))``."""
    x = np.asarray(x, dtype=float)
    L = pp.L
    A = np.sin(x / (2 * L)) ** 2 + _sinh2_half(pp)
    out = np.sin(x / L) / (2.0 * A) / (8.0 * math.pi**2 * L)
    return float(out) if out.ndim == 0 else out


def mean_zero_check(pp: PeriodicParams) -> float:
    """Integral of ``chi`` over one period from the antiderivative end values."""
    return chi_periodic_ad1(pp, math.pi * pp.L) - chi_periodic_ad1(pp, -math.pi * pp.L)


def mean_zero_quadrature(pp: PeriodicParams, n: int = 4096) -> float:
    """Same integral by the periodic trapezoid rule (spectrally accurate)."""
    xs = -math.pi * pp.L + pp.period * np.arange(n) / n
    return float(np.sum(chi_periodic(pp, xs)) * pp.period / n)


def chi_fourier(pp: PeriodicParams, x, N: int):
    """``(1/4 pi^2 L^2) sum_{n<=N} n exp(-n/L) cos(n x / L)``."""
    x = np.asarray(x, dtype=float)
    n = np.arange(1, N + 1)
    q = np.exp(-n / pp.L)
    out = np.tensordot(np.cos(np.multiply.outer(x, n) / pp.L), n * q, axes=([-1], [0])) / (4 * math.pi**2 * pp.L**2)
    return float(out) if np.ndim(out) == 0 else out


def eta_star_tail_bound(pp: PeriodicParams, N: int) -> float:
    """``(1/4 pi^2 g L^2) sum_{n>N} n q^n`` with ``q = exp(-1/L)``, in closed form."""
    q = math.exp(-1.0 / pp.L)
    tail = q ** (N + 1) * ((N + 1) - N * q) / (1.0 - q) ** 2
    return tail / (4 * math.pi**2 * pp.g * pp.L**2)


def default_n(pp: PeriodicParams, target: float = TAIL_TARGET) -> int:
    """Smallest ``N`` whose tail bound is below ``target``."""
    N = max(1, int(math.ceil(pp.L)))
    while eta_star_tail_bound(pp, N) > target:
        N *= 2
    lo, hi = N // 2, N
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if eta_star_tail_bound(pp, mid) > target:
            lo = mid
        else:
            hi = mid
    return hi


def eta_star(pp: PeriodicParams, x, N: int | None = None):
    """``-(1/4 pi^2) sum_{n<=N} n exp(-n/L) cos(n x / L) / (g L^2 + alpha2 n^2)``."""
    N = default_n(pp) if N is None else N
    if N < 1:
        raise DomainError("N must be at least 1")
    x = np.asarray(x, dtype=float)
    n = np.arange(1, N + 1)
    w = n * np.exp(-n / pp.L) / (pp.g * pp.L**2 + pp.alpha2 * n * n)
    out = -np.tensordot(np.cos(np.multiply.outer(x, n) / pp.L), w, axes=([-1], [0])) / (4 * math.pi**2)
    return float(out) if np.ndim(out) == 0 else out


def oracle_m(pp: PeriodicParams) -> int:
    """``ORACLE_M``, doubled while the aliasing factor ``exp(-M/(2L))`` exceeds 1e-16."""
    M = ORACLE_M
    while math.exp(-M / (2.0 * pp.L)) > 1e-16:
        M *= 2
    return M


def eta_star_oracle(pp: PeriodicParams, x, M: int | None = None):
    """Invert ``g - alpha2 d^2/dx^2`` on the discrete Fourier modes of sampled ``chi``."""
    M = oracle_m(pp) if M is None else M
    xs = pp.period * np.arange(M) / M
    coeffs = np.fft.rfft(chi_periodic(pp, xs)) / M
    k = np.arange(coeffs.size)
    # cosine amplitudes of chi: 2 Re c_k for 0 < k < M/2
    amp = 2.0 * coeffs.real[1 : M // 2]
    k = k[1 : M // 2]
    mult = -amp / (pp.g + pp.alpha2 * k * k / pp.L**2)
    x = np.asarray(x, dtype=float)
    out = np.tensordot(np.cos(np.multiply.outer(x, k) / pp.L), mult, axes=([-1], [0]))
    return float(out) if np.ndim(out) == 0 else out


def regularized_velocity_check(pp: PeriodicParams) -> Point2:
    """Real and imaginary parts of the regularised-gradient route for ``c1``."""
    w = c1_periodic_regularized(pp)
    return Point2(w.real, w.imag)


def period_mean(f, pp: PeriodicParams, n: int = 4096) -> float:
    xs = -math.pi * pp.L + pp.period * np.arange(n) / n
    return float(np.mean(f(xs)))


def ode_residual(pp: PeriodicParams, xs, step: float | None = None) -> float:
    """``max |g eta - alpha2 eta'' + chi|`` with a five-point stencil."""
    # chi varies on the scale min(L, 1) near the vortex column
    step = 1e-2 * min(pp.L, 1.0) if step is None else step
    xs = np.asarray(xs, dtype=float)
    e = lambda x: eta_star(pp, x)  # noqa: E731
    d2 = (-e(xs + 2 * step) + 16 * e(xs + step) - 30 * e(xs) + 16 * e(xs - step) - e(xs - 2 * step)) / (12 * step**2)
    return float(np.max(np.abs(pp.g * e(xs) - pp.alpha2 * d2 + chi_periodic(pp, xs))))


def chi_quadrature_integral(pp: PeriodicParams) -> float:
    val, _ = integrate.quad(lambda x: chi_periodic(pp, x), -math.pi * pp.L, math.pi * pp.L, epsabs=1e-15, limit=200)
    return val
