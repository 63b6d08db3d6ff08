"""Particle paths of the first-order flow in the frame moving with the wave.

At leading order particles follow ``grad_perp(phi + c1 y)``, scaled by the
vortex strength ``eps``.  The stream function ``phi + c1 y`` is conserved
along paths, which doubles as the integrator's error monitor.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import List

import numpy as np
from scipy import optimize

from . import stream_core as sc
from .errors import DomainError, StepSizeError
from .stream_core import PhysicalParams, Point2

R_STOP_FACTOR = 1e-3
V_EQ_FACTOR = 1e-8
STEP_GUARD = 0.1
CLOSE_TOL_FACTOR = 1e-3
MIN_CLOSE_STEPS = 10


class Termination(enum.Enum):
    MAX_STEPS = "MaxSteps"
    LEFT_DOMAIN = "LeftDomain"
    NEAR_VORTEX = "NearVortex"
    NEAR_EQUILIBRIUM = "NearEquilibrium"
    CLOSED_ORBIT = "ClosedOrbit"


@dataclass(frozen=True)
class StreamPath:
    points: np.ndarray  # shape (k, 2)
    dt: float
    termination: Termination
    eps_sign: int = 1

    @property
    def times(self) -> np.ndarray:
        return self.dt * np.arange(len(self.points))


def first_order_velocity(params: PhysicalParams, theta: float, x, y) -> Point2:
    """``(-phi_y - c1, phi_x)`` for unit positive strength."""
    u, v = sc.phi_gradperp(params, theta, x, y)
    return Point2(u - sc.c1(params, theta), v)


def frame_stream_function(params: PhysicalParams, theta: float, x, y):
    return sc.phi(params, theta, x, y) + sc.c1(params, theta) * np.asarray(y)


def _arcosh_one_plus(delta):
    return math.log1p(delta + math.sqrt(delta * (2.0 + delta)))


def equilibrium_x(params: PhysicalParams, theta: float) -> float:
    """Positive abscissa of the stagnation points, ``(h/pi) arcosh((1 + sin^2)/|cos|)``."""
    sc._check_theta(theta)
    if theta == 0.5:
        raise DomainError("no stagnation points at theta = 1/2")
    a = math.pi * min(theta, 1.0 - theta)
    s, c = math.sin(a), math.cos(a)
    # argument minus one, written without cancellation for small theta
    delta = (s * s + 2.0 * math.sin(a / 2) ** 2) / c
    return params.h / math.pi * _arcosh_one_plus(delta)


def equilibria(params: PhysicalParams, theta: float) -> List[Point2]:
    """The two stagnation points; on the bed for ``theta < 1/2``, on the surface above it."""
    if theta == 0.5:
        return []
    x = equilibrium_x(params, theta)
    y = -params.h if theta < 0.5 else 0.0
    return [Point2(-x, y), Point2(x, y)]


def _typical_speed(params, theta):
    return max(abs(sc.c1(params, theta)), 1.0 / (4.0 * params.h))


def integrate_streamline(params: PhysicalParams, theta: float, p0, eps_sign: int = 1,
                         dt: float = 1e-2, max_steps: int = 10_000, *,
                         r_stop: float | None = None, x_limit: float | None = None,
                         detect_closed: bool = True) -> StreamPath:
    """Fixed-step classical Runge-Kutta integration of one particle path.

    Stops on leaving the strip (or ``|x| > x_limit``), entering the ball of
    radius ``r_stop`` around the vortex, slowing below ``1e-8`` of the typical
    speed, or returning to within ``1e-3 h`` of ``p0`` after having left
    that neighbourhood (a closed orbit).
    """
    h = params.h
    sign = 1 if eps_sign >= 0 else -1
    r_stop = R_STOP_FACTOR * h if r_stop is None else r_stop
    x0, y0 = float(p0[0]), float(p0[1])
    yv = -(1.0 - theta) * h
    if not (-h < y0 < 0.0):
        raise DomainError(f"p0 must lie in the open strip, got y = {y0!r}")
    if math.hypot(x0, y0 - yv) <= r_stop:
        raise DomainError("p0 lies inside the vortex exclusion ball")
    v_eq = V_EQ_FACTOR * _typical_speed(params, theta)
    close_tol = CLOSE_TOL_FACTOR * h
    slack = 1e-12 * h

    def field(p):
        u, v = first_order_velocity(params, theta, p[0], min(p[1], 0.0))
        return sign * np.array([u, v])

    pts = [np.array([x0, y0])]
    p = pts[0]
    left_start = False
    reason = Termination.MAX_STEPS
    for step in range(1, max_steps + 1):
        k1 = field(p)
        speed = float(np.hypot(*k1))
        if speed * dt > STEP_GUARD * h:
            raise StepSizeError(f"|v| dt = {speed * dt:.3e} exceeds {STEP_GUARD} h at {tuple(p)}; reduce dt")
        if speed < v_eq:
            reason = Termination.NEAR_EQUILIBRIUM
            break
        k2 = field(p + 0.5 * dt * k1)
        k3 = field(p + 0.5 * dt * k2)
        k4 = field(p + dt * k3)
        p = p + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        pts.append(p)
        if p[1] > slack or p[1] < -h - slack or (x_limit is not None and abs(p[0]) > x_limit):
            reason = Termination.LEFT_DOMAIN
            break
        if math.hypot(p[0], p[1] - yv) < r_stop:
            reason = Termination.NEAR_VORTEX
            break
        dist0 = math.hypot(p[0] - x0, p[1] - y0)
        if detect_closed:
            if dist0 > 2 * close_tol:
                left_start = True
            elif left_start and step >= MIN_CLOSE_STEPS and dist0 < close_tol:
                reason = Termination.CLOSED_ORBIT
                break
    return StreamPath(np.array(pts), dt, reason, sign)


def stream_drift(params: PhysicalParams, theta: float, path: StreamPath) -> float:
    """Largest change of the frame stream function along a path."""
    vals = frame_stream_function(params, theta, path.points[:, 0], np.minimum(path.points[:, 1], 0.0))
    return float(np.max(np.abs(vals - vals[0])))


def heteroclinic_trace(params: PhysicalParams, theta: float, n_points: int = 201) -> np.ndarray:
    """Critical-layer boundary as the level set of ``phi + c1 y`` through the stagnation points.

    Returns an ``(n_points, 2)`` array running between the two stagnation
    points, above the vortex for ``theta < 1/2`` and below it otherwise.
    """
    h = params.h
    xe = equilibrium_x(params, theta)
    ye = -h if theta < 0.5 else 0.0
    level = float(frame_stream_function(params, theta, xe, ye))
    yv = -(1.0 - theta) * h
    f = lambda y, x: float(frame_stream_function(params, theta, x, y)) - level  # noqa: E731
    xs = xe * np.cos(np.linspace(np.pi, 0.0, n_points))  # clustered at the stagnation points
    # scan from the boundary without stagnation points towards the other one;
    # the first sign change is the arc
    scan = np.linspace(0.0, -h, 401) if theta < 0.5 else np.linspace(-h, 0.0, 401)
    ys = np.empty(n_points)
    for i, x in enumerate(xs):
        if abs(abs(x) - xe) < 1e-14 * max(1.0, xe):
            ys[i] = ye
            continue
        ok = np.hypot(x, scan - yv) > 1e-6 * h
        grid = scan[ok]
        vals = np.asarray(frame_stream_function(params, theta, x + 0 * grid, grid)) - level
        change = np.nonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))[0]
        if change.size == 0:
            raise DomainError(f"no level crossing found at x = {x!r}")
        k = change[0]
        ys[i] = optimize.brentq(f, grid[k], grid[k + 1], args=(x,), xtol=1e-14 * h)
    return np.column_stack([xs, ys])


# infinite depth ------------------------------------------------------------------

def _radicand(d, y):
    u = np.asarray(y, dtype=float) / (2.0 * d)
    with np.errstate(invalid="ignore", divide="ignore"):
        ucoth = np.where(u == 0.0, 1.0, u / np.tanh(u))
    return 2.0 * d * np.asarray(y) + 4.0 * d * d * ucoth - (np.asarray(y) + d) ** 2


def heteroclinic_bottom(d: float) -> float:
    """Depth where the infinite-depth critical layer closes (radicand root below the vortex)."""
    if not d > 0:
        raise DomainError("d must be positive")
    return optimize.brentq(lambda y: float(_radicand(d, y)), -3.0 * d, -d, xtol=1e-15 * d)


def heteroclinic_infinite_depth(d: float, y):
    """``x >= 0`` on the heteroclinic curve ``x^2 + (y+d)^2 = 2 d y (1 + coth(y/2d))``."""
    if not d > 0:
        raise DomainError("d must be positive")
    scalar = np.ndim(y) == 0
    r = _radicand(d, y)
    if np.any(np.asarray(y) > 0) or np.any(r < -1e-12 * d * d):
        raise DomainError("y lies outside the critical layer (negative radicand)")
    out = np.sqrt(np.maximum(r, 0.0))
    return float(out) if scalar else out


def equilibria_infinite_depth(d: float) -> List[Point2]:
    if not d > 0:
        raise DomainError("d must be positive")
    x = math.sqrt(3.0) * d
    return [Point2(-x, 0.0), Point2(x, 0.0)]
