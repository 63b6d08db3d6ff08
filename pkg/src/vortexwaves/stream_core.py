"""Finite-depth point-vortex stream functions.

The fluid occupies the strip ``R x (-h, 0)``; a vortex at relative height
``theta`` sits at ``(0, -(1 - theta) h)``.  Its stream function ``phi``
vanishes on the surface and on the bed and carries an image ("mirror")
vortex at ``(0, (1 - theta) h)``.

All evaluators accept scalars or numpy arrays for ``x`` and ``y`` and return
the same shape.  Denominators ``cosh(s) + cos(u)`` are evaluated in the
cancellation-free form ``2 (sinh(s/2)**2 + cos(u/2)**2)`` near the vortex and
in ``sech``-scaled form far away, so neither overflow nor loss of relative
accuracy occurs anywhere in the closed strip.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import DomainError, SingularPointError

#: Points closer than ``R_MIN_FACTOR * h`` to a vortex are treated as the vortex.
R_MIN_FACTOR = 1e-10

# |pi x / h| beyond which the sech-scaled branch is used.
_SECH_SWITCH = 40.0


@dataclass(frozen=True)
class PhysicalParams:
    """Gravity ``g``, surface tension coefficient ``alpha2`` and depth ``h``."""

    g: float
    alpha2: float
    h: float

    def __post_init__(self):
        for name in ("g", "alpha2", "h"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be a finite positive number, got {value!r}")

    @property
    def alpha(self) -> float:
        return math.sqrt(self.alpha2)

    @property
    def m(self) -> float:
        """Dimensionless ratio ``sqrt(g) h / (pi alpha)`` of the two decay rates."""
        return math.sqrt(self.g) * self.h / (math.pi * self.alpha)

    @classmethod
    def from_m(cls, m: float, h: float = 1.0, g: float = 1.0) -> "PhysicalParams":
        """Parameters with prescribed ``m``, solving for the surface tension."""
        if not m > 0:
            raise DomainError(f"m must be positive, got {m!r}")
        alpha = math.sqrt(g) * h / (math.pi * m)
        return cls(g=g, alpha2=alpha * alpha, h=h)


class Point2(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class VortexConfig:
    """Relative heights ``1 > thetas[0] > ... > thetas[-1] > 0`` and optional strengths."""

    thetas: tuple
    strengths: Optional[tuple] = None

    def __post_init__(self):
        thetas = tuple(float(t) for t in np.atleast_1d(self.thetas))
        if not thetas:
            raise DomainError("thetas must contain at least one vortex")
        for i, t in enumerate(thetas):
            if not (0.0 < t < 1.0):
                raise DomainError(f"thetas[{i}] = {t!r} is not in (0, 1)")
        for i in range(len(thetas) - 1):
            if not thetas[i] > thetas[i + 1]:
                raise DomainError(
                    f"thetas must be strictly decreasing: thetas[{i}] = {thetas[i]!r} "
                    f"<= thetas[{i + 1}] = {thetas[i + 1]!r}"
                )
        object.__setattr__(self, "thetas", thetas)
        if self.strengths is not None:
            strengths = tuple(float(s) for s in np.atleast_1d(self.strengths))
            if len(strengths) != len(thetas):
                raise DomainError(
                    f"strengths has length {len(strengths)}, expected {len(thetas)}"
                )
            object.__setattr__(self, "strengths", strengths)

    @property
    def n(self) -> int:
        return len(self.thetas)

    def with_strengths(self, strengths: Sequence[float]) -> "VortexConfig":
        return VortexConfig(self.thetas, tuple(strengths))


def _as_array(*values):
    arrays = [np.asarray(v, dtype=float) for v in values]
    scalar = all(a.ndim == 0 for a in arrays)
    return np.broadcast_arrays(*arrays), scalar


def _finish(value, scalar):
    return float(value) if scalar else value


def _check_theta(theta):
    if not (0.0 < theta < 1.0):
        raise DomainError(f"theta must lie in (0, 1), got {theta!r}")


def _check_point(h, theta, x, y, index=None):
    tag = "" if index is None else f" (vortex {index})"
    if np.any(y < -h * (1 + 1e-12)) or np.any(y >= (1.0 - theta) * h):
        raise DomainError(
            f"y must satisfy -h <= y < (1 - theta) h = {(1.0 - theta) * h!r}{tag}"
        )
    dist = np.hypot(x, y + (1.0 - theta) * h)
    if np.any(dist < R_MIN_FACTOR * h):
        raise SingularPointError(
            f"point coincides with the vortex at (0, {-(1.0 - theta) * h!r}){tag}", index=index
        )


def _pieces(h, theta, x, y):
    """Shared building blocks for ``phi`` and its gradient.

    Returns ``inv_a = 1/(cosh s + cos u_minus)``, ``inv_b = 1/(cosh s + cos u_plus)``
    and ``sinh(s) * inv_b`` with ``s = pi x / h``, ``u_minus/plus = pi (y/h -/+ theta)``.
    Near the vortex ``u_minus`` is close to ``-pi``; it is carried as the offset
    ``delta = u_minus + pi`` so that ``cos(u_minus/2)^2 = sin(delta/2)^2`` keeps full
    relative accuracy.
    """
    s = math.pi * x / h
    delta = math.pi * (y + (1.0 - theta) * h) / h
    u_plus = math.pi * (y / h + theta)
    abs_s = np.abs(s)
    near = abs_s <= _SECH_SWITCH
    s_near = np.where(near, s, 0.0)
    sh2 = np.sinh(s_near / 2.0) ** 2
    e = np.exp(-np.where(near, _SECH_SWITCH, abs_s))
    q = 2.0 * e / (1.0 + e * e)
    with np.errstate(divide="ignore"):
        inv_a = np.where(
            near,
            1.0 / (2.0 * (sh2 + np.sin(delta / 2.0) ** 2)),
            q / (1.0 - q * np.cos(delta)),
        )
        d_b = 2.0 * (sh2 + np.cos(u_plus / 2.0) ** 2)
        inv_b = np.where(near, 1.0 / d_b, q / (1.0 + q * np.cos(u_plus)))
        sinh_inv_b = np.where(
            near,
            np.sinh(s_near) / d_b,
            np.tanh(s) / (1.0 + q * np.cos(u_plus)),
        )
    return inv_a, inv_b, sinh_inv_b, delta, u_plus


def _phi_unchecked(h, theta, x, y):
    inv_a, inv_b, _, _, _ = _pieces(h, theta, x, y)
    # (A - B)/D_B with A - B = cos(u_minus) - cos(u_plus) computed exactly.
    ratio = 2.0 * np.sin(math.pi * y / h) * math.sin(math.pi * theta) * inv_b
    with np.errstate(divide="ignore", invalid="ignore"):
        val = np.where(ratio > -0.5, np.log1p(np.maximum(ratio, -0.5)), np.log(inv_b / inv_a))
    return val / (4.0 * math.pi)


def _phi_grad_unchecked(h, theta, x, y):
    """Return ``(phi_x, phi_y)`` from the analytic derivative of the closed form."""
    inv_a, inv_b, sinh_inv_b, delta, u_plus = _pieces(h, theta, x, y)
    phi_x = -(1.0 / (2.0 * h)) * np.sin(math.pi * y / h) * math.sin(math.pi * theta) * sinh_inv_b * inv_a
    phi_y = (1.0 / (4.0 * h)) * (np.sin(u_plus) * inv_b + np.sin(delta) * inv_a)
    return phi_x, phi_y


def newtonian_potential(x, y):
    """Fundamental solution ``log(x**2 + y**2) / (4 pi)`` of the plane Laplacian."""
    (x, y), scalar = _as_array(x, y)
    r2 = x * x + y * y
    if np.any(r2 == 0.0):
        raise SingularPointError("Newtonian potential is singular at the origin")
    return _finish(np.log(r2) / (4.0 * math.pi), scalar)


def newtonian_gradperp(x, y) -> Point2:
    """Perpendicular gradient ``(-G_y, G_x) = (-y, x) / (2 pi r**2)``."""
    (x, y), scalar = _as_array(x, y)
    r2 = x * x + y * y
    if np.any(r2 == 0.0):
        raise SingularPointError("Newtonian potential is singular at the origin")
    factor = 1.0 / (2.0 * math.pi * r2)
    return Point2(_finish(-y * factor, scalar), _finish(x * factor, scalar))


def phi(params: PhysicalParams, theta: float, x, y):
    """Stream function of a unit vortex at ``(0, -(1 - theta) h)`` vanishing at ``y = 0, -h``."""
    _check_theta(theta)
    (x, y), scalar = _as_array(x, y)
    _check_point(params.h, theta, x, y)
    return _finish(_phi_unchecked(params.h, theta, x, y), scalar)


def phi_grad(params: PhysicalParams, theta: float, x, y) -> Point2:
    """Ordinary gradient ``(phi_x, phi_y)``."""
    _check_theta(theta)
    (x, y), scalar = _as_array(x, y)
    _check_point(params.h, theta, x, y)
    px, py = _phi_grad_unchecked(params.h, theta, x, y)
    return Point2(_finish(px, scalar), _finish(py, scalar))


def phi_gradperp(params: PhysicalParams, theta: float, x, y) -> Point2:
    """Velocity ``(-phi_y, phi_x)`` induced by the vortex and its images."""
    gx, gy = phi_grad(params, theta, x, y)
    return Point2(-gy, gx)


def phi_y_surface(params: PhysicalParams, theta: float, x):
    """``phi_y(x, 0) = sin(pi theta) / (2 h (cosh(pi x/h) + cos(pi theta)))``."""
    _check_theta(theta)
    (x,), scalar = _as_array(x)
    _, py = _phi_grad_unchecked(params.h, theta, x, np.zeros_like(x))
    return _finish(py, scalar)


def c1(params: PhysicalParams, theta: float) -> float:
    """Leading-order wave speed per unit vortex strength, ``cot(pi theta) / (4 h)``."""
    _check_theta(theta)
    if theta == 0.5:
        return 0.0
    return 1.0 / (4.0 * params.h * math.tan(math.pi * theta))


def phi_regular_gradperp_at_vortex(params: PhysicalParams, theta: float) -> Point2:
    """Self-induced velocity of the vortex: ``(c1, 0)``."""
    return Point2(c1(params, theta), 0.0)


def regular_gradperp(params: PhysicalParams, theta: float, x, y) -> Point2:
    """``grad_perp(phi - Gamma(x, y + (1 - theta) h))`` away from the vortex."""
    u, v = phi_gradperp(params, theta, x, y)
    gu, gv = newtonian_gradperp(x, np.asarray(y) + (1.0 - theta) * params.h)
    return Point2(u - gu, v - gv)


def _check_config(params, config, x, y, need_strengths=True):
    if need_strengths and config.strengths is None:
        raise DomainError("vortex strengths are required")
    for j, t in enumerate(config.thetas):
        _check_point(params.h, t, x, y, index=j)


def phi_gamma(params: PhysicalParams, config: VortexConfig, x, y):
    """Weighted sum of single-vortex stream functions."""
    (x, y), scalar = _as_array(x, y)
    _check_config(params, config, x, y)
    total = np.zeros(np.broadcast(x, y).shape)
    for t, s in zip(config.thetas, config.strengths):
        total = total + s * _phi_unchecked(params.h, t, x, y)
    return _finish(total, scalar)


def phi_gamma_gradperp(params: PhysicalParams, config: VortexConfig, x, y) -> Point2:
    (x, y), scalar = _as_array(x, y)
    _check_config(params, config, x, y)
    u = np.zeros(np.broadcast(x, y).shape)
    v = np.zeros_like(u)
    for t, s in zip(config.thetas, config.strengths):
        px, py = _phi_grad_unchecked(params.h, t, x, y)
        u = u - s * py
        v = v + s * px
    return Point2(_finish(u, scalar), _finish(v, scalar))


def phi_gamma_y_surface(params: PhysicalParams, config: VortexConfig, x):
    """Surface trace of ``d/dy`` of the weighted stream function."""
    if config.strengths is None:
        raise DomainError("vortex strengths are required")
    (x,), scalar = _as_array(x)
    total = np.zeros_like(x)
    zeros = np.zeros_like(x)
    for t, s in zip(config.thetas, config.strengths):
        total = total + s * _phi_grad_unchecked(params.h, t, x, zeros)[1]
    return _finish(total, scalar)


def conformal_map_strip(z, theta: float, h: float):
    """Map of the strip ``R x (-h, 0)`` onto the unit disk sending the vortex to 0."""
    _check_theta(theta)
    arg = np.pi * (np.asarray(z, dtype=complex) + 1j * h) / h
    a, b = np.exp(1j * np.pi * theta), np.exp(-1j * np.pi * theta)
    # divide through by w on the right half so large |x| cannot overflow
    right = arg.real > 0
    w = np.exp(np.where(right, -arg, arg))
    out = np.where(right, (1 - a * w) / (1 - b * w), (w - a) / (w - b))
    return complex(out) if np.ndim(out) == 0 else out
