"""Third-order expansion coefficients and truncated expansions.

For one vortex of strength ``eps`` the solution branch reads

    eta = eta2 eps^2,  zeta = zeta3 eps^3,  c = c1 eps + c3 eps^3

up to ``O(eps^4)``.  For several vortices the wave speed ``eps`` is the
parameter and the strengths are ``gamma1 eps + gamma3 eps^3``.

``c3`` and ``gamma3`` need the vertical derivative of the harmonic extension
of ``zeta3`` into the flat strip (surface data ``zeta3``, zero on the bed).
It is evaluated spectrally: a cosine transform of ``zeta3`` followed by the
separated-variables multiplier ``xi cosh(xi theta h) / sinh(xi h)``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np
from scipy import integrate
from scipy.interpolate import CubicSpline

from . import stream_core as sc
from . import surface_profile as sp
from .errors import DecayError, DomainError, QuadratureError
from .stream_core import PhysicalParams
from .surface_profile import Profile, ProfileSpec
from .theta_matrix import build_theta, det_theta, solve_theta

EPS_MAX = 0.1
DECAY_REL = 1e-12
#: The xi integral stops where the multiplier has fallen by exp(-XI_CUTOFF).
XI_CUTOFF = 40.0
DEFAULT_POINTS_PER_H = 200


def _h_of(params):
    return params.h if isinstance(params, PhysicalParams) else float(params)


def surface_velocity(spec: ProfileSpec, x):
    """``c1 + phi_y(x, 0)`` (one vortex) or ``1 + phi^gamma1_y(x, 0)`` (several)."""
    if spec.is_multi:
        return 1.0 + np.asarray(sc.phi_gamma_y_surface(spec.params, spec.weighted_config, x))
    return sc.c1(spec.params, spec.theta) + np.asarray(sc.phi_y_surface(spec.params, spec.theta, x))


def zeta3(spec: ProfileSpec, x):
    scalar = np.ndim(x) == 0
    out = -np.asarray(sp.eta2(spec, x)) * surface_velocity(spec, x)
    return float(out) if scalar else out


def decay_length(spec: ProfileSpec, rel: float = 1e-13) -> float:
    """Half-width beyond which ``|eta2|`` is below ``rel * |eta2(0)|``."""
    slow = math.pi / spec.h * min(1.0, spec.m)
    # the m = 1 case carries an extra linear factor; a 20% margin covers it
    return 1.2 * math.log(1.0 / rel) / slow + 2.0 * spec.h


def zeta3_profile(spec: ProfileSpec, x_max: Optional[float] = None, n_points: Optional[int] = None) -> Profile:
    x_max = decay_length(spec) if x_max is None else x_max
    if n_points is None:
        n_points = 2 * int(DEFAULT_POINTS_PER_H * x_max / spec.h) + 1
    return Profile.sample(lambda xs: zeta3(spec, xs), x_max, n_points)


def _cosine_transform_factory(zeta, x_max):
    """Return ``xi -> 2 int_0^x_max zeta(x) cos(xi x) dx``."""
    if isinstance(zeta, Profile):
        half = zeta.xs >= 0
        xs, vals = zeta.xs[half], zeta.values[half]
        if xs[0] != 0.0:
            xs, vals = np.concatenate([[0.0], xs]), np.concatenate([[np.interp(0.0, zeta.xs, zeta.values)], vals])
        f = CubicSpline(xs, vals, bc_type=((1, 0.0), "not-a-knot"))
        upper = float(xs[-1])
    else:
        f, upper = zeta, x_max

    def transform(xi):
        # tiny transforms at large xi trip scipy's roundoff detector; the
        # outer integral's own error estimate is what gets checked
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            return _transform(xi)

    def _transform(xi):
        if xi == 0.0:
            val, err = integrate.quad(f, 0.0, upper, epsabs=1e-14, epsrel=1e-12, limit=400)
        else:
            val, err = integrate.quad(f, 0.0, upper, weight="cos", wvar=xi,
                                      epsabs=1e-14, epsrel=1e-12, limit=400)
        return 2.0 * val

    return transform, f, upper


def multiplier(xi, h: float, theta: float):
    """``xi cosh(xi theta h) / sinh(xi h)``, stable for all ``xi >= 0`` (limit ``1/h`` at 0)."""
    xi = np.asarray(xi, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        val = xi * np.exp(-xi * h * (1 - theta)) * (1 + np.exp(-2 * xi * theta * h)) / -np.expm1(-2 * xi * h)
    return np.where(xi == 0, 1.0 / h, val)


def flat_strip_extension_dy(zeta: Union[Profile, Callable], params, theta_eval: float,
                            x_max: Optional[float] = None) -> float:
    """Vertical derivative at ``(0, -(1 - theta_eval) h)`` of the flat-strip extension of even ``zeta``.

    ``zeta`` is a sampled :class:`Profile` (interpolated by a clamped cubic
    spline) or a callable together with ``x_max``, the point beyond which it
    is negligible.
    """
    h = _h_of(params)
    if not 0.0 < theta_eval < 1.0:
        raise DomainError(f"theta_eval must lie in (0, 1), got {theta_eval!r}")
    if isinstance(zeta, Profile):
        scale = float(np.max(np.abs(zeta.values)))
        if scale == 0.0:
            return 0.0
        edge = max(abs(zeta.values[0]), abs(zeta.values[-1]))
        if edge > DECAY_REL * scale:
            raise DecayError(f"profile edge value {edge:.3e} exceeds {DECAY_REL:g} x max {scale:.3e}")
    elif x_max is None:
        raise DomainError("a callable zeta needs x_max")
    transform, _, _ = _cosine_transform_factory(zeta, x_max)
    xi_max = XI_CUTOFF / (h * (1.0 - theta_eval))
    val, err = integrate.quad(lambda xi: float(multiplier(xi, h, theta_eval)) * transform(xi),
                              0.0, xi_max, epsabs=1e-12, epsrel=1e-10, limit=400)
    if not math.isfinite(val) or err > 1e-8 * max(1.0, abs(val)):
        raise QuadratureError(f"extension integral error estimate {err:.2e}", estimate=err)
    return val / math.pi


def c3(spec: ProfileSpec, profile: Optional[Profile] = None) -> float:
    """Third-order speed coefficient (one vortex)."""
    if spec.is_multi:
        raise DomainError("c3 is defined for the single-vortex normalisation; use gamma3")
    z = zeta3_profile(spec) if profile is None else profile
    return -flat_strip_extension_dy(z, spec.params, spec.theta)


def gamma3(spec: ProfileSpec, profile: Optional[Profile] = None):
    """Third-order strengths ``Theta^{-1} r`` with ``r_i`` the extension derivative at vortex ``i``."""
    if not spec.is_multi:
        spec = ProfileSpec(spec.params, spec.config, spec.m_integer_tol, multi=True)
    z = zeta3_profile(spec) if profile is None else profile
    rhs = np.array([flat_strip_extension_dy(z, spec.params, t) for t in spec.config.thetas])
    theta = build_theta(spec.config, spec.h)
    return solve_theta(theta, rhs), rhs


@dataclass(frozen=True)
class ExpansionCoeffs:
    spec: ProfileSpec
    eta2: Profile
    zeta3: Profile
    c1: Optional[float] = None
    c3: Optional[float] = None
    gamma1: Optional[np.ndarray] = field(default=None, repr=False)
    gamma3: Optional[np.ndarray] = field(default=None, repr=False)
    det_theta: Optional[float] = None


def compute_coeffs(spec: ProfileSpec, x_max: Optional[float] = None, n_points: Optional[int] = None) -> ExpansionCoeffs:
    z = zeta3_profile(spec, x_max, n_points)
    e = Profile(z.xs, sp.eta2(spec, z.xs))
    if spec.is_multi:
        g3, _ = gamma3(spec, z)
        return ExpansionCoeffs(spec, e, z, gamma1=np.asarray(spec.strengths), gamma3=g3,
                               det_theta=det_theta(build_theta(spec.config, spec.h)))
    return ExpansionCoeffs(spec, e, z, c1=sc.c1(spec.params, spec.theta), c3=c3(spec, z))


@dataclass(frozen=True)
class Expansion:
    eps: float
    eta: Profile
    zeta: Profile
    c: float
    gamma: Optional[np.ndarray] = None


def expansion_eval(coeffs: ExpansionCoeffs, eps: float, eps_max: float = EPS_MAX) -> Expansion:
    """Truncated expansions at amplitude ``eps``; checks that the surface stays below the top vortex."""
    if abs(eps) > eps_max:
        warnings.warn(f"|eps| = {abs(eps)} exceeds eps_max = {eps_max}", RuntimeWarning, stacklevel=2)
    spec = coeffs.spec
    eta = coeffs.eta2 * (eps * eps)
    zeta = coeffs.zeta3 * eps**3
    clearance = (1.0 - spec.config.thetas[0]) * spec.h
    if float(np.max(eta.values)) >= clearance:
        raise DomainError(f"surface elevation {float(np.max(eta.values))!r} reaches the top vortex level {clearance!r}")
    if spec.is_multi:
        return Expansion(eps, eta, zeta, c=eps, gamma=coeffs.gamma1 * eps + coeffs.gamma3 * eps**3)
    return Expansion(eps, eta, zeta, c=coeffs.c1 * eps + coeffs.c3 * eps**3)


def fourth_order_second_derivative(f, x, step):
    x = np.asarray(x, dtype=float)
    return (-f(x + 2 * step) + 16 * f(x + step) - 30 * f(x) + 16 * f(x - step) - f(x - 2 * step)) / (12 * step**2)


def consistency_residuals(spec: ProfileSpec, xs=None, step: float = 0.01) -> dict:
    """Order-by-order residuals of the truncated expansion.

    ``kinematic1``: the surface trace of the stream function (identically 0).
    ``bernoulli2``: ``g eta2 - alpha2 eta2'' + chi`` with a five-point stencil.
    ``kinematic3``: ``c1 eta2 + zeta3 + phi_y eta2`` (speed 1 for several vortices).
    """
    xs = np.array([0.0, 0.25, 0.5, 1.0, 2.0, 4.0]) * spec.h if xs is None else np.asarray(xs, dtype=float)
    if spec.is_multi:
        trace = np.asarray(sc.phi_gamma(spec.params, spec.weighted_config, xs, 0.0 * xs))
    else:
        trace = np.asarray(sc.phi(spec.params, spec.theta, xs, 0.0 * xs))
    e2 = lambda x: np.asarray(sp.eta2(spec, x))  # noqa: E731
    p = spec.params
    bern = p.g * e2(xs) - p.alpha2 * fourth_order_second_derivative(e2, xs, step) + sp.chi(spec, xs)
    kin3 = e2(xs) * surface_velocity(spec, xs) + zeta3(spec, xs)
    return {
        "kinematic1": float(np.max(np.abs(trace))),
        "bernoulli2": float(np.max(np.abs(bern))),
        "kinematic3": float(np.max(np.abs(kin3))),
    }
