"""Green's functions built from conformal maps, and numerical checks of them.

If ``f`` maps a domain conformally onto the unit disk (or, for mixed
problems, onto the disk slit along a segment carrying the Neumann part of the
boundary) with ``f(z0) = 0``, then ``phi = log|f| / (2 pi)`` is the Green's
function with pole at ``z0``.  Its regular part ``phi - Gamma(. - z0)`` has
gradient ``conj(f''(z0) / f'(z0)) / (4 pi)`` at the pole.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, NamedTuple, Optional

import numpy as np

from . import cauchy
from . import periodic_deep as pdp
from . import stream_core as sc
from .errors import DomainError, SingularPointError
from .stream_core import Point2


@dataclass(frozen=True)
class ConformalMapSpec:
    """Closed-form map plus samplers used by :func:`verify_green`.

    ``radius`` is the circle used for derivatives at ``z0`` and must stay
    clear of the singularities of ``f``.  ``inside`` tells whether a point
    is interior.  Sample arrays are complex.
    """

    name: str
    map: Callable
    z0: complex
    radius: float
    scale: float
    inside: Callable
    interior: np.ndarray = field(repr=False)
    dirichlet: np.ndarray = field(repr=False)
    neumann: Optional[np.ndarray] = field(default=None, repr=False)
    neumann_normals: Optional[np.ndarray] = field(default=None, repr=False)  # inward unit normals
    circle_centers: Optional[np.ndarray] = field(default=None, repr=False)


class RegularGradient(NamedTuple):
    grad: Point2
    gradperp: Point2


def green_value(spec: ConformalMapSpec, z):
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z - spec.z0) < sc.R_MIN_FACTOR * spec.scale):
        raise SingularPointError(f"evaluation at the pole z0 = {spec.z0!r}")
    out = np.log(np.abs(spec.map(z))) / (2.0 * math.pi)
    return float(out) if out.ndim == 0 else out


def regular_part(spec: ConformalMapSpec, z):
    """``phi - log|z - z0| / (2 pi)``; at ``z0`` itself the limit ``log|f'(z0)| / (2 pi)``."""
    z = np.asarray(z, dtype=complex)
    at_pole = np.abs(z - spec.z0) < sc.R_MIN_FACTOR * spec.scale
    safe = np.where(at_pole, spec.z0 + spec.radius, z)
    val = (np.log(np.abs(spec.map(safe))) - np.log(np.abs(safe - spec.z0))) / (2.0 * math.pi)
    if np.any(at_pole):
        (d1,) = cauchy.derivatives(spec.map, spec.z0, spec.radius, (1,))
        val = np.where(at_pole, math.log(abs(d1)) / (2.0 * math.pi), val)
    return float(val) if val.ndim == 0 else val


def map_derivatives(spec: ConformalMapSpec, n: int = 64):
    return cauchy.derivatives(spec.map, spec.z0, spec.radius, (1, 2), n)


def regularized_gradient(spec: ConformalMapSpec, n: int = 64) -> RegularGradient:
    """Gradient (and its rotation) of the regular part at the pole."""
    d1, d2 = map_derivatives(spec, n)
    w = (d2 / d1).conjugate() / (4.0 * math.pi)
    perp = 1j * w
    return RegularGradient(Point2(w.real, w.imag), Point2(perp.real, perp.imag))


def _laplacian_residual(spec, step):
    z = spec.interior
    # keep stencils inside the domain and away from the pole
    ok = np.abs(z - spec.z0) > 3 * step
    for dz in (step, -step, 1j * step, -1j * step):
        ok &= spec.inside(z + 2 * dz)
    z = z[ok]

    def five_point(s):
        return (regular_part(spec, z + s) + regular_part(spec, z - s) + regular_part(spec, z + 1j * s)
                + regular_part(spec, z - 1j * s) - 4.0 * regular_part(spec, z)) / s**2

    # Richardson over step and step/2 removes the O(step^2) term
    lap = (4.0 * five_point(step / 2) - five_point(step)) / 3.0
    return float(np.max(np.abs(lap))) if lap.size else 0.0


def _mean_value_residual(spec, radii, n_circle=256):
    centers = [spec.z0] if spec.circle_centers is None else list(spec.circle_centers)
    worst = 0.0
    t = 2.0 * np.pi * np.arange(n_circle) / n_circle
    for c in centers:
        for r in radii:
            ring = c + r * np.exp(1j * t)
            if not np.all(spec.inside(ring)):
                raise DomainError(f"test circle |z - {c}| = {r} leaves the domain of {spec.name}")
            avg = float(np.mean(regular_part(spec, ring)))
            worst = max(worst, abs(avg - regular_part(spec, c)))
    return worst


def _neumann_residual(spec, step):
    if spec.neumann is None:
        return None
    z, nrm = spec.neumann, spec.neumann_normals
    d = (-3.0 * green_value(spec, z) + 4.0 * green_value(spec, z + step * nrm) - green_value(spec, z + 2 * step * nrm))
    return float(np.max(np.abs(d / (2.0 * step))))


DEFAULT_TOLERANCES = {"boundary": 1e-10, "laplacian": 1e-4, "mean_value": 1e-8, "neumann": 1e-6}


def verify_green(spec: ConformalMapSpec, tolerances: Optional[Dict[str, float]] = None) -> dict:
    """Boundary values, harmonicity and mean-value property of the regular part, Neumann condition."""
    tol = dict(DEFAULT_TOLERANCES, **(tolerances or {}))
    report = {
        "map": spec.name,
        "boundary": float(np.max(np.abs(green_value(spec, spec.dirichlet)))),
        "laplacian": _laplacian_residual(spec, 1e-2 * spec.scale),
        # local scale: distance from the pole to the nearest singularity of f, about 2 * radius
        "mean_value": _mean_value_residual(spec, (0.2 * spec.radius, 0.4 * spec.radius)),
        "neumann": _neumann_residual(spec, 1e-4 * spec.scale),
    }
    report["passed"] = {k: (report[k] is None or report[k] < tol[k]) for k in DEFAULT_TOLERANCES}
    report["ok"] = all(report["passed"].values())
    return report


# registered maps ----------------------------------------------------------------------

def strip_map_spec(theta: float = 0.3, h: float = 1.0) -> ConformalMapSpec:
    sc._check_theta(theta)
    xs = np.linspace(-3 * h, 3 * h, 121)
    ys = np.linspace(-0.95 * h, -0.05 * h, 37)
    grid = (xs[None, :] + 1j * ys[:, None]).ravel()
    bnd = np.concatenate([xs + 0j, xs - 1j * h])
    z0 = -1j * (1 - theta) * h
    return ConformalMapSpec(
        name="strip",
        map=lambda z: sc.conformal_map_strip(z, theta, h),
        z0=z0,
        radius=0.5 * min(theta, 1 - theta) * h,
        scale=h,
        inside=lambda z: (np.imag(z) > -h) & (np.imag(z) < 0),
        interior=grid,
        dirichlet=bnd,
        circle_centers=np.array([z0, z0 + 0.5 * h, z0 - 1.0 * h]),
    )


def halfstrip_map_spec(L: float = 1.0) -> ConformalMapSpec:
    pp = pdp.PeriodicParams(L)
    xs = np.linspace(-math.pi * L, math.pi * L, 81)
    ys = np.linspace(-3.0, 0.95, 80)
    grid = (xs[1:-1][None, :] + 1j * ys[:, None]).ravel()
    neumann = np.concatenate([-math.pi * L + 1j * ys, math.pi * L + 1j * ys])
    normals = np.concatenate([np.ones(ys.size), -np.ones(ys.size)]).astype(complex)
    r = 0.5 * min(1.0, math.pi * L)
    return ConformalMapSpec(
        name="halfstrip",
        map=lambda z: pdp.conformal_map_halfstrip(pp, z),
        z0=0j,
        radius=r,
        scale=min(1.0, L),
        inside=lambda z: (np.abs(np.real(z)) < math.pi * L) & (np.imag(z) < 1.0),
        interior=grid,
        dirichlet=xs + 1j,
        neumann=neumann,
        neumann_normals=normals,
        circle_centers=np.array([0j, 0.5 * r - 1.0j]),
    )


def disk_map_spec(b: complex = 0j) -> ConformalMapSpec:
    """Unit disk with pole at ``b``; the identity map when ``b = 0``."""
    if abs(b) >= 1:
        raise DomainError("pole must lie inside the unit disk")
    bc = np.conj(b)
    t = np.linspace(0, 2 * np.pi, 200, endpoint=False)
    rr = np.linspace(0.05, 0.9, 18)
    grid = (rr[:, None] * np.exp(1j * t[None, ::4])).ravel()
    if b == 0:
        f = lambda z: np.asarray(z, dtype=complex)  # noqa: E731
    else:
        f = lambda z: (np.asarray(z, dtype=complex) - b) / (1 - bc * np.asarray(z, dtype=complex))  # noqa: E731
    radius = 0.5 * (1 - abs(b))
    return ConformalMapSpec(
        name="disk" if b == 0 else "disk_mobius",
        map=f,
        z0=complex(b),
        radius=radius,
        scale=1.0,
        inside=lambda z: np.abs(z) < 1.0,
        interior=grid,
        dirichlet=np.exp(1j * t),
        circle_centers=np.array([complex(b), 0.3j]) if b != 0 else None,
    )


def registered_maps() -> Dict[str, ConformalMapSpec]:
    return {
        "strip": strip_map_spec(),
        "halfstrip": halfstrip_map_spec(),
        "disk": disk_map_spec(),
        "disk_mobius": disk_map_spec(0.3 + 0.2j),
    }
