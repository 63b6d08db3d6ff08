"""Interaction matrix for several vortices on one vertical line.

Row ``i`` of ``Theta @ gamma`` is the horizontal velocity induced at vortex
``i`` by every vortex (its own image system included) when the strengths are
``gamma``.  Traveling waves bifurcate with leading-order strengths
``Theta^{-1} 1`` whenever the matrix is invertible.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import optimize

from .errors import BracketError, DomainError, SingularMatrixError
from .stream_core import VortexConfig

#: Relative determinant threshold used by :func:`is_invertible`.
SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class ThetaMatrix:
    thetas: tuple
    h: float
    entries: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.thetas)

    @property
    def scale(self) -> float:
        """Largest absolute row sum, used to make singularity tests scale-free."""
        return float(np.max(np.sum(np.abs(self.entries), axis=1)))


def _cot(x):
    return np.cos(x) / np.sin(x)


def _validate_thetas(thetas):
    thetas = tuple(float(t) for t in thetas)
    for i, t in enumerate(thetas):
        if not (0.0 < t < 1.0):
            raise DomainError(f"thetas[{i}] = {t!r} is not in (0, 1)")
    if len(set(thetas)) != len(thetas):
        raise DomainError("thetas must be pairwise distinct")
    return thetas


def theta_entries(thetas: Sequence[float], h: float) -> np.ndarray:
    t = np.asarray(thetas, dtype=float)
    ti, tj = np.meshgrid(t, t, indexing="ij")
    off = np.eye(len(t), dtype=bool)
    with np.errstate(divide="ignore", invalid="ignore"):
        mat = _cot(np.pi * (ti + tj) / 2) - _cot(np.pi * (ti - tj) / 2)
    mat[off] = _cot(np.pi * t)
    # exact zero on the diagonal at theta = 1/2
    mat[off & (ti == 0.5)] = 0.0
    return mat / (4.0 * h)


def build_theta(config, h: float) -> ThetaMatrix:
    """Build the matrix for a :class:`VortexConfig` or any sequence of distinct heights.

    Plain sequences are accepted so that reflected configurations
    (``theta -> 1 - theta`` without reordering) can be formed directly.
    """
    if not h > 0:
        raise DomainError(f"h must be positive, got {h!r}")
    thetas = config.thetas if isinstance(config, VortexConfig) else _validate_thetas(config)
    return ThetaMatrix(tuple(thetas), float(h), theta_entries(thetas, h))


def det_theta(theta: ThetaMatrix) -> float:
    """Determinant via LU factorisation with partial pivoting (LAPACK ``getrf``)."""
    return float(np.linalg.det(theta.entries))


def relative_det(theta: ThetaMatrix) -> float:
    """``|det| / scale**n``; zero for the zero matrix."""
    scale = theta.scale
    if scale == 0.0:
        return 0.0
    return abs(det_theta(theta)) / scale ** theta.n


def is_invertible(theta: ThetaMatrix, tol: float = SINGULAR_TOL) -> bool:
    return relative_det(theta) > tol


def gamma1(theta: ThetaMatrix, tol: float = SINGULAR_TOL) -> np.ndarray:
    """Leading-order strengths solving ``Theta gamma = 1``."""
    return solve_theta(theta, np.ones(theta.n), tol=tol)


def solve_theta(theta: ThetaMatrix, rhs, tol: float = SINGULAR_TOL) -> np.ndarray:
    if not is_invertible(theta, tol):
        raise SingularMatrixError(
            f"Theta is singular for thetas={theta.thetas}: |det|/scale^n = {relative_det(theta):.3e}"
        )
    rhs = np.asarray(rhs, dtype=float)
    sol = np.linalg.solve(theta.entries, rhs)
    # one step of iterative refinement keeps the residual at round-off level
    sol = sol + np.linalg.solve(theta.entries, rhs - theta.entries @ sol)
    return sol


def two_vortex_det(theta1: float, theta2: float, h: float) -> float:
    """Closed-form determinant for two vortices, ``1 > theta1 > theta2 > 0``."""
    if not (1.0 > theta1 > theta2 > 0.0):
        raise DomainError(f"need 1 > theta1 > theta2 > 0, got ({theta1!r}, {theta2!r})")
    a, b = math.pi * theta1, math.pi * theta2
    cross = math.cos(a) * math.cos(b) / (math.sin(a) * math.sin(b))
    # cos(b) - cos(a) = 2 sin((a+b)/2) sin((a-b)/2), cancellation-free
    gap = 2.0 * math.sin((a + b) / 2) * math.sin((a - b) / 2)
    return (cross + 4.0 * math.sin(a) * math.sin(b) / gap**2) / (16.0 * h * h)


def _f_param(t):
    c2 = (math.cos(t) / math.sin(t)) ** 2
    inner = math.sqrt(max(4.0 - 3.0 * c2 * c2, 0.0))
    return math.atan(1.0 / math.sqrt(0.5 * (c2 + inner)))


def zero_curve_point(t: float):
    """Point ``(theta1, theta2)`` on the singular curve for parameter ``t`` in ``(pi/4, 3 pi/4)``."""
    f = _f_param(t)
    return (t + f) / math.pi, (t - f) / math.pi


def theta2_hat(theta1: float, xtol: float = 1e-15) -> float:
    """Lower height that makes a two-vortex matrix singular, from the explicit parametrisation.

    The parametrisation gives ``theta1`` as an increasing function of ``t``; it
    is inverted by bisection.
    """
    if not (0.5 < theta1 < 1.0):
        raise DomainError(f"theta1 must lie in (1/2, 1), got {theta1!r}")
    lo, hi = math.pi / 4, 3 * math.pi / 4
    t = optimize.bisect(lambda s: zero_curve_point(s)[0] - theta1, lo, hi, xtol=xtol, maxiter=200)
    return zero_curve_point(t)[1]


def theta2_hat_numeric(theta1: float, tol: float = 1e-15, h: float = 1.0) -> float:
    """Same quantity as :func:`theta2_hat` by a bracketed root of the determinant."""
    if not (0.5 < theta1 < 1.0):
        raise DomainError(f"theta1 must lie in (1/2, 1), got {theta1!r}")
    lo, hi = 1e-6, theta1 - 1e-6
    f_lo, f_hi = two_vortex_det(theta1, lo, h), two_vortex_det(theta1, hi, h)
    if not (f_lo < 0.0 < f_hi):
        raise BracketError("determinant does not change sign on (0, theta1)", samples=(f_lo, f_hi))
    return optimize.brentq(lambda t2: two_vortex_det(theta1, t2, h), lo, hi, xtol=tol, rtol=1e-15)


def limit_matrix_B(tilde_thetas: Sequence[float], *, first_reflected: bool = False) -> np.ndarray:
    """Skew-symmetric limit matrix of ``4h diag(tan(pi theta)) Theta`` as the vortices sink to the bed.

    With ``first_reflected`` the top vortex approaches the surface instead,
    which zeroes its row and column.
    """
    t = np.asarray(tilde_thetas, dtype=float)
    if not (np.all(t > 0) and np.all(t < 0.5) and np.all(np.diff(t) < 0)):
        raise DomainError("need 1/2 > tilde_thetas[0] > ... > tilde_thetas[-1] > 0")
    ti, tj = np.meshgrid(t, t, indexing="ij")
    with np.errstate(divide="ignore", invalid="ignore"):
        b = 4.0 * (ti * tj) / (ti * ti - tj * tj)
    np.fill_diagonal(b, 0.0)
    if first_reflected:
        b[0, :] = 0.0
        b[:, 0] = 0.0
    return b


def scaled_theta_limit_check(tilde_thetas, eps_list, h: float = 1.0, *, first_reflected=False):
    """Deviation ``||4h diag(tan(pi theta)) Theta - (I - B)||_inf`` for each ``eps``."""
    t = np.asarray(tilde_thetas, dtype=float)
    target = np.eye(len(t)) - limit_matrix_B(t, first_reflected=first_reflected)
    report = []
    for eps in eps_list:
        thetas = eps * t
        if first_reflected:
            thetas = thetas.copy()
            thetas[0] = 1.0 - eps * t[0]
        mat = theta_entries(thetas, h)
        scaled = 4.0 * h * np.tan(np.pi * thetas)[:, None] * mat
        report.append({"eps": float(eps), "deviation": float(np.max(np.sum(np.abs(scaled - target), axis=1)))})
    return report


def default_tilde_thetas(n: int) -> np.ndarray:
    """Evenly spaced reference heights ``0.4 (n - k) / n`` for ``k = 0..n-1``."""
    return 0.4 * (n - np.arange(n)) / n


def find_singular_configuration(n: int, tol: float = 1e-10, eps: float = 0.05, h: float = 1.0,
                                tilde_thetas=None) -> VortexConfig:
    """Locate a configuration with ``|det Theta| / scale^n < tol``.

    Walks the segment between the all-near-bed family (positive determinant)
    and the same family with the top vortex moved near the surface (negative
    determinant), then bisects on the sign change.  Only the top height moves,
    so every point of the path is an admissible ordering.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    if n == 1:
        return VortexConfig((0.5,))
    t = default_tilde_thetas(n) if tilde_thetas is None else np.asarray(tilde_thetas, dtype=float)
    start = eps * t
    end = start.copy()
    end[0] = 1.0 - eps * t[0]

    def config_at(s):
        thetas = start.copy()
        thetas[0] = (1.0 - s) * start[0] + s * end[0]
        return thetas

    def signed(s):
        mat = build_theta(config_at(s), h)
        return det_theta(mat) / mat.scale ** n

    d0, d1 = signed(0.0), signed(1.0)
    if not (d0 > 0.0 > d1):
        samples = [(float(s), signed(s)) for s in np.linspace(0.0, 1.0, 11)]
        raise BracketError("no determinant sign change along the continuation path", samples=samples)
    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        dm = signed(mid)
        if abs(dm) < tol:
            lo = hi = mid
            break
        if dm > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-16:
            break
    s = 0.5 * (lo + hi)
    config = VortexConfig(tuple(config_at(s)))
    if relative_det(build_theta(config, h)) >= tol:
        raise BracketError(
            f"bisection stalled at |det|/scale^n = {relative_det(build_theta(config, h)):.3e}",
            samples=[(s, signed(s))],
        )
    return config
