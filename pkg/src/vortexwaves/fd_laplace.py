"""Finite-difference reference solver for the flat-strip harmonic extension.

Solves ``Laplace psi = 0`` on ``[-Lx, Lx] x [-h, 0]`` with ``psi = zeta`` on
the surface and ``psi = 0`` on the bed and the lateral walls, then returns
``psi_y`` at ``(0, -(1 - theta) h)``.  Second-order five-point scheme,
Richardson-extrapolated over two grid spacings.  Only suitable for data that
has decayed to round-off at ``|x| = Lx``.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.sparse import diags, identity, kron
from scipy.sparse.linalg import spsolve

from .errors import DomainError


def _solve(zeta, h, theta, Lx, ny):
    d = h / ny
    nx = int(round(2 * Lx / d))
    xs = np.linspace(-Lx, Lx, nx + 1)
    # unknowns at interior nodes: x index 1..nx-1, y index 1..ny-1 (y index 0 is the bed)
    mx, my = nx - 1, ny - 1
    tx = diags([np.ones(mx - 1), -2 * np.ones(mx), np.ones(mx - 1)], [-1, 0, 1])
    ty = diags([np.ones(my - 1), -2 * np.ones(my), np.ones(my - 1)], [-1, 0, 1])
    lap = kron(identity(my), tx) + kron(ty, identity(mx))
    rhs = np.zeros(mx * my)
    top = np.asarray(zeta(xs[1:-1]), dtype=float)
    rhs[(my - 1) * mx:] -= top
    psi = spsolve(lap.tocsc(), rhs).reshape(my, mx)
    j = int(round(theta * ny))  # row of the evaluation point, counted from the bed
    i = nx // 2 - 1
    grid = np.vstack([np.zeros(mx), psi, top])
    return (grid[j + 1, i] - grid[j - 1, i]) / (2 * d)


def fd_extension_dy(zeta, h: float, theta: float, Lx: float = 6.0, ny: int = 40) -> float:
    """Richardson extrapolation of the grid solutions with ``ny`` and ``2 ny`` rows.

    ``theta * ny`` must be an integer so that the evaluation point is a node.
    """
    if abs(theta * ny - round(theta * ny)) > 1e-9 or not 0 < round(theta * ny) < ny:
        raise DomainError(f"theta * ny = {theta * ny!r} must be an integer in (0, ny)")
    if abs(Lx * ny / h - round(Lx * ny / h)) > 1e-9:
        raise DomainError("Lx must be a multiple of the grid spacing")
    coarse = _solve(zeta, h, theta, Lx, ny)
    fine = _solve(zeta, h, theta, Lx, 2 * ny)
    return (4.0 * fine - coarse) / 3.0


def separated_mode_dy(k: float, h: float, theta: float) -> float:
    """``psi_y`` at height ``theta h`` above the bed for surface data ``cos(k x)`` at ``x = 0``."""
    if k == 0:
        return 1.0 / h
    return k * math.cosh(k * theta * h) / math.sinh(k * h)
