"""Invariant suite run by ``vortexwaves verify``.

Each check returns a measured value and the threshold it must stay below;
the suite is deterministic and takes well under a minute.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Dict, List

import numpy as np

from . import bifurcation as bf
from . import greens
from . import periodic_deep as pdp
from . import stream_core as sc
from . import streamlines as sl
from . import surface_profile as sp
from . import theta_matrix as tm
from .fd_laplace import fd_extension_dy
from .stream_core import PhysicalParams, VortexConfig


@dataclass(frozen=True)
class Check:
    name: str
    module: str
    func: Callable[[], float]
    threshold: float
    #: "below": value < threshold passes; "above": value > threshold passes
    sense: str = "below"


def _unit():
    return PhysicalParams(1.0, 1.0, 1.0)


# stream_core ------------------------------------------------------------------

def boundary_traces():
    xs = np.concatenate([[0.0], np.logspace(-3, np.log10(20.0), 60)])
    out = 0.0
    for theta in (0.1, 0.5, 0.9):
        out = max(out, np.max(np.abs(sc.phi(_unit(), theta, xs, 0 * xs))),
                  np.max(np.abs(sc.phi(_unit(), theta, xs, 0 * xs - 1.0))))
    return float(out)


def symmetry_residual():
    P, theta = _unit(), 0.3
    xs = np.linspace(0.1, 3, 15)
    ys = np.linspace(-0.95, -0.05, 19)
    X, Y = np.meshgrid(xs, ys)
    even = np.max(np.abs(sc.phi(P, theta, X, Y) - sc.phi(P, theta, -X, Y)))
    # odd reflection through the surface, inside the window below the mirror vortex
    yy = np.linspace(0.05, 0.6, 12)
    X2, Y2 = np.meshgrid(xs, yy)
    odd = np.max(np.abs(sc.phi(P, theta, X2, -Y2) + sc.phi(P, theta, X2, Y2)))
    return float(max(even, odd))


def far_field_rate_error():
    P, theta = _unit(), 0.3
    xs = np.array([4.0, 8.0])
    vals = np.abs(sc.phi(P, theta, xs, -0.5))
    rate = np.log(vals[1] / vals[0]) / (xs[1] - xs[0])
    return float(abs(rate / (-math.pi) - 1.0))


def regular_part_laplacian_order():
    P, theta = _unit(), 0.3
    yv = -(1 - theta)
    pts = [(0.05, yv + 0.03), (-0.04, yv - 0.02), (0.1, yv)]

    def lap(step):
        worst = 0.0
        for x, y in pts:
            def reg(a, b):
                return sc.phi(P, theta, a, b) - sc.newtonian_potential(a, b - yv)
            val = (reg(x + step, y) + reg(x - step, y) + reg(x, y + step) + reg(x, y - step) - 4 * reg(x, y)) / step**2
            worst = max(worst, abs(val))
        return worst

    e1, e2 = lap(4e-3), lap(2e-3)
    return float(abs(math.log2(e1 / e2) - 2.0))


def c1_consistency():
    worst = 0.0
    for theta in (0.1, 0.3, 0.5, 0.8):
        P = PhysicalParams(1.0, 1.0, 2.0)
        g = greens.regularized_gradient(greens.strip_map_spec(theta, P.h))
        worst = max(worst, abs(g.gradperp.x - sc.c1(P, theta)), abs(g.gradperp.y))
    return worst


# theta_matrix --------------------------------------------------------------------

def two_vortex_positive_triangle():
    worst = math.inf
    for t1 in np.linspace(0.02, 0.5, 25):
        for t2 in np.linspace(0.0, t1, 52)[1:-1]:
            worst = min(worst, tm.two_vortex_det(t1, t2, 1.0))
    return float(worst)


def reflection_antisymmetry():
    worst = 0.0
    for thetas in [(0.8, 0.3), (0.9, 0.6, 0.2), (0.7, 0.5, 0.4, 0.1)]:
        A = tm.build_theta(VortexConfig(thetas), 1.0)
        B = tm.build_theta([1 - t for t in thetas], 1.0)
        worst = max(worst, float(np.max(np.abs(A.entries + B.entries))))
    return worst


def gamma1_residual():
    worst = 0.0
    for thetas in [(0.3,), (0.8, 0.3), (0.9, 0.6, 0.2), (0.45, 0.3, 0.2, 0.1)]:
        T = tm.build_theta(VortexConfig(thetas), 1.0)
        g = tm.gamma1(T)
        worst = max(worst, float(np.max(np.abs(T.entries @ g - 1.0))))
    return worst


def det_monotone_in_theta2():
    worst = math.inf
    for t1 in (0.6, 0.7, 0.8, 0.9):
        vals = [tm.two_vortex_det(t1, t2, 1.0) for t2 in np.linspace(0.01, t1 - 0.01, 200)]
        worst = min(worst, float(np.min(np.diff(vals))))
    return worst


# surface_profile ------------------------------------------------------------------

def three_way_agreement():
    xs = np.linspace(0.05, 10.0, 40)
    worst = 0.0
    for m in (1.0, 2.0):
        for theta in (0.25, 0.75):
            spec = sp.ProfileSpec.single(theta, PhysicalParams.from_m(m))
            s = sp.eta2_series(spec, xs)
            o = sp.eta2_oracle(spec, xs)
            inside = xs <= sp.elementary_x_max(spec)
            e = sp.eta2_elementary(spec, xs[inside])
            worst = max(worst, np.max(np.abs(s - o)), np.max(np.abs(e - s[inside])), np.max(np.abs(e - o[inside])))
    return float(worst)


def monotone_profile_min_step():
    xs = np.linspace(0.0, 10.0, 201)
    worst = math.inf
    for theta in (0.25, 0.5):
        spec = sp.ProfileSpec.single(theta, PhysicalParams.from_m(1.0))
        vals = sp.eta2_grid(spec, xs)
        worst = min(worst, float(np.min(np.diff(vals))))
    return worst


def ode_residual_single_and_multi():
    P = PhysicalParams.from_m(1.0)
    worst = 0.0
    for spec in (sp.ProfileSpec.single(0.3, P), sp.ProfileSpec(P, VortexConfig((0.4, 0.2)))):
        worst = max(worst, bf.consistency_residuals(spec)["bernoulli2"])
    return worst


def antiderivative_chain():
    spec = sp.ProfileSpec.single(0.3, PhysicalParams.from_m(1.0))
    xs = np.array([0.2, 0.7, 1.5, 3.0])
    d = 1e-4
    a = (sp.chi_ad1(spec, xs + d) - sp.chi_ad1(spec, xs - d)) / (2 * d) - sp.chi(spec, xs)
    b = (sp.chi_ad2(spec, xs + d) - sp.chi_ad2(spec, xs - d)) / (2 * d) - sp.chi_ad1(spec, xs)
    return float(max(np.max(np.abs(a)), np.max(np.abs(b))))


def lemma_identity():
    worst = 0.0
    for m in (0.3, 0.5, 1.5, 2.7):
        for theta in (0.2, 0.5, 0.8):
            a = sp.lemma_coefficient(m, theta)
            worst = max(worst, abs(sp.lemma_coefficient_series(m, theta) - a))
            if m < 1:
                worst = max(worst, abs(sp.lemma_coefficient_integral(m, theta) - a))
    return worst


# bifurcation ------------------------------------------------------------------------

DEFAULT_PARAMS = PhysicalParams(g=1.0 / 8.0, alpha2=1.0 / (8.0 * math.pi**2), h=1.0)


def c3_max():
    return max(bf.c3(sp.ProfileSpec.single(t, DEFAULT_PARAMS)) for t in (0.1, 0.2, 0.3, 0.4, 0.5))


TEST_DATA = {
    "gauss": lambda x: np.exp(-x**2),
    "gauss_cos": lambda x: np.exp(-x**2) * np.cos(2 * x),
    "sech2": lambda x: 1.0 / np.cosh(2 * x) ** 2,
}


def extension_vs_fd():
    worst = 0.0
    for (name, f), theta in zip(TEST_DATA.items(), (0.25, 0.5, 0.75)):
        a = bf.flat_strip_extension_dy(f, 1.0, theta, x_max=8.0)
        b = fd_extension_dy(f, 1.0, theta, Lx=8.0, ny=40)
        worst = max(worst, abs(a - b))
    return worst


def extension_linearity():
    f, g = TEST_DATA["gauss"], TEST_DATA["sech2"]
    a, b = 0.7, -1.3
    lhs = bf.flat_strip_extension_dy(lambda x: a * f(x) + b * g(x), 1.0, 0.4, x_max=8.0)
    rhs = a * bf.flat_strip_extension_dy(f, 1.0, 0.4, x_max=8.0) + b * bf.flat_strip_extension_dy(g, 1.0, 0.4, x_max=8.0)
    return abs(lhs - rhs)


def gamma3_residual():
    spec = sp.ProfileSpec(DEFAULT_PARAMS, VortexConfig((0.4, 0.2)))
    g3, rhs = bf.gamma3(spec)
    T = tm.build_theta(spec.config, spec.h)
    return float(np.max(np.abs(T.entries @ g3 - rhs)))


# streamlines ---------------------------------------------------------------------------

def streamline_drift():
    P, theta = _unit(), 1.0 / 3.0
    worst = 0.0
    for p0 in [(0.0, -0.55), (0.3, -0.9), (-3.0, -0.5)]:
        path = sl.integrate_streamline(P, theta, p0, dt=2e-3, max_steps=4000, x_limit=4.0)
        worst = max(worst, sl.stream_drift(P, theta, path))
    return worst


def equilibrium_velocity():
    P = _unit()
    worst = 0.0
    for theta in (0.1, 0.3, 0.7, 0.9):
        for q in sl.equilibria(P, theta):
            worst = max(worst, float(np.hypot(*sl.first_order_velocity(P, theta, q.x, q.y))))
    return worst


def mirror_symmetry():
    P, theta = _unit(), 1.0 / 3.0
    a = sl.integrate_streamline(P, theta, (0.8, -0.5), eps_sign=-1, dt=1e-2, max_steps=300, detect_closed=False)
    b = sl.integrate_streamline(P, theta, (-0.8, -0.5), eps_sign=1, dt=1e-2, max_steps=300, detect_closed=False)
    return float(np.max(np.abs(a.points * [-1, 1] - b.points)))


def deep_limit_gap_shrinks():
    d = 1.0
    gaps = []
    for ratio in (10.0, 100.0):
        P = PhysicalParams(1.0, 1.0, ratio * d)
        gaps.append(abs(sl.equilibrium_x(P, 1 - d / P.h) / (math.sqrt(3) * d) - 1))
    return gaps[1] - gaps[0]


# periodic_deep --------------------------------------------------------------------------

def periodic_mean_and_symmetry():
    pp = pdp.PeriodicParams(1.0, 1.0, 0.01)
    xs = np.linspace(0.1, 3.0, 7)
    mean = abs(pdp.period_mean(lambda x: pdp.eta_star(pp, x), pp))
    even = np.max(np.abs(pdp.eta_star(pp, xs) - pdp.eta_star(pp, -xs)))
    per = np.max(np.abs(pdp.eta_star(pp, xs + pp.period) - pdp.eta_star(pp, xs)))
    return float(max(mean, even, per))


def periodic_ode_residual():
    worst = 0.0
    for L in (1.0, 10.0):
        pp = pdp.PeriodicParams(L, 1.0, 0.01)
        worst = max(worst, pdp.ode_residual(pp, np.linspace(0, math.pi * L, 9)))
    return worst


def periodic_series_vs_dft():
    pp = pdp.PeriodicParams(1.0, 1.0, 0.01)
    xs = np.array([0.0, math.pi / 2, math.pi])
    return float(np.max(np.abs(pdp.eta_star(pp, xs, 200) - pdp.eta_star_oracle(pp, xs, 1024))))


# greens ------------------------------------------------------------------------------------

def greens_all_maps():
    failures = 0
    for spec in greens.registered_maps().values():
        failures += 0 if greens.verify_green(spec)["ok"] else 1
    return float(failures)


def greens_rotation_invariance():
    base = greens.strip_map_spec(0.3, 1.0)
    rot = greens.ConformalMapSpec(**{**base.__dict__, "map": lambda z: np.exp(0.7j) * base.map(z)})
    a, b = greens.regularized_gradient(base), greens.regularized_gradient(rot)
    return float(max(abs(a.grad.x - b.grad.x), abs(a.grad.y - b.grad.y)))


CHECKS: List[Check] = [
    Check("boundary_traces", "stream_core", boundary_traces, 1e-12),
    Check("parity", "stream_core", symmetry_residual, 1e-12),
    Check("far_field_rate", "stream_core", far_field_rate_error, 1e-2),
    Check("regular_part_richardson_slope", "stream_core", regular_part_laplacian_order, 0.3),
    Check("c1_consistency", "stream_core", c1_consistency, 1e-10),
    Check("two_vortex_det_positive", "theta_matrix", two_vortex_positive_triangle, 0.0, "above"),
    Check("reflection_antisymmetry", "theta_matrix", reflection_antisymmetry, 1e-15),
    Check("gamma1_residual", "theta_matrix", gamma1_residual, 1e-10),
    Check("det_monotone_theta2", "theta_matrix", det_monotone_in_theta2, 0.0, "above"),
    Check("three_way_eta2", "surface_profile", three_way_agreement, 1e-8),
    Check("monotone_theta_le_half", "surface_profile", monotone_profile_min_step, 0.0, "above"),
    Check("ode_residual", "surface_profile", ode_residual_single_and_multi, 1e-6),
    Check("antiderivative_chain", "surface_profile", antiderivative_chain, 1e-6),
    Check("lemma_identity", "surface_profile", lemma_identity, 1e-6),
    Check("c3_negative", "bifurcation", c3_max, 0.0),
    Check("extension_vs_fd", "bifurcation", extension_vs_fd, 1e-4),
    Check("extension_linear", "bifurcation", extension_linearity, 1e-10),
    Check("gamma3_residual", "bifurcation", gamma3_residual, 1e-10),
    Check("stream_drift", "streamlines", streamline_drift, 1e-8),
    Check("equilibrium_velocity", "streamlines", equilibrium_velocity, 1e-10),
    Check("mirror_symmetry", "streamlines", mirror_symmetry, 1e-12),
    Check("deep_limit", "streamlines", deep_limit_gap_shrinks, 0.0),
    Check("eta_star_mean_parity", "periodic_deep", periodic_mean_and_symmetry, 1e-10),
    Check("eta_star_ode", "periodic_deep", periodic_ode_residual, 1e-6),
    Check("eta_star_vs_dft", "periodic_deep", periodic_series_vs_dft, 1e-8),
    Check("greens_registered_maps", "greens", greens_all_maps, 0.5),
    Check("greens_rotation", "greens", greens_rotation_invariance, 1e-10),
]


def run_suite(names=None) -> Dict:
    """Run checks (all by default) and return a scoreboard; never raises for a failing check."""
    results = []
    for check in CHECKS:
        if names and check.name not in names:
            continue
        t0 = time.perf_counter()
        try:
            value = float(check.func())
            ok = value < check.threshold if check.sense == "below" else value > check.threshold
            error = None
        except Exception as exc:  # a crash counts as a failure, reported with its type
            value, ok, error = None, False, f"{type(exc).__name__}: {exc}"
        results.append({
            "name": check.name,
            "module": check.module,
            "value": value,
            "threshold": check.threshold,
            "sense": check.sense,
            "passed": ok,
            "error": error,
            "seconds": round(time.perf_counter() - t0, 3),
        })
    return {"passed": all(r["passed"] for r in results), "n_checks": len(results),
            "n_failed": sum(not r["passed"] for r in results), "checks": results}
