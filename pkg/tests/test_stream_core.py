import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from vortexwaves import stream_core as sc
from vortexwaves.errors import DomainError, SingularPointError
from vortexwaves.stream_core import PhysicalParams, VortexConfig

UNIT = PhysicalParams(1.0, 1.0, 1.0)
thetas = st.floats(0.02, 0.98)


def independent_phi(h, theta, x, y, K=4000):
    """Image sum: vortex at -(1-theta)h, images of alternating sign with period 2h.

    Symmetric truncation at |k| <= K leaves an error with an expansion in
    powers of 1/K; two Richardson levels remove the first two terms.
    """
    yv = -(1 - theta) * h

    def partial(K):
        shift = 2 * h * np.arange(-K, K + 1)
        terms = np.log(x * x + (y - yv - shift) ** 2) - np.log(x * x + (y + yv - shift) ** 2)
        return math.fsum(terms) / (4 * math.pi)

    r1 = [2 * partial(2 * k) - partial(k) for k in (K, 2 * K)]
    return (4 * r1[1] - r1[0]) / 3


# Newtonian potential ---------------------------------------------------------------

def test_newtonian_examples():
    assert sc.newtonian_potential(1.0, 0.0) == 0.0
    u, v = sc.newtonian_gradperp(0.0, 1.0)
    assert u == pytest.approx(-1 / (2 * math.pi), abs=1e-15)
    assert v == 0.0
    assert sc.newtonian_potential(0.3, -0.7) == sc.newtonian_potential(-0.3, 0.7)


def test_newtonian_rejects_origin():
    with pytest.raises(SingularPointError):
        sc.newtonian_potential(0.0, 0.0)


# Phi --------------------------------------------------------------------------------

def test_phi_matches_image_sum():
    for theta in (0.2, 0.5, 0.8):
        for x, y in [(0.3, -0.4), (1.2, -0.9), (0.0, -0.1), (2.5, -0.5)]:
            assert sc.phi(UNIT, theta, x, y) == pytest.approx(independent_phi(1.0, theta, x, y), abs=1e-9)


@pytest.mark.parametrize("theta", [0.1, 0.5, 0.9])
def test_boundary_traces(theta):
    xs = np.concatenate([[0.0], np.logspace(-3, np.log10(20.0), 80)])
    assert np.max(np.abs(sc.phi(UNIT, theta, xs, 0 * xs))) < 1e-12
    assert np.max(np.abs(sc.phi(UNIT, theta, xs, 0 * xs - 1.0))) < 1e-12


def test_far_field_beyond_overflow_switch():
    xs = np.array([30.0, 100.0, 400.0])
    vals = sc.phi(UNIT, 0.3, xs, -0.5)
    assert np.all(np.isfinite(vals))
    assert np.all(np.abs(vals) < 1e-12)


@given(theta=thetas, x=st.floats(0.01, 5), y=st.floats(0.01, 0.99))
@settings(max_examples=60, deadline=None)
def test_parity_properties(theta, x, y):
    h = 1.0
    yv = -(1 - theta) * h
    if math.hypot(x, -y - yv) < 1e-3 or y >= (1 - theta) * h:
        return
    assert sc.phi(UNIT, theta, x, -y) == pytest.approx(sc.phi(UNIT, theta, -x, -y), abs=1e-14)
    assert sc.phi(UNIT, theta, x, y) == pytest.approx(-sc.phi(UNIT, theta, x, -y), abs=1e-13)


def test_phi_x_zero_on_axis():
    ys = np.array([-0.9, -0.5, -0.1])
    px, _ = sc.phi_grad(UNIT, 0.3, 0 * ys, ys)
    assert np.max(np.abs(px)) == 0.0


def test_far_field_decay_rate():
    for h in (1.0, 2.5):
        P = PhysicalParams(1.0, 1.0, h)
        xs = np.array([3.0 * h, 7.0 * h])
        v = np.abs(sc.phi(P, 0.3, xs, -0.5 * h))
        rate = math.log(v[1] / v[0]) / (xs[1] - xs[0])
        assert rate == pytest.approx(-math.pi / h, rel=1e-2)


def test_regular_part_harmonic_second_order():
    theta = 0.3
    yv = -(1 - theta)

    def reg(a, b):
        return sc.phi(UNIT, theta, a, b) - sc.newtonian_potential(a, b - yv)

    def lap(s, x=0.05, y=yv + 0.03):
        return (reg(x + s, y) + reg(x - s, y) + reg(x, y + s) + reg(x, y - s) - 4 * reg(x, y)) / s**2

    slope = math.log2(abs(lap(4e-3) / lap(2e-3)))
    assert abs(slope - 2.0) < 0.3


def test_gradient_matches_finite_difference():
    theta, x, y, d = 0.4, 0.7, -0.2, 1e-6
    px, py = sc.phi_grad(UNIT, theta, x, y)
    assert px == pytest.approx((sc.phi(UNIT, theta, x + d, y) - sc.phi(UNIT, theta, x - d, y)) / (2 * d), abs=1e-8)
    assert py == pytest.approx((sc.phi(UNIT, theta, x, y + d) - sc.phi(UNIT, theta, x, y - d)) / (2 * d), abs=1e-8)
    u, v = sc.phi_gradperp(UNIT, theta, x, y)
    assert (u, v) == (-py, px)


def test_phi_rejects_vortex_and_outside():
    with pytest.raises(SingularPointError):
        sc.phi(UNIT, 0.3, 0.0, -0.7)
    with pytest.raises(DomainError):
        sc.phi(UNIT, 0.3, 0.0, -1.5)
    with pytest.raises(DomainError):
        sc.phi(UNIT, 1.0, 0.0, -0.5)


def test_params_validation():
    with pytest.raises(DomainError):
        PhysicalParams(1.0, -1.0, 1.0)
    with pytest.raises(DomainError):
        PhysicalParams(float("nan"), 1.0, 1.0)
    assert PhysicalParams.from_m(2.5, h=2.0, g=3.0).m == pytest.approx(2.5, rel=1e-14)


# c1 and regular gradient -------------------------------------------------------------

def test_c1_examples():
    assert sc.c1(UNIT, 0.5) == 0.0
    assert sc.phi_regular_gradperp_at_vortex(UNIT, 0.5) == (0.0, 0.0)
    assert sc.phi_regular_gradperp_at_vortex(UNIT, 0.25) == pytest.approx((0.25, 0.0), abs=1e-15)


@given(theta=thetas)
def test_c1_reflection(theta):
    assert sc.c1(UNIT, 1 - theta) == pytest.approx(-sc.c1(UNIT, theta), rel=1e-12, abs=1e-14)


def test_c1_deep_limit_bounded():
    scaled = []
    for h in (10.0, 100.0):
        P = PhysicalParams(1.0, 1.0, h)
        scaled.append(abs(sc.c1(P, 1 - 1 / h) + 1 / (4 * math.pi)) * h * h)
    assert max(scaled) < 1.0
    assert scaled[1] == pytest.approx(scaled[0], rel=0.05)


def test_regular_gradperp_limit_at_vortex():
    # averaging over p and its reflection through the vortex cancels the O(r) term
    theta = 0.3
    yv = -(1 - theta)
    target = sc.phi_regular_gradperp_at_vortex(UNIT, theta)
    errs = []
    for r in (1e-2, 1e-3, 3e-5):
        d = r / math.sqrt(2)
        a = sc.regular_gradperp(UNIT, theta, d, yv + d)
        b = sc.regular_gradperp(UNIT, theta, -d, yv - d)
        errs.append(math.hypot((a.x + b.x) / 2 - target.x, (a.y + b.y) / 2 - target.y))
    assert errs[0] > errs[1] > errs[2]
    assert errs[-1] < 1e-8


def test_gradient_accurate_close_to_vortex():
    # regular part must stay smooth even where the singular part dominates
    theta, yv = 0.3, -0.7
    vals = [sc.regular_gradperp(UNIT, theta, r, yv).y for r in (1e-4, 1e-5, 1e-6)]
    slope = (vals[0] - vals[1]) / 9e-5
    assert vals[2] == pytest.approx(vals[1] - slope * 9e-6, abs=1e-10)


# several vortices --------------------------------------------------------------------

def test_phi_gamma_examples():
    x, y = np.array([0.3, 1.0]), np.array([-0.2, -0.8])
    one = VortexConfig((0.4,), (1.0,))
    assert np.array_equal(sc.phi_gamma(UNIT, one, x, y), sc.phi(UNIT, 0.4, x, y))
    zero = VortexConfig((0.6, 0.3), (0.0, 0.0))
    assert np.all(sc.phi_gamma(UNIT, zero, x, y) == 0.0)
    two = VortexConfig((0.6, 0.3), (1.3, -0.4))
    assert np.max(np.abs(sc.phi_gamma(UNIT, two, x, 0 * x))) < 1e-14


def test_phi_gamma_gradperp_is_weighted_sum():
    cfg = VortexConfig((0.6, 0.3), (1.3, -0.4))
    u, v = sc.phi_gamma_gradperp(UNIT, cfg, 0.2, -0.5)
    a = sc.phi_gradperp(UNIT, 0.6, 0.2, -0.5)
    b = sc.phi_gradperp(UNIT, 0.3, 0.2, -0.5)
    assert u == pytest.approx(1.3 * a.x - 0.4 * b.x, abs=1e-15)
    assert v == pytest.approx(1.3 * a.y - 0.4 * b.y, abs=1e-15)


def test_singular_point_reports_index():
    cfg = VortexConfig((0.6, 0.3), (1.0, 1.0))
    with pytest.raises(SingularPointError) as info:
        sc.phi_gamma(UNIT, cfg, 0.0, -0.7)
    assert info.value.index == 1


def test_vortex_config_validation():
    with pytest.raises(DomainError):
        VortexConfig((0.3, 0.6))
    with pytest.raises(DomainError):
        VortexConfig((0.3,), (1.0, 2.0))
    with pytest.raises(DomainError):
        sc.phi_gamma(UNIT, VortexConfig((0.3,)), 0.1, -0.1)


# conformal map ------------------------------------------------------------------------

def test_conformal_map_examples():
    theta, h = 0.3, 2.0
    assert abs(sc.conformal_map_strip(-1j * (1 - theta) * h, theta, h)) < 1e-15
    xs = np.linspace(-30, 30, 121)
    assert np.max(np.abs(np.abs(sc.conformal_map_strip(xs + 0j, theta, h)) - 1)) < 1e-12
    P = PhysicalParams(1.0, 1.0, h)
    X, Y = np.meshgrid(np.linspace(-3, 3, 10), np.linspace(-1.9, -0.1, 10))
    via_map = np.log(np.abs(sc.conformal_map_strip(X + 1j * Y, theta, h))) / (2 * math.pi)
    assert np.max(np.abs(via_map - sc.phi(P, theta, X, Y))) < 1e-12


def test_conformal_map_large_x_finite():
    z = np.array([800.0 - 0.5j, -800.0 - 0.5j])
    assert np.all(np.isfinite(sc.conformal_map_strip(z, 0.3, 1.0)))
