import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from vortexwaves import bifurcation as bf
from vortexwaves import stream_core as sc
from vortexwaves import surface_profile as sp
from vortexwaves import theta_matrix as tm
from vortexwaves.errors import DecayError, DomainError
from vortexwaves.fd_laplace import fd_extension_dy, separated_mode_dy
from vortexwaves.stream_core import PhysicalParams, VortexConfig

DEFAULT = PhysicalParams(g=1 / 8, alpha2=1 / (8 * math.pi**2), h=1.0)

TEST_DATA = {
    "gauss": lambda x: np.exp(-x**2),
    "gauss_cos": lambda x: np.exp(-x**2) * np.cos(2 * x),
    "sech2": lambda x: 1.0 / np.cosh(2 * x) ** 2,
}


@pytest.fixture(scope="module")
def coeffs_03():
    return bf.compute_coeffs(sp.ProfileSpec.single(0.3, DEFAULT))


# zeta3 -------------------------------------------------------------------------------

@pytest.mark.parametrize("theta", [0.1, 0.3, 0.5])
def test_zeta3_positive_decreasing(theta):
    spec = sp.ProfileSpec.single(theta, DEFAULT)
    xs = np.linspace(0, 8, 161)
    z = bf.zeta3(spec, xs)
    assert np.all(z > 0)
    assert np.all(np.diff(z) < 0)
    assert abs(bf.zeta3(spec, 30.0)) < 1e-12 * z[0]


def test_zeta3_kinematic_identity(coeffs_03):
    spec = coeffs_03.spec
    assert coeffs_03.zeta3.evenness_error() < 1e-12 * np.max(np.abs(coeffs_03.zeta3.values))
    xs = np.linspace(-3, 3, 13)
    u = sc.c1(DEFAULT, 0.3) + sc.phi_y_surface(DEFAULT, 0.3, xs)
    assert np.array_equal(bf.zeta3(spec, xs), -sp.eta2(spec, xs) * u)


# flat-strip extension ----------------------------------------------------------------

@given(st.floats(0, 60), st.floats(0.3, 3), st.floats(0.02, 0.98))
@settings(max_examples=60, deadline=None)
def test_multiplier_is_separated_mode(k, h, theta):
    assert float(bf.multiplier(k, h, theta)) == pytest.approx(separated_mode_dy(k, h, theta), rel=1e-12)


@pytest.mark.parametrize("theta", [0.25, 0.5, 0.75])
def test_extension_gaussian_closed_transform(theta):
    # the cosine transform of exp(-x^2) is sqrt(pi) exp(-xi^2/4); integrate that directly
    exact, _ = integrate.quad(lambda k: math.sqrt(math.pi) * math.exp(-k * k / 4) * separated_mode_dy(k, 1.0, theta),
                              0, 60, epsabs=1e-14)
    exact /= math.pi
    assert bf.flat_strip_extension_dy(TEST_DATA["gauss"], 1.0, theta, x_max=8.0) == pytest.approx(exact, abs=1e-10)


@pytest.mark.parametrize("name,theta", [("gauss", 0.25), ("gauss_cos", 0.5), ("sech2", 0.75)])
def test_extension_vs_finite_difference(name, theta):
    f = TEST_DATA[name]
    spectral = bf.flat_strip_extension_dy(f, 1.0, theta, x_max=8.0)
    fd = fd_extension_dy(f, 1.0, theta, Lx=8.0, ny=40)
    assert abs(spectral - fd) < 1e-4


def test_extension_zero_and_linear():
    xs = np.linspace(-10, 10, 401)
    zero = sp.Profile(xs, np.zeros_like(xs))
    assert bf.flat_strip_extension_dy(zero, 1.0, 0.4) == 0.0
    f, g = TEST_DATA["gauss"], TEST_DATA["sech2"]
    a, b = 0.7, -1.3
    lhs = bf.flat_strip_extension_dy(lambda x: a * f(x) + b * g(x), 1.0, 0.4, x_max=8.0)
    rhs = a * bf.flat_strip_extension_dy(f, 1.0, 0.4, x_max=8.0) + b * bf.flat_strip_extension_dy(g, 1.0, 0.4, x_max=8.0)
    assert abs(lhs - rhs) < 1e-10


def test_extension_profile_vs_callable():
    xs = np.linspace(-8, 8, 3201)
    p = sp.Profile(xs, TEST_DATA["gauss"](xs))
    a = bf.flat_strip_extension_dy(p, 1.0, 0.4)
    b = bf.flat_strip_extension_dy(TEST_DATA["gauss"], 1.0, 0.4, x_max=8.0)
    assert abs(a - b) < 1e-9


def test_extension_rejects_undecayed_data():
    xs = np.linspace(-2, 2, 81)
    with pytest.raises(DecayError):
        bf.flat_strip_extension_dy(sp.Profile(xs, np.exp(-xs**2)), 1.0, 0.4)
    with pytest.raises(DomainError):
        bf.flat_strip_extension_dy(TEST_DATA["gauss"], 1.0, 0.4)


def test_extension_of_zeta3_positive(coeffs_03):
    assert bf.flat_strip_extension_dy(coeffs_03.zeta3, DEFAULT, 0.3) > 0


# c3 ----------------------------------------------------------------------------------

def test_c3_frozen_value(coeffs_03):
    # frozen after agreement of the spectral and finite-difference extension routes
    assert coeffs_03.c3 == pytest.approx(-0.12877, abs=5e-5)
    assert coeffs_03.c1 == pytest.approx(1 / (4 * math.tan(0.3 * math.pi)), rel=1e-15)


def test_c3_matches_fd_route(coeffs_03):
    z = coeffs_03.zeta3
    f = lambda x: np.interp(x, z.xs, z.values)  # noqa: E731
    fd = fd_extension_dy(f, 1.0, 0.3, Lx=10.0, ny=40)
    assert -fd == pytest.approx(coeffs_03.c3, abs=1e-4)


def test_c3_at_half_left_moving():
    spec = sp.ProfileSpec.single(0.5, DEFAULT)
    coeffs = bf.compute_coeffs(spec)
    assert coeffs.c1 == 0.0
    assert coeffs.c3 < 0
    exp = bf.expansion_eval(coeffs, 0.05)
    assert exp.c < 0


def test_single_vortex_through_multi_pipeline(coeffs_03):
    spec = sp.ProfileSpec.single(0.3, DEFAULT, multi=True)
    T = tm.build_theta(spec.config, 1.0)
    g3, rhs = bf.gamma3(spec)
    c1, c3 = coeffs_03.c1, coeffs_03.c3
    assert spec.strengths[0] == pytest.approx(1 / T.entries[0, 0], rel=1e-14)
    # eps_mult = c1 eps + c3 eps^3 inverts to gamma = eps_mult / c1 - c3 eps_mult^3 / c1^4 + ...
    assert g3[0] == pytest.approx(-c3 / c1**4, rel=1e-6)


def test_two_vortex_coefficients_frozen():
    spec = sp.ProfileSpec(DEFAULT, VortexConfig((0.4, 0.2)))
    coeffs = bf.compute_coeffs(spec)
    assert coeffs.det_theta == pytest.approx(0.58697, abs=1e-5)
    assert coeffs.gamma1 == pytest.approx([1.5876, -1.4819], abs=1e-4)
    assert coeffs.gamma3 == pytest.approx([3.1765, -3.2392], abs=1e-4)
    g3, rhs = bf.gamma3(spec, coeffs.zeta3)
    T = tm.build_theta(spec.config, 1.0)
    assert np.max(np.abs(T.entries @ g3 - rhs)) < 1e-10
    with pytest.raises(DomainError):
        bf.c3(spec)


# truncated expansion ------------------------------------------------------------------

def test_expansion_zero_and_parity(coeffs_03):
    zero = bf.expansion_eval(coeffs_03, 0.0)
    assert zero.c == 0 and not np.any(zero.eta.values) and not np.any(zero.zeta.values)
    a, b = bf.expansion_eval(coeffs_03, 0.07), bf.expansion_eval(coeffs_03, -0.07)
    assert np.array_equal(a.eta.values, b.eta.values)
    assert np.array_equal(a.zeta.values, -b.zeta.values)
    assert a.c == -b.c


def test_expansion_clearance_and_limits(coeffs_03):
    for eps in np.linspace(0, bf.EPS_MAX, 6):
        exp = bf.expansion_eval(coeffs_03, eps)
        assert np.max(exp.eta.values) < 0.7
    with pytest.warns(RuntimeWarning):
        bf.expansion_eval(coeffs_03, 0.2)


def test_expansion_clearance_violation():
    spec = sp.ProfileSpec.single(0.9, DEFAULT)
    coeffs = bf.compute_coeffs(spec)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        with pytest.raises(DomainError):
            bf.expansion_eval(coeffs, 3.0)


@pytest.mark.parametrize("thetas", [(0.3,), (0.7,), (0.4, 0.2)])
def test_consistency_residuals(thetas):
    spec = sp.ProfileSpec(DEFAULT, VortexConfig(thetas))
    res = bf.consistency_residuals(spec, step=0.005)
    assert res["kinematic1"] < 1e-15
    assert res["bernoulli2"] < 1e-6
    assert res["kinematic3"] == 0.0
