import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from vortexwaves import periodic_deep as pd
from vortexwaves.errors import DomainError, SingularPointError
from vortexwaves.periodic_deep import PeriodicParams

FIG = PeriodicParams(L=1.0, g=1.0, alpha2=0.01)
Ls = st.floats(0.2, 20)


def g_direct(L, x, y):
    """The cosine/cosh form, fine away from overflow."""
    return math.log((math.cos(x / L) - math.cosh(y / L)) / (math.cos(x / L) - math.cosh((y - 2) / L))) / (4 * math.pi)


def fourier_coefficient(pp, n):
    """Cosine coefficient of chi by adaptive quadrature over one period."""
    val, _ = integrate.quad(lambda x: pd.chi_periodic(pp, x) * math.cos(n * x / pp.L), -math.pi * pp.L,
                            math.pi * pp.L, epsabs=1e-15, epsrel=1e-13, limit=400)
    return val / (math.pi * pp.L)


# stream function ------------------------------------------------------------------------

@given(Ls, st.floats(-3, 3), st.floats(-3, 0.95))
@settings(max_examples=60, deadline=None)
def test_g_matches_direct_form(L, xf, y):
    pp = PeriodicParams(L)
    x = xf * math.pi * L
    if math.hypot(x - pp.period * round(x / pp.period), y) < 1e-3:
        return
    assert pd.g_stream(pp, x, y) == pytest.approx(g_direct(L, x, y), rel=1e-10, abs=1e-13)


def test_g_surface_periodicity_and_symmetry_line():
    pp = PeriodicParams(1.3)
    xs = np.linspace(-10, 10, 81)
    assert np.max(np.abs(pd.g_stream(pp, xs, 1 - 1e-15 + 0 * xs))) < 1e-12
    assert pd.g_stream(pp, 0.7 + pp.period, -0.4) == pytest.approx(pd.g_stream(pp, 0.7, -0.4), abs=1e-15)
    d = 1e-5
    for y in (-2.0, -0.3, 0.5):
        gx = (pd.g_stream(pp, math.pi * pp.L + d, y) - pd.g_stream(pp, math.pi * pp.L - d, y)) / (2 * d)
        assert abs(gx) < 1e-8


def test_g_far_below_finite():
    vals = pd.g_stream(PeriodicParams(0.5), np.array([0.3, 1.0]), np.array([-400.0, -2000.0]))
    assert np.all(np.isfinite(vals))


def test_g_rejects_lattice_and_surface():
    pp = PeriodicParams(1.0)
    with pytest.raises(SingularPointError):
        pd.g_stream(pp, 2 * pp.period, 0.0)
    with pytest.raises(DomainError):
        pd.g_stream(pp, 0.1, 1.0)
    with pytest.raises(DomainError):
        PeriodicParams(-1.0)


def test_conformal_map():
    pp = PeriodicParams(0.8)
    assert abs(pd.conformal_map_halfstrip(pp, 0.0)) < 1e-15
    xs = np.linspace(-0.99, 0.99, 41) * math.pi * pp.L
    assert np.max(np.abs(np.abs(pd.conformal_map_halfstrip(pp, xs + 1j)) - 1)) < 1e-12
    X, Y = np.meshgrid(np.linspace(-2.3, 2.3, 9), np.linspace(-3, 0.9, 9))
    mask = np.hypot(X, Y) > 1e-3
    via = np.log(np.abs(pd.conformal_map_halfstrip(pp, X + 1j * Y))) / (2 * math.pi)
    assert np.max(np.abs(via - pd.g_stream(pp, X, Y))[mask]) < 1e-12


# c1 -----------------------------------------------------------------------------------------

def test_c1_values():
    assert pd.c1_periodic(FIG) == pytest.approx(-1 / (4 * math.pi * math.tanh(1.0)), rel=1e-15)
    scaled = [abs(pd.c1_periodic(PeriodicParams(L)) + 1 / (4 * math.pi)) * L * L for L in (10, 100)]
    assert scaled[1] == pytest.approx(scaled[0], rel=0.01)
    assert max(scaled) < 1


@pytest.mark.parametrize("L", [0.3, 1.0, 4.0])
def test_c1_regularized_route(L):
    pp = PeriodicParams(L)
    w = pd.c1_periodic_regularized(pp)
    assert w.real == pytest.approx(pd.c1_periodic(pp), abs=1e-10)
    assert abs(w.imag) < 1e-10


# chi ------------------------------------------------------------------------------------------

@given(Ls)
@settings(max_examples=40, deadline=None)
def test_chi_zero_mean(L):
    pp = PeriodicParams(L)
    assert abs(pd.mean_zero_check(pp)) < 1e-13
    assert abs(pd.chi_periodic_ad1(pp, 0.0)) == 0.0


@pytest.mark.parametrize("L", [0.5, 1.0, 5.0])
def test_chi_quadrature_zero_mean(L):
    pp = PeriodicParams(L)
    assert abs(pd.chi_quadrature_integral(pp)) < 1e-10 * pd.chi_periodic(pp, 0.0)
    assert abs(pd.mean_zero_quadrature(pp)) < 1e-12 * pd.chi_periodic(pp, 0.0)


def test_chi_cosine_form():
    for L in (0.5, 2.0):
        xs = np.linspace(-4, 4, 33)
        direct = (np.cosh(1 / L) * np.cos(xs / L) - 1) / (8 * math.pi**2 * L * L * (np.cos(xs / L) - np.cosh(1 / L)) ** 2)
        assert np.allclose(pd.chi_periodic(PeriodicParams(L), xs), direct, rtol=1e-12, atol=1e-15)


def test_antiderivative_stencil_second_order():
    pp, x = PeriodicParams(0.7), 0.4

    def err(s):
        return abs((pd.chi_periodic_ad1(pp, x + s) - pd.chi_periodic_ad1(pp, x - s)) / (2 * s) - pd.chi_periodic(pp, x))

    assert math.log2(err(1e-2) / err(5e-3)) == pytest.approx(2, abs=0.1)


@pytest.mark.parametrize("L", [0.5, 1.0, 3.0])
def test_chi_fourier_series(L):
    pp = PeriodicParams(L)
    xs = np.linspace(-math.pi * L, math.pi * L, 21)
    assert np.max(np.abs(pd.chi_fourier(pp, xs, 60 * int(math.ceil(L)) + 60) - pd.chi_periodic(pp, xs))) < 1e-8
    for n in (1, 2, 5):
        expected = n * math.exp(-n / L) / (4 * math.pi**2 * L * L)
        assert fourier_coefficient(pp, n) == pytest.approx(expected, rel=1e-9, abs=1e-15)


# eta* -------------------------------------------------------------------------------------------

def test_eta_star_vs_oracle():
    xs = np.array([0.0, math.pi / 2, math.pi])
    assert np.max(np.abs(pd.eta_star(FIG, xs, 200) - pd.eta_star_oracle(FIG, xs, 1024))) < 1e-8


@pytest.mark.parametrize("L", [0.25, 1.0, 10.0])
def test_eta_star_vs_quadrature_coefficients(L):
    # independent of the FFT: quad for the chi coefficients, divided by the symbol
    pp = PeriodicParams(L, 1.0, 0.01)
    xs = np.linspace(0, math.pi * L, 7)
    n_max = int(40 * L) + 40
    total = np.zeros_like(xs)
    for n in range(1, n_max + 1):
        a = n * math.exp(-n / L) / (4 * math.pi**2 * L * L)
        total -= a / (pp.g + pp.alpha2 * n * n / L**2) * np.cos(n * xs / L)
    assert np.max(np.abs(pd.eta_star(pp, xs) - total)) < 1e-12
    a1 = fourier_coefficient(pp, 1) / (pp.g + pp.alpha2 / L**2)
    direct_a1 = math.exp(-1 / L) / (4 * math.pi**2 * (pp.g * L * L + pp.alpha2))
    assert a1 == pytest.approx(direct_a1, rel=1e-9)


def test_first_term():
    t = pd.eta_star(FIG, 0.0, 1)
    assert t == pytest.approx(-math.exp(-1) / (4 * math.pi**2 * 1.01), rel=1e-15)
    with pytest.raises(DomainError):
        pd.eta_star(FIG, 0.0, 0)


@given(st.floats(0.3, 30), st.floats(0.2, 3), st.floats(1e-3, 1))
@settings(max_examples=30, deadline=None)
def test_eta_star_even_periodic_zero_mean(L, g, a2):
    pp = PeriodicParams(L, g, a2)
    xs = np.linspace(0, math.pi * L, 9)
    N = pd.default_n(pp)
    e = pd.eta_star(pp, xs, N)
    scale = np.max(np.abs(e))
    assert np.max(np.abs(pd.eta_star(pp, -xs, N) - e)) <= 1e-14 * scale
    assert np.max(np.abs(pd.eta_star(pp, xs + pp.period, N) - e)) <= 1e-11 * scale
    assert abs(pd.period_mean(lambda x: pd.eta_star(pp, x, N), pp, n=2 * N + 2)) < 1e-10


@given(st.floats(0.3, 30))
@settings(max_examples=30, deadline=None)
def test_tail_bound_below_target(L):
    pp = PeriodicParams(L)
    N = pd.default_n(pp)
    assert pd.eta_star_tail_bound(pp, N) <= pd.TAIL_TARGET
    assert N == 1 or pd.eta_star_tail_bound(pp, N - 1) > pd.TAIL_TARGET
    brute = sum(n * math.exp(-n / L) for n in range(N + 1, N + 20000)) / (4 * math.pi**2 * L * L)
    assert pd.eta_star_tail_bound(pp, N) == pytest.approx(brute, rel=1e-6, abs=1e-300)


@pytest.mark.parametrize("L", [0.5, 1.0, 5.0, 100.0])
def test_ode_residual(L):
    pp = PeriodicParams(L, 1.0, 0.01)
    xs = np.linspace(-math.pi * L, math.pi * L, 15)
    assert pd.ode_residual(pp, xs) < 1e-6


def test_oracle_sampling_grows_with_L():
    assert pd.oracle_m(FIG) == pd.ORACLE_M
    big = PeriodicParams(100.0)
    M = pd.oracle_m(big)
    assert math.exp(-M / 200) <= 1e-16
