"""Leading-order surface profile ``eta2`` of a solitary wave carrying point vortices.

``eta2`` solves ``g eta2 - alpha2 eta2'' = -chi`` on the line, where ``chi`` is
built from the surface trace of the vortex stream function.  Three
independent evaluation routes are provided:

* :func:`eta2_series`, an exponentially convergent series in ``exp(-pi|x|/h)``
  (one branch for non-integer ``m``, one for integer ``m``);
* :func:`eta2_elementary`, a finite closed form valid for integer ``m``;
* :func:`eta2_oracle`, adaptive quadrature of the Green's-function convolution.

Notation used throughout: ``t = pi |x| / h``, ``c = cos(pi theta)`` and
``K = 1 / (8 pi^2 alpha^2)``.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import integrate

from . import stream_core as sc
from .errors import ConditioningWarning, DomainError, ElementaryRangeError, QuadratureError
from .stream_core import PhysicalParams, VortexConfig
from .theta_matrix import build_theta, gamma1

M_INTEGER_TOL = 1e-6
#: Within this distance of an integer the non-integer branch loses digits.
M_NEAR_INTEGER = 1e-3
DEFAULT_N = 60
#: Adaptive truncation grows N until the tail bound drops below this (times K).
SERIES_TAIL_TARGET = 1e-14
N_MAX = 4096
#: Below this ``|x|/h`` the dispatcher prefers quadrature to the series.
SERIES_X_MIN = 0.05
#: Half-width (in units of h) added beyond ``|x|`` when truncating the convolution.
ORACLE_PAD = 12.0
ORACLE_EPSABS = 1e-14
ORACLE_MAX_ERROR = 1e-10
#: Upper bound on ``t`` keeping the cancelling cosh sum of the elementary form accurate.
ELEMENTARY_T_CANCEL = 16.0
ELEMENTARY_T_OVERFLOW = 700.0
_LARGE_S = 40.0


class Branch(enum.Enum):
    NON_INTEGER_M = "NonIntegerM"
    INTEGER_M = "IntegerM"


class DecayKind(enum.Enum):
    GEOMETRIC = "geometric"            # exp(-pi x / h)
    GEOMETRIC_LINEAR = "geometric*x"   # (pi x / h) exp(-pi x / h)
    CAPILLARY = "capillary"            # exp(-sqrt(g) x / alpha)


class TailSign(enum.Enum):
    POSITIVE = "PositiveTail"
    NEGATIVE = "NegativeTail"


@dataclass(frozen=True)
class ProfileSpec:
    """Physical parameters plus vortex configuration.

    Single-vortex specs (``n == 1``) use the strength-one normalisation with
    speed ``c1``.  ``multi=True`` forces the several-vortex normalisation,
    where the strengths are ``gamma1 = Theta^{-1} 1`` and the speed is one;
    it is implied whenever ``n > 1``.
    """

    params: PhysicalParams
    config: VortexConfig
    m_integer_tol: float = M_INTEGER_TOL
    multi: bool = False

    @classmethod
    def single(cls, theta: float, params: PhysicalParams, **kw) -> "ProfileSpec":
        return cls(params, VortexConfig((theta,)), **kw)

    @property
    def h(self) -> float:
        return self.params.h

    @property
    def m(self) -> float:
        return self.params.m

    @property
    def is_multi(self) -> bool:
        return self.multi or self.config.n > 1

    @property
    def branch(self) -> Branch:
        m = self.m
        return Branch.INTEGER_M if abs(m - round(m)) < self.m_integer_tol else Branch.NON_INTEGER_M

    @property
    def m_int(self) -> int:
        if self.branch is not Branch.INTEGER_M:
            raise DomainError(f"m = {self.m!r} is not an integer within {self.m_integer_tol}")
        return int(round(self.m))

    @property
    def theta(self) -> float:
        if self.config.n != 1:
            raise DomainError("this operation needs a single vortex")
        return self.config.thetas[0]

    @property
    def K(self) -> float:
        return 1.0 / (8.0 * math.pi**2 * self.params.alpha2)

    @cached_property
    def strengths(self) -> np.ndarray:
        """``gamma1`` for the several-vortex normalisation."""
        return gamma1(build_theta(self.config, self.h))

    @property
    def weighted_config(self) -> VortexConfig:
        return self.config.with_strengths(self.strengths)


@dataclass(frozen=True)
class Profile:
    """Even function sampled on a grid symmetric about zero."""

    xs: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if xs.ndim != 1 or xs.shape != values.shape:
            raise DomainError("xs and values must be 1-d arrays of equal length")
        if xs.size < 2 or np.any(np.diff(xs) <= 0):
            raise DomainError("xs must be strictly increasing")
        if not np.allclose(xs, -xs[::-1], rtol=0, atol=1e-12 * max(1.0, float(np.max(np.abs(xs))))):
            raise DomainError("xs must be symmetric about 0")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "values", values)

    @classmethod
    def sample(cls, func, x_max: float, n_points: int) -> "Profile":
        xs = np.linspace(-x_max, x_max, n_points)
        xs = 0.5 * (xs - xs[::-1])  # exact symmetry
        return cls(xs, np.asarray(func(xs), dtype=float))

    def evenness_error(self) -> float:
        return float(np.max(np.abs(self.values - self.values[::-1])))

    def __mul__(self, other):
        if isinstance(other, Profile):
            return Profile(self.xs, self.values * other.values)
        return Profile(self.xs, self.values * other)

    __rmul__ = __mul__

    def __add__(self, other: "Profile") -> "Profile":
        return Profile(self.xs, self.values + other.values)


# chi and its antiderivatives ------------------------------------------------

def _cos_pi(theta):
    """``cos(pi theta)`` as ``sin(pi (1/2 - theta))``: exactly 0 at 1/2, full relative accuracy near it."""
    return math.sin(math.pi * (0.5 - theta))


def _s_and_theta_terms(spec, x):
    x = np.abs(np.asarray(x, dtype=float))
    s = math.pi * x / spec.h
    pt = math.pi * spec.theta
    return s, _cos_pi(spec.theta), math.cos(pt / 2) ** 2


def _surface_denominator(s, c, half_cos2):
    """``cosh(s) + c`` and ``sech(s)`` times it, without cancellation or overflow."""
    small = np.minimum(s, _LARGE_S)
    full = 2.0 * (np.sinh(small / 2) ** 2 + half_cos2)
    q = 1.0 / np.cosh(small)
    q = np.where(s > _LARGE_S, 2.0 * np.exp(-s), q)
    scaled = np.where(s > _LARGE_S, 1.0 + c * q, full * q)
    return full, scaled, q


def chi(spec: ProfileSpec, x):
    """``chi(x)``; closed form for one vortex, stream-function route otherwise."""
    scalar = np.ndim(x) == 0
    if spec.is_multi:
        py = np.asarray(sc.phi_gamma_y_surface(spec.params, spec.weighted_config, x))
        out = py + 0.5 * py * py
    else:
        s, c, hc2 = _s_and_theta_terms(spec, x)
        full, scaled, q = _surface_denominator(s, c, hc2)
        small = np.minimum(s, _LARGE_S)
        near = (2.0 * hc2 + 2.0 * c * np.sinh(small / 2) ** 2) / full**2
        far = q * (q + c) / scaled**2
        out = np.where(s > _LARGE_S, far, near) / (8.0 * spec.h**2)
    return float(out) if scalar else out


def chi_ad1(spec: ProfileSpec, x):
    """Odd antiderivative of ``chi`` vanishing at 0."""
    scalar = np.ndim(x) == 0
    if spec.is_multi:
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.array([_quad(lambda y: chi(spec, y), 0.0, xi) for xi in xs])
        return float(out[0]) if scalar else out.reshape(np.shape(x))
    xa = np.asarray(x, dtype=float)
    s, c, hc2 = _s_and_theta_terms(spec, xa)
    _, scaled, _ = _surface_denominator(s, c, hc2)
    out = np.sign(xa) * np.tanh(s) / scaled / (8.0 * math.pi * spec.h)
    return float(out) if scalar else out


def chi_ad2(spec: ProfileSpec, x):
    """Even second antiderivative; ``log(cosh(s) + c) / (8 pi^2)`` for one vortex."""
    scalar = np.ndim(x) == 0
    if spec.is_multi:
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        # int_0^x (x - y) chi(y) dy
        out = np.array([_quad(lambda y, xi=xi: (xi - y) * chi(spec, y), 0.0, xi) for xi in xs])
        return float(out[0]) if scalar else out.reshape(np.shape(x))
    s, c, hc2 = _s_and_theta_terms(spec, x)
    full, _, _ = _surface_denominator(s, c, hc2)
    e = np.exp(-s)
    far = s - math.log(2.0) + _log_quadratic(e, c, hc2)
    out = np.where(s < 1.0, np.log(full), far) / (8.0 * math.pi**2)
    return float(out) if scalar else out


def _quad(f, a, b):
    if a == b:
        return 0.0
    val, _ = integrate.quad(f, a, b, epsabs=ORACLE_EPSABS, epsrel=1e-13, limit=200)
    return val


def _log_quadratic(q, c, half_cos2):
    """``log(1 + 2 c q + q^2)`` for ``q`` in ``[0, 1]``."""
    q = np.asarray(q, dtype=float)
    direct = np.log1p(2.0 * c * q + q * q)
    # (1 - q)^2 + 4 q cos^2(pi theta / 2) avoids cancellation as q -> 1, theta -> 1
    safe = np.log((1.0 - q) ** 2 + 4.0 * q * half_cos2)
    return np.where(q < 0.5, direct, safe)


# series ---------------------------------------------------------------------

def _check_single(spec):
    if spec.is_multi:
        raise DomainError("closed-form routes need a single vortex in the strength-one normalisation")


def _warn_near_integer(m):
    gap = abs(m - round(m))
    if M_INTEGER_TOL <= gap < M_NEAR_INTEGER:
        warnings.warn(
            f"m = {m!r} is within {gap:.1e} of an integer; the non-integer branch "
            "loses about log10(1/gap) digits to cancellation",
            ConditioningWarning,
            stacklevel=3,
        )


def default_series_n(spec: ProfileSpec, x) -> int:
    """Smallest ``N >= DEFAULT_N`` (doubling, capped at ``N_MAX``) meeting the tail target at every ``x``."""
    x_min = float(np.min(np.abs(np.asarray(x, dtype=float))))
    N = DEFAULT_N
    while N < N_MAX and series_tail_bound(spec, x_min, N) > SERIES_TAIL_TARGET * spec.K:
        N *= 2
    return min(N, N_MAX)


def eta2_series(spec: ProfileSpec, x, N: int | None = None):
    """Partial sum through ``k = N`` of the series for ``eta2``.

    The truncation error is bounded by :func:`series_tail_bound`.  By default
    ``N`` is chosen by :func:`default_series_n`.
    """
    _check_single(spec)
    if N is None:
        N = default_series_n(spec, x)
    if N < 1:
        raise DomainError("N must be at least 1")
    scalar = np.ndim(x) == 0
    t = math.pi * np.abs(np.asarray(x, dtype=float)) / spec.h
    m, theta = spec.m, spec.theta
    pt = math.pi * theta
    c, hc2 = _cos_pi(theta), math.cos(pt / 2) ** 2
    e = np.exp(-t)
    total = _log_quadratic(e, c, hc2)
    if spec.branch is Branch.INTEGER_M:
        mi = spec.m_int
        cm, sm = math.cos(mi * pt), math.sin(mi * pt)
        sign = -1.0 if mi % 2 else 1.0
        total = total + sign * (1.5 * cm / mi + pt * sm + cm * t) * np.exp(-mi * t)
        m, skip = float(mi), mi
    else:
        _warn_near_integer(m)
        total = total - math.pi * math.cos(m * pt) / math.sin(m * math.pi) * np.exp(-m * t)
        skip = None
    terms = []
    for k in range(1, N + 1):
        if k == skip:
            continue
        coef = (-1.0) ** k * math.cos(k * pt) / (k * (m * m - k * k))
        terms.append(coef * np.exp(-k * t))
    series = np.sum(np.array(terms)[::-1], axis=0) if terms else 0.0
    out = spec.K * (total + 2.0 * m * m * series)
    return float(out) if scalar else out


def series_tail_bound(spec: ProfileSpec, x, N: int = DEFAULT_N):
    """Upper bound on ``|eta2 - eta2_series(N)|``; ``inf`` if ``(N+1)^2 < 2 m^2``."""
    m = spec.m
    scalar = np.ndim(x) == 0
    t = math.pi * np.abs(np.asarray(x, dtype=float)) / spec.h
    k = N + 1
    if k * k < 2 * m * m:
        out = np.full(np.shape(t), np.inf)
    else:
        with np.errstate(divide="ignore"):
            geom = 2 * m * m * np.exp(-k * t) / (k * abs(m * m - k * k) * -np.expm1(-t))
        # for k^2 >= 2 m^2 the terms are at most 4 m^2 / k^3
        out = spec.K * np.minimum(geom, 2 * m * m / N**2)
    return float(out) if scalar else out


# elementary form -------------------------------------------------------------

def elementary_x_max(spec: ProfileSpec) -> float:
    """Largest ``|x|`` at which :func:`eta2_elementary` is evaluated."""
    m = spec.m_int
    t_max = ELEMENTARY_T_OVERFLOW / m
    if m > 1:
        t_max = min(t_max, ELEMENTARY_T_CANCEL / (m - 1))
    return spec.h * t_max / math.pi


def eta2_elementary(spec: ProfileSpec, x):
    """Finite closed form of ``eta2`` for integer ``m``.

    For ``m >= 2`` the ``cosh`` sum grows like ``exp((m-1) t)`` and cancels
    against the remainder terms, so the range is capped by
    :func:`elementary_x_max`.
    """
    _check_single(spec)
    m = spec.m_int
    scalar = np.ndim(x) == 0
    xa = np.abs(np.asarray(x, dtype=float))
    x_max = elementary_x_max(spec)
    if np.any(xa > x_max):
        raise ElementaryRangeError(
            f"|x| = {float(np.max(xa))!r} exceeds the elementary-form limit {x_max!r} for m = {m}"
        )
    t = math.pi * xa / spec.h
    pt = math.pi * spec.theta
    c, s_, hc2 = _cos_pi(spec.theta), math.sin(pt), math.cos(pt / 2) ** 2
    cm, sm = math.cos(m * pt), math.sin(m * pt)
    sign = -1.0 if m % 2 else 1.0
    e = np.exp(-t)
    log_q = _log_quadratic(e, c, hc2)
    # r(exp(t)) and r(exp(-t)), with the large argument scaled out
    r_plus = sign * np.exp(-m * t) * (cm * (t + 0.5 * log_q) + sm * np.arctan2(s_, e + c))
    r_minus = sign * np.exp(m * t) * (0.5 * cm * log_q + sm * np.arctan2(s_ * e, 1.0 + c * e))
    total = 1.0 / m + r_plus + r_minus
    for k in range(1, m):
        j = m - k
        total = total + 2.0 * (-1.0) ** j * math.cos(j * pt) / k * np.cosh(j * t)
    out = spec.K * total
    return float(out) if scalar else out


# quadrature oracle -----------------------------------------------------------

def _oracle_point(spec, x, chi_f):
    lam = math.sqrt(spec.params.g / spec.params.alpha2)
    Y = abs(x) + ORACLE_PAD * spec.h
    breaks = sorted({-Y, min(0.0, x), max(0.0, x), Y})
    total, err = 0.0, 0.0
    for a, b in zip(breaks[:-1], breaks[1:]):
        if b <= a:
            continue
        val, est = integrate.quad(
            lambda y: math.exp(-lam * abs(x - y)) * chi_f(y),
            a, b, epsabs=ORACLE_EPSABS, epsrel=1e-13, limit=400,
        )
        total += val
        err += est
    pref = -1.0 / (2.0 * math.sqrt(spec.params.alpha2 * spec.params.g))
    return pref * total, abs(pref) * err


def eta2_oracle(spec: ProfileSpec, x, return_error: bool = False):
    """``eta2`` by quadrature of the exponential-kernel convolution with ``chi``."""
    scalar = np.ndim(x) == 0
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    chi_f = lambda y: float(chi(spec, y))  # noqa: E731
    vals, errs = np.empty(xs.shape), np.empty(xs.shape)
    for i, xi in np.ndenumerate(xs):
        vals[i], errs[i] = _oracle_point(spec, float(xi), chi_f)
        if errs[i] > ORACLE_MAX_ERROR:
            raise QuadratureError(f"quadrature error estimate {errs[i]:.2e} at x = {xi!r}", estimate=errs[i])
    if scalar:
        vals, errs = float(vals[0]), float(errs[0])
    else:
        vals, errs = vals.reshape(np.shape(x)), errs.reshape(np.shape(x))
    return (vals, errs) if return_error else vals


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)
GRID_PANEL = 0.05


def _panel_integrals(spec, a, b, lam):
    """For each interval ``[a_i, b_i]``: int exp(-lam (b - y)) chi and int exp(-lam (y - a)) chi."""
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    y = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    f = np.asarray(chi(spec, y.ravel())).reshape(y.shape) * _GL_WEIGHTS[None, :] * half[:, None]
    left = np.sum(f * np.exp(-lam * (b[:, None] - y)), axis=1)
    right = np.sum(f * np.exp(-lam * (y - a[:, None])), axis=1)
    return left, right


def eta2_grid(spec: ProfileSpec, x):
    """Convolution route for many points at once.

    Splits the kernel into ``exp(-lam (x - y))`` for ``y < x`` and its mirror,
    and accumulates both halves with the recurrence
    ``L(x') = exp(-lam (x' - x)) L(x) + int_x^x' ...`` over Gauss-Legendre
    panels no wider than ``GRID_PANEL * h``.
    """
    xa = np.asarray(x, dtype=float)
    flat = xa.ravel()
    order = np.argsort(flat)
    xs = flat[order]
    lam = math.sqrt(spec.params.g / spec.params.alpha2)
    pad = ORACLE_PAD * spec.h
    knots = np.concatenate([[min(xs[0], 0.0) - pad], xs, [max(xs[-1], 0.0) + pad]])
    # refine every gap into panels
    pieces = []
    for a, b in zip(knots[:-1], knots[1:]):
        k = max(1, int(math.ceil((b - a) / (GRID_PANEL * spec.h))))
        pieces.append(np.linspace(a, b, k + 1)[:-1])
    nodes = np.concatenate(pieces + [knots[-1:]])
    left_p, right_p = _panel_integrals(spec, nodes[:-1], nodes[1:], lam)
    decay = np.exp(-lam * np.diff(nodes))
    n = nodes.size
    L, R = np.zeros(n), np.zeros(n)
    for i in range(1, n):
        L[i] = decay[i - 1] * L[i - 1] + left_p[i - 1]
    for i in range(n - 2, -1, -1):
        R[i] = decay[i] * R[i + 1] + right_p[i]
    idx = np.searchsorted(nodes, xs)
    vals = -(L[idx] + R[idx]) / (2.0 * math.sqrt(spec.params.alpha2 * spec.params.g))
    out = np.empty_like(flat)
    out[order] = vals
    return float(out[0]) if xa.ndim == 0 else out.reshape(xa.shape)


def eta2(spec: ProfileSpec, x, N: int | None = None):
    """Default evaluator.

    One vortex: series away from the origin, quadrature near it.  Several
    vortices: the grid convolution for arrays, pointwise quadrature otherwise.
    """
    if spec.is_multi:
        if np.size(x) >= 8:
            return eta2_grid(spec, x)
        return eta2_oracle(spec, x)
    scalar = np.ndim(x) == 0
    xa = np.asarray(x, dtype=float)
    near = np.abs(xa) < SERIES_X_MIN * spec.h
    out = np.asarray(eta2_series(spec, np.where(near, 1.0, xa), N), dtype=float)
    if np.any(near):
        out = np.array(out, copy=True)
        out[near] = eta2_oracle(spec, xa[near])
    return float(out) if scalar else out


# coefficient identities --------------------------------------------------------

def lemma_coefficient(m: float, theta: float, m_integer_tol: float = M_INTEGER_TOL) -> float:
    """Closed value of ``1/m + 2m sum_k (-1)^k cos(k pi theta)/(m^2 - k^2)``.

    For integer ``m`` the term ``k = m`` is dropped from the sum.
    """
    if not m > 0:
        raise DomainError("m must be positive")
    if abs(m - round(m)) < m_integer_tol:
        mi = int(round(m))
        sign = -1.0 if mi % 2 else 1.0
        return -sign * (math.cos(mi * math.pi * theta) / (2 * mi) + math.pi * theta * math.sin(mi * math.pi * theta))
    _warn_near_integer(m)
    return math.pi * math.cos(m * math.pi * theta) / math.sin(m * math.pi)


def lemma_coefficient_series(m: float, theta: float, N: int = 10_000,
                             m_integer_tol: float = M_INTEGER_TOL) -> float:
    """Partial sum of the coefficient series with Kummer acceleration.

    ``1/(m^2 - k^2) = -1/k^2 + m^2 / (k^2 (m^2 - k^2))`` and
    ``sum_k (-1)^k cos(k pi theta)/k^2 = pi^2 (3 theta^2 - 1) / 12`` turn the
    ``1/k^2`` tail into a ``1/k^4`` one.
    """
    if not m > 0:
        raise DomainError("m must be positive")
    skip = None
    if abs(m - round(m)) < m_integer_tol:
        skip = int(round(m))
        m = float(skip)
    else:
        _warn_near_integer(m)
    k = np.arange(1, N + 1, dtype=float)
    alt = np.where(k % 2 == 1, -1.0, 1.0) * np.cos(k * math.pi * theta)
    base = math.pi**2 * (3 * theta**2 - 1) / 12
    rest = alt * m * m / (k * k * (m * m - k * k)) if skip is None else None
    if skip is not None:
        mask = k != skip
        rest = np.zeros_like(k)
        rest[mask] = alt[mask] * m * m / (k[mask] ** 2 * (m * m - k[mask] ** 2))
        # the Kummer identity includes k = m in sum 1/k^2; take it back out
        base = base - alt[skip - 1] / skip**2
    total = -base + math.fsum(rest[::-1])
    return 1.0 / m + 2.0 * m * total


def lemma_coefficient_integral(m: float, theta: float) -> float:
    """``int_0^inf y^(m-1) (c y + 1) / (y^2 + 2 c y + 1) dy`` for ``m`` in ``(0, 1)``."""
    if not (0.0 < m < 1.0):
        raise DomainError("the integral form needs 0 < m < 1")
    c = _cos_pi(theta)
    # [0, 1] directly; [1, inf) after y = 1/u, both with algebraic endpoint weights
    a, ea = integrate.quad(lambda y: (c * y + 1) / (y * y + 2 * c * y + 1), 0.0, 1.0,
                           weight="alg", wvar=(m - 1.0, 0.0), epsabs=1e-14, epsrel=1e-13)
    b, eb = integrate.quad(lambda u: (c + u) / (1 + 2 * c * u + u * u), 0.0, 1.0,
                           weight="alg", wvar=(-m, 0.0), epsabs=1e-14, epsrel=1e-13)
    if ea + eb > 1e-9:
        raise QuadratureError("coefficient integral did not converge", estimate=ea + eb)
    return a + b


# far field -----------------------------------------------------------------------

@dataclass(frozen=True)
class Asymptotics:
    kind: DecayKind
    rate: float
    constant: float

    def envelope(self, x):
        """Leading-order model ``constant * [t] * exp(-rate |x|)``."""
        xa = np.abs(np.asarray(x, dtype=float))
        out = self.constant * np.exp(-self.rate * xa)
        if self.kind is DecayKind.GEOMETRIC_LINEAR:
            out = out * self.rate * xa
        return out


def asymptotic_constant(spec: ProfileSpec, tol: float = 1e-12) -> Asymptotics:
    """Decay law of ``eta2`` as ``|x| -> inf``."""
    _check_single(spec)
    m, theta, K, h = spec.m, spec.theta, spec.K, spec.h
    c = _cos_pi(theta)
    geometric = math.pi / h
    if spec.branch is Branch.INTEGER_M and spec.m_int == 1:
        return Asymptotics(DecayKind.GEOMETRIC_LINEAR, geometric, -c * K)
    if m > 1 or abs(m * theta - 0.5) < tol:
        # at m = 1/(2 theta) the capillary coefficient vanishes and the geometric law takes over
        return Asymptotics(DecayKind.GEOMETRIC, geometric, -2.0 / (m * m - 1.0) * c * K)
    return Asymptotics(
        DecayKind.CAPILLARY,
        math.sqrt(spec.params.g / spec.params.alpha2),
        -math.pi / math.sin(m * math.pi) * math.cos(m * math.pi * theta) * K,
    )


def tail_sign(spec: ProfileSpec) -> TailSign:
    """Sign of ``eta2`` far from the vortex; the crossover ``m = 1/(2 theta)`` counts as negative."""
    _check_single(spec)
    theta = spec.theta
    if theta <= 0.5:
        return TailSign.NEGATIVE
    return TailSign.POSITIVE if spec.m > 1.0 / (2.0 * theta) else TailSign.NEGATIVE
