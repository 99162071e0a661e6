"""Fubini-Study metric, Gaussian curvature and Gauss-Bonnet data of the state manifold.

Coordinates are ordered (theta, phi, xi).  Metric components are the
symmetric tensor ``g_mu_nu`` so that ``dS^2 = sum_mu_nu g_mu_nu dz^mu dz^nu``;
an off-diagonal component therefore contributes ``2 g_mu_nu dz^mu dz^nu`` to
the line element.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .errors import ConvergenceError, SingularityError, StepError
from .spin_core import ModelParams, dicke_amplitudes

__all__ = [
    "CROSS_TERM_COEFFICIENT",
    "MetricSample",
    "CurvatureSample",
    "GaussBonnetReport",
    "fs_metric_numeric",
    "fs_metric_closed",
    "calibrate_cross_term",
    "reduced_metric",
    "christoffel_symbols",
    "gaussian_curvature_closed",
    "gaussian_curvature_numeric",
    "gauss_bonnet_integrand",
    "gauss_bonnet_bulk",
    "pole_cone_ratio",
    "angular_defects",
    "euler_characteristic",
    "initial_sphere_radius",
]

# g_phixi = CROSS_TERM_COEFFICIENT * N (N-1) cos(theta) sin^2(theta), fixed by the
# finite-difference metric (see calibrate_cross_term).
CROSS_TERM_COEFFICIENT = 0.25

_POLE_EPS = 1e-6
AXES = ("theta", "phi", "xi")


@dataclass(frozen=True)
class MetricSample:
    point: tuple
    components: np.ndarray = field(repr=False)

    def __post_init__(self):
        g = np.array(self.components, dtype=float)
        g.setflags(write=False)
        object.__setattr__(self, "components", g)

    def __getitem__(self, key):
        a, b = key
        return float(self.components[AXES.index(a), AXES.index(b)])

    @property
    def g_thth(self):
        return self["theta", "theta"]

    @property
    def g_phph(self):
        return self["phi", "phi"]

    @property
    def g_xixi(self):
        return self["xi", "xi"]

    @property
    def g_phxi(self):
        return self["phi", "xi"]


@dataclass(frozen=True)
class CurvatureSample:
    theta: float
    xi: float
    k: float


@dataclass(frozen=True)
class GaussBonnetReport:
    n_spins: int
    bulk_integral: float
    defect_sum: float
    euler_characteristic: float

    @property
    def euler_rounded(self) -> int:
        return int(round(self.euler_characteristic))


def _derivative(f, x, h):
    """Central difference with one Richardson refinement (error O(h^4))."""
    d_h = (f(x + h) - f(x - h)) / (2 * h)
    d_half = (f(x + h / 2) - f(x - h / 2)) / h
    return (4 * d_half - d_h) / 3


def fs_metric_numeric(params: ModelParams, step: float = 1e-4) -> MetricSample:
    """Metric from finite-difference state derivatives.

    ``g_mu_nu = Re(<d_mu psi|d_nu psi> - <d_mu psi|psi><psi|d_nu psi>)`` with the
    derivatives of the evolved Dicke amplitudes taken by central differences.
    """
    if not step > 0:
        raise StepError(f"step must be positive, got {step!r}")
    theta = params.theta
    if theta - step <= 0 or theta + step >= math.pi:
        raise StepError(f"theta = {theta!r} is within one step of a pole")
    n = params.n_spins
    x0 = np.array([theta, params.phi, params.xi])

    def state_at(shift):
        x = x0 + shift
        return dicke_amplitudes(n, x[0], x[1], x[2])

    psi = state_at(np.zeros(3))
    derivs = []
    for axis in range(3):
        unit = np.zeros(3)
        unit[axis] = 1.0
        derivs.append(_derivative(lambda t: state_at(t * unit), 0.0, step))
    d = np.array(derivs)
    inner = d.conj() @ d.T
    conn = d.conj() @ psi
    g = (inner - np.outer(conn, conn.conj())).real
    return MetricSample((theta, params.phi, params.xi), (g + g.T) / 2)


def fs_metric_closed(params: ModelParams) -> MetricSample:
    """Closed-form metric over (theta, phi, xi)."""
    n = params.n_spins
    s2 = math.sin(params.theta) ** 2
    g = np.zeros((3, 3))
    g[0, 0] = n / 4
    g[1, 1] = n / 4 * s2
    g[2, 2] = 0.25 * n * (n - 1) * s2 * (n - 1 - (n - 1.5) * s2)
    g[1, 2] = g[2, 1] = CROSS_TERM_COEFFICIENT * n * (n - 1) * math.cos(params.theta) * s2
    return MetricSample((params.theta, params.phi, params.xi), g)


def calibrate_cross_term(params: ModelParams, step: float = 1e-4) -> float:
    """Coefficient c in ``g_phixi = c N (N-1) cos(theta) sin^2(theta)`` read off the numeric metric."""
    n = params.n_spins
    shape = n * (n - 1) * math.cos(params.theta) * math.sin(params.theta) ** 2
    if abs(shape) < 1e-8:
        raise SingularityError("cross term vanishes at this point; pick another calibration point")
    return fs_metric_numeric(params, step).g_phxi / shape


def reduced_metric(n: int, theta: float, xi: float = 0.0) -> tuple[float, float]:
    """(g_thth, g_xixi) of the two-dimensional (theta, xi) state space.

    ``xi`` is accepted for signature compatibility; the metric is static.
    """
    s2 = math.sin(theta) ** 2
    return n / 4, 0.25 * n * (n - 1) * s2 * (n - 1 - (n - 1.5) * s2)


def _check_interior(theta):
    if theta <= 0.0 or theta >= math.pi or math.sin(theta) == 0.0:
        raise SingularityError(f"curvature is undefined at theta = {theta!r}")


def gaussian_curvature_closed(params: ModelParams) -> CurvatureSample:
    _check_interior(params.theta)
    n = params.n_spins
    if n < 2:
        raise SingularityError("a single spin has a degenerate (theta, xi) metric")
    u = (2 * n - 3) * math.cos(params.theta) ** 2
    k = 8 / n * (2 - (u + n) / (u + 1) ** 2)
    return CurvatureSample(params.theta, params.xi, k)


def christoffel_symbols(n: int, theta: float, xi: float, step: float = 1e-3,
                        metric=reduced_metric) -> tuple[float, float]:
    """Gamma^xi_thth and Gamma^xi_thxi from finite differences of the 2D metric.

    ``metric(n, theta, xi)`` returns (g_thth, g_xixi).
    """
    def g(t, x):
        return metric(n, t, x)

    g_xixi = g(theta, xi)[1]
    dxi_gthth = _derivative(lambda x: g(theta, x)[0], xi, step)
    dth_gxixi = _derivative(lambda t: g(t, xi)[1], theta, step)
    return -dxi_gthth / (2 * g_xixi), dth_gxixi / (2 * g_xixi)


def gaussian_curvature_numeric(params: ModelParams, step: float = 1e-3,
                               metric=reduced_metric) -> CurvatureSample:
    """Curvature assembled from Christoffel symbols, every derivative a finite difference.

    ``K = [d_xi(sqrt(g_xixi/g_thth) G^xi_thth) - d_th(sqrt(g_xixi/g_thth) G^xi_thxi)]
    / sqrt(g_thth g_xixi)``.
    """
    if not step > 0:
        raise StepError(f"step must be positive, got {step!r}")
    _check_interior(params.theta)
    theta, xi, n = params.theta, params.xi, params.n_spins
    if theta - 2 * step <= 0 or theta + 2 * step >= math.pi:
        raise StepError(f"theta = {theta!r} is too close to a pole for step {step!r}")
    def g(t, x):
        return metric(n, t, x)

    def weighted(t, x, which):
        g_thth, g_xixi = g(t, x)
        gamma = christoffel_symbols(n, t, x, step, metric)[which]
        return math.sqrt(g_xixi / g_thth) * gamma

    first = _derivative(lambda x: weighted(theta, x, 0), xi, step)
    second = _derivative(lambda t: weighted(t, xi, 1), theta, step)
    g_thth, g_xixi = g(theta, xi)
    return CurvatureSample(theta, xi, (first - second) / math.sqrt(g_thth * g_xixi))


def gauss_bonnet_integrand(n: int, theta: float) -> float:
    """``K sqrt(g_thth g_xixi)``; tends to 0 at both poles."""
    if math.sin(theta) == 0.0 or theta <= 0 or theta >= math.pi:
        return 0.0
    g_thth, g_xixi = reduced_metric(n, theta)
    k = gaussian_curvature_closed(ModelParams(n, 1.0, theta)).k
    return k * math.sqrt(g_thth * g_xixi)


def gauss_bonnet_bulk(n_spins: int, tol: float = 1e-8) -> float:
    """Adaptive 2D quadrature of K dS over theta in [eps, pi - eps], xi in [0, 2 pi]."""
    if n_spins < 2:
        raise SingularityError("need N >= 2 for a two-dimensional state space")
    value, err = integrate.dblquad(
        lambda theta, xi: gauss_bonnet_integrand(n_spins, theta),
        0.0, 2 * math.pi,
        _POLE_EPS, math.pi - _POLE_EPS,
        epsabs=tol / 10, epsrel=1e-12,
    )
    if not err <= tol:
        raise ConvergenceError(f"quadrature error estimate {err:g} exceeds tol {tol:g}")
    return value


def pole_cone_ratio(n_spins: int, h: float = 1e-3) -> float:
    """lim_{theta->0} sqrt(g_xixi) / (sqrt(g_thth) theta), Richardson-extrapolated.

    The ratio is even in theta, so two evaluations cancel the O(theta^2) term.
    """
    def ratio(t):
        g_thth, g_xixi = reduced_metric(n_spins, t)
        return math.sqrt(g_xixi) / (math.sqrt(g_thth) * t)

    return (4 * ratio(h / 2) - ratio(h)) / 3


def angular_defects(n_spins: int) -> float:
    """Sum of the two conical-defect contributions, ``2 [2 pi - 2 pi * ratio]``."""
    if n_spins < 2:
        raise SingularityError("need N >= 2")
    return 2 * (2 * math.pi - 2 * math.pi * pole_cone_ratio(n_spins))


def euler_characteristic(n_spins: int, tol: float = 1e-8) -> GaussBonnetReport:
    bulk = gauss_bonnet_bulk(n_spins, tol)
    defects = angular_defects(n_spins)
    return GaussBonnetReport(n_spins, bulk, defects, (bulk + defects) / (2 * math.pi))


def initial_sphere_radius(n_spins: int) -> float:
    """Radius of the xi = 0 sphere (N/4)(dtheta^2 + sin^2 dphi^2), i.e. sqrt(g_thth)."""
    sample = fs_metric_closed(ModelParams(n_spins, 1.0, math.pi / 2))
    return math.sqrt(sample.g_thth)
