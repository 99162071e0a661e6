"""Evolution speed, Fubini-Study distance and the time-optimal (brachistochrone) solution."""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import DomainError
from .geometry import reduced_metric
from .spin_core import (
    MAX_ORACLE_SPINS,
    ModelParams,
    energy_moments,
    full_energy_moments,
    full_evolve_oracle,
    product_state,
)

ORACLE_SPEED_MAX = 12

__all__ = [
    "BrachistochroneSolution",
    "speed_closed",
    "energy_uncertainty",
    "speed_from_energy",
    "distance",
    "theta_max",
    "brachistochrone",
    "optimal_time_ratio",
    "verify_speed_is_argmax",
]


@dataclass(frozen=True)
class BrachistochroneSolution:
    n_spins: int
    coupling: float
    xi: float
    theta_max: float
    v_max: float
    s_min: float
    t_min: float
    optimal_metric_gxixi: float

    @property
    def t(self) -> float:
        return self.xi / self.coupling


def _require_coupling(coupling):
    if coupling == 0.0:
        raise DomainError("dynamics needs a non-zero coupling")


def speed_closed(params: ModelParams) -> float:
    """V = (J/2) sqrt(N (N-1) sin^2 [N - 1 - (N - 3/2) sin^2]) = |J| sqrt(g_xixi)."""
    _require_coupling(params.coupling)
    _, g_xixi = reduced_metric(params.n_spins, params.theta)
    return abs(params.coupling) * math.sqrt(max(g_xixi, 0.0))


def energy_uncertainty(params: ModelParams, oracle: bool | None = None) -> float:
    """Delta E = sqrt(<H^2> - <H>^2).

    ``oracle=None`` uses the full 2^N enumeration up to 12 spins and the
    Dicke weights beyond.
    """
    if oracle is None:
        oracle = params.n_spins <= ORACLE_SPEED_MAX
    if oracle:
        if params.n_spins > MAX_ORACLE_SPINS:
            raise DomainError(f"oracle path limited to {MAX_ORACLE_SPINS} spins")
        state = full_evolve_oracle(product_state(params), params)
        _, variance = full_energy_moments(state, params.coupling)
    else:
        _, variance = energy_moments(params)
    return math.sqrt(max(variance, 0.0))


def speed_from_energy(params: ModelParams, oracle: bool | None = None) -> float:
    """2 Delta E.

    This equals the speed measured with the Fubini-Study metric scaled by 4
    (``ds^2 = 4 (1 - |<psi|psi + dpsi>|^2)``).  The metric used elsewhere in
    this package has no such factor, and its speed :func:`speed_closed` equals
    ``Delta E``.
    """
    _require_coupling(params.coupling)
    return 2 * energy_uncertainty(params, oracle)


def distance(params: ModelParams) -> float:
    """Fubini-Study length travelled by time t = xi / J; the speed is constant."""
    return params.xi / abs(params.coupling) * speed_closed(params)


def theta_max(n_spins: int) -> float:
    """Polar angle in (0, pi/2] maximizing the speed, sin^2 = (N-1)/(2N-3)."""
    if n_spins < 2:
        raise DomainError("need N >= 2")
    return math.asin(math.sqrt((n_spins - 1) / (2 * n_spins - 3)))


def optimal_time_ratio(n_spins: int) -> float:
    """t_min / t = sqrt(2N - 3) / (N - 1)."""
    if n_spins < 2:
        raise DomainError("need N >= 2")
    return math.sqrt(2 * n_spins - 3) / (n_spins - 1)


def brachistochrone(n_spins: int, coupling: float = 1.0, xi: float = 1.0) -> BrachistochroneSolution:
    """Fastest speed, shortest (theta = pi/2) distance and their ratio, the minimal time."""
    if n_spins < 2:
        raise DomainError("need N >= 2")
    _require_coupling(coupling)
    n = n_spins
    j = abs(coupling)
    v_max = j * (n - 1) * math.sqrt(n * (n - 1) / (8 * (2 * n - 3)))
    s_min = xi / 2 * math.sqrt(n * (n - 1) / 2)
    th = theta_max(n)
    return BrachistochroneSolution(
        n_spins=n,
        coupling=coupling,
        xi=xi,
        theta_max=th,
        v_max=v_max,
        s_min=s_min,
        t_min=s_min / v_max,
        optimal_metric_gxixi=reduced_metric(n, th)[1],
    )


def _speed_mp(n, theta):
    s2 = mpmath.sin(theta) ** 2
    return mpmath.sqrt(n * (n - 1) * s2 * (n - 1 - (n - mpmath.mpf(1.5)) * s2)) / 2


def _golden_mp(f, lo, hi, xtol):
    """Golden-section maximizer of f on [lo, hi] in mpmath arithmetic."""
    inv_phi = (mpmath.sqrt(5) - 1) / 2
    a, b = mpmath.mpf(lo), mpmath.mpf(hi)
    c, d = b - inv_phi * (b - a), a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > xtol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    return (a + b) / 2


def verify_speed_is_argmax(n_spins: int, grid_points: int = 1000, xtol: float = 1e-10) -> dict:
    """Locate the speed maximum numerically and compare it with :func:`theta_max`.

    Coarse grid over (0, pi) followed by golden-section refinement of the
    bracketing cell.  For N = 2 the maximum is flat to fourth order, so in
    double precision the refinement stalls near eps**(1/4); the refinement
    therefore runs in 60-digit arithmetic.  The reported angle is folded into
    (0, pi/2].
    """
    params = ModelParams(n_spins, 1.0, 0.0)
    grid = np.linspace(0.0, math.pi, grid_points + 1)[1:-1]
    values = np.array([speed_closed(params.replace(theta=float(t))) for t in grid])
    i = int(np.argmax(values))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]
    with mpmath.workdps(60):
        found = float(_golden_mp(lambda t: _speed_mp(n_spins, t), lo, hi, mpmath.mpf(xtol) * 1e-3))
    found = min(found, math.pi - found)
    expected = theta_max(n_spins)
    return {
        "n_spins": n_spins,
        "theta_numeric": found,
        "theta_closed": expected,
        "abs_error": abs(found - expected),
        "v_numeric": speed_closed(params.replace(theta=found)),
        "v_closed_max": brachistochrone(n_spins).v_max,
    }
