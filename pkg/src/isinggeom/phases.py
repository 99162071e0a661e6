"""Total, dynamic, geometric, Aharonov-Anandan and topological phases.

All phases are in radians.  Comparisons of cyclic quantities go through
:func:`phase_distance`, the distance on the circle.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize

from .errors import DomainError, PoleError, UndefinedPhaseError
from .spin_core import (
    ModelParams,
    _binomial_weights,
    dicke_amplitudes,
    evolved_state,
    level_energies,
    overlap,
)

log = logging.getLogger(__name__)

ZERO_OVERLAP = 1e-13
AA_CYCLE = 2 * math.pi

__all__ = [
    "PhaseValue",
    "PhaseDecomposition",
    "principal",
    "phase_distance",
    "overlap_sweep",
    "unwrap_sweep",
    "total_phase",
    "total_phase_arctan",
    "dynamic_phase",
    "geometric_phase",
    "geometric_phase_closed",
    "geometric_phase_numeric",
    "short_time_overlap",
    "short_time_geometric_phase",
    "short_time_order",
    "aa_phase_numeric",
    "aa_phase_closed",
    "topological_phase",
    "aa_phase_from_curvature",
]


def principal(angle: float) -> float:
    """Map an angle into (-pi, pi]."""
    out = math.remainder(angle, 2 * math.pi)
    return math.pi if out == -math.pi else out


def phase_distance(a: float, b: float) -> float:
    """min_k |a - b + 2 pi k|."""
    return abs(math.remainder(a - b, 2 * math.pi))


@dataclass(frozen=True)
class PhaseValue:
    """An angle together with the number of 2 pi unwinds applied to reach it.

    ``value`` is the unwrapped angle, ``principal`` its representative in
    (-pi, pi] and ``value == principal + 2 pi branch_count``.
    """

    value: float
    zero_crossings: tuple = ()

    @property
    def principal(self) -> float:
        return principal(self.value)

    @property
    def branch_count(self) -> int:
        return int(round((self.value - self.principal) / (2 * math.pi)))

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class PhaseDecomposition:
    total: PhaseValue
    dynamic: PhaseValue
    geometric: PhaseValue


def overlap_sweep(n: int, theta: float, xis) -> np.ndarray:
    """<Psi_i|Psi(xi)> on a grid of times."""
    w = _binomial_weights(n, theta)
    xis = np.asarray(xis, dtype=float)
    return np.exp(-1j * np.outer(xis, level_energies(n))) @ w


def unwrap_sweep(values) -> tuple[np.ndarray, list]:
    """Continuously unwrap arg(values) along a path.

    Samples with ``|value| < ZERO_OVERLAP`` have no phase; they are returned as
    NaN, the path is split there and unwrapping restarts from the principal
    branch.  Returns the unwrapped phases and the indices of the split points.
    """
    values = np.asarray(values)
    out = np.full(values.shape, np.nan)
    zero = np.abs(values) < ZERO_OVERLAP
    splits = [int(i) for i in np.flatnonzero(zero)]
    bounds = [-1] + splits + [values.size]
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        if hi - lo > 1:
            out[lo + 1:hi] = np.unwrap(np.angle(values[lo + 1:hi]))
    if splits:
        log.info("overlap vanishes at %d sample(s); unwrapping restarted after each", len(splits))
    return out, splits


def total_phase(params: ModelParams, unwrap_path=None) -> PhaseValue:
    """arg <Psi_i|Psi(xi)>.

    With ``unwrap_path`` (increasing xi values, those beyond ``params.xi``
    ignored) the argument is followed continuously from the first path point
    to ``params.xi``; otherwise the principal value is returned.
    """
    z = overlap(params)
    if abs(z) < ZERO_OVERLAP:
        raise UndefinedPhaseError(f"overlap vanishes at xi = {params.xi!r}", (params.xi,))
    if unwrap_path is None:
        return PhaseValue(principal(math.atan2(z.imag, z.real)))
    path = np.asarray(unwrap_path, dtype=float)
    path = np.append(path[path < params.xi], params.xi)
    phases, splits = unwrap_sweep(overlap_sweep(params.n_spins, params.theta, path))
    crossings = tuple(float(path[i]) for i in splits)
    return PhaseValue(float(phases[-1]), crossings)


def total_phase_arctan(params: ModelParams) -> float:
    """The single-argument arctan of Im/Re of the overlap, taken literally.

    It agrees with :func:`total_phase` only modulo pi.
    """
    w = _binomial_weights(params.n_spins, params.theta)
    arg = params.xi * level_energies(params.n_spins)
    num, den = np.sum(w * np.sin(arg)), np.sum(w * np.cos(arg))
    if den == 0.0:
        return -math.copysign(math.pi / 2, num)
    return -math.atan(num / den)


def _mean_level(n, theta):
    # <(sum S^z)^2> = (N/4)(N cos^2 + sin^2)
    return n / 4 * (n * math.cos(theta) ** 2 + math.sin(theta) ** 2)


def dynamic_phase(params: ModelParams) -> PhaseValue:
    """-(xi N / 4)(N cos^2 theta + sin^2 theta) = -xi <H> / J."""
    return PhaseValue(-params.xi * _mean_level(params.n_spins, params.theta))


def geometric_phase(params: ModelParams) -> PhaseDecomposition:
    """Split the total phase into its dynamic and geometric parts."""
    total = total_phase(params)
    dynamic = dynamic_phase(params)
    return PhaseDecomposition(total, dynamic, PhaseValue(total.value - dynamic.value))


def geometric_phase_closed(params: ModelParams) -> float:
    """Closed-form geometric phase, with the arctan of the overlap ratio read quadrant-aware."""
    w = _binomial_weights(params.n_spins, params.theta)
    arg = params.xi * level_energies(params.n_spins)
    num, den = np.sum(w * np.sin(arg)), np.sum(w * np.cos(arg))
    if math.hypot(num, den) < ZERO_OVERLAP:
        raise UndefinedPhaseError(f"overlap vanishes at xi = {params.xi!r}", (params.xi,))
    return -math.atan2(num, den) + params.xi * _mean_level(params.n_spins, params.theta)


def _connection(n, theta, xis):
    """Im <Psi(xi)| d/dxi Psi(xi)> from exact per-level phase derivatives."""
    energies = level_energies(n)
    c = dicke_amplitudes(n, theta, 0.0, 0.0) * np.exp(-1j * np.outer(xis, energies))
    dc = -1j * energies * c
    return np.sum(c.conj() * dc, axis=1)


def geometric_phase_numeric(params: ModelParams, steps: int = 10_000) -> PhaseValue:
    """arg <Psi_i|Psi(xi)> - Im int_0^xi <Psi|d Psi>, the integral by trapezoid rule."""
    if steps < 10:
        raise DomainError("steps must be at least 10")
    grid = np.linspace(0.0, params.xi, steps + 1)
    integral = integrate.trapezoid(_connection(params.n_spins, params.theta, grid).imag, grid)
    return PhaseValue(total_phase(params).value - float(integral))


def _short_time_bracket(n, theta):
    c2 = math.cos(theta) ** 2
    return 4 * (n - 1) * (n + 2) * c2 - (n - 3) * (n - 2) * math.sin(2 * theta) ** 2 + 4 * (3 * n - 2)


def short_time_overlap(params: ModelParams) -> complex:
    """Second-order expansion of the overlap in xi, reference coefficients."""
    n, xi = params.n_spins, params.xi
    real = 1 + xi**2 * n * (n - 1) / 64 * _short_time_bracket(n, params.theta)
    return complex(real, -xi * _mean_level(n, params.theta))


def short_time_geometric_phase(params: ModelParams) -> float:
    n, xi = params.n_spins, params.xi
    mean = _mean_level(n, params.theta)
    den = 4 + xi**2 * n * (n - 1) / 16 * _short_time_bracket(n, params.theta)
    return -math.atan(4 * xi * mean / den) + xi * mean


def short_time_order(params: ModelParams, xis=None) -> float:
    """Log-log slope of |short_time_overlap - overlap| against xi."""
    xis = np.geomspace(1e-4, 1e-2, 9) if xis is None else np.asarray(xis)
    errors = [abs(short_time_overlap(params.replace(xi=x)) - overlap(params.replace(xi=x))) for x in xis]
    slope, _ = np.polyfit(np.log(xis), np.log(errors), 1)
    return float(slope)


def _overlap_zeros(n, theta, grid, values):
    """Locations in ``grid`` where the overlap passes through (or grazes) zero."""
    mags = np.abs(values)
    found = []
    for i in range(1, len(grid) - 1):
        if mags[i] <= mags[i - 1] and mags[i] <= mags[i + 1] and mags[i] < 1e-2:
            res = optimize.minimize_scalar(
                lambda x: abs(overlap_sweep(n, theta, [x])[0]) ** 2,
                bounds=(grid[i - 1], grid[i + 1]), method="bounded",
                options={"xatol": 1e-12},
            )
            if math.sqrt(res.fun) < 1e-7:
                found.append(float(res.x))
    return tuple(found)


def aa_phase_numeric(params: ModelParams, period: float = AA_CYCLE, steps: int = 4096,
                     strict: bool = False) -> PhaseValue:
    """Cyclic geometric phase ``int dPhi_tot + i int <Psi|d Psi>`` over one cycle.

    The total-phase term is accumulated from continuously unwrapped
    increments of arg <Psi_i|Psi(xi)>; the connection term by trapezoid rule.
    The default cycle is xi in [0, 2 pi], which closes the ray for every N.
    When the overlap passes through zero on the cycle the crossing locations
    are logged and attached to the result; ``strict=True`` raises instead.
    The result is meaningful modulo 2 pi.
    """
    n, theta = params.n_spins, params.theta
    if n < 2:
        raise DomainError("need N >= 2")
    grid = np.linspace(0.0, period, steps + 1)
    values = overlap_sweep(n, theta, grid)
    end = evolved_state(params.replace(xi=period)).amplitudes
    start = evolved_state(params.replace(xi=0.0)).amplitudes
    if abs(abs(np.vdot(start, end)) - 1) > 1e-10:
        raise DomainError(f"xi = {period!r} does not close the cycle for N = {n}")
    crossings = _overlap_zeros(n, theta, grid, values)
    if crossings:
        if strict:
            raise UndefinedPhaseError("overlap crosses zero on the cycle", crossings)
        log.warning("overlap crosses zero at xi = %s for N=%d theta=%.6g", crossings, n, theta)
    phases, _ = unwrap_sweep(values)
    keep = ~np.isnan(phases)
    increments = np.angle(np.exp(1j * np.diff(phases[keep])))
    d_total = float(np.sum(increments))
    conn = _connection(n, theta, grid)
    return PhaseValue(d_total + float(integrate.trapezoid((1j * conn).real, grid)), crossings)


def aa_phase_closed(params: ModelParams) -> PhaseValue:
    """-(pi/2) N (N-1) sin^2 theta."""
    if params.n_spins < 2:
        raise DomainError("need N >= 2")
    n = params.n_spins
    return PhaseValue(-math.pi / 2 * n * (n - 1) * math.sin(params.theta) ** 2)


def topological_phase(n_spins: int) -> PhaseValue:
    """-(pi/2) N^2."""
    if n_spins < 1:
        raise DomainError("need N >= 1")
    return PhaseValue(-math.pi / 2 * n_spins**2)


def aa_phase_from_curvature(n_spins: int, k: float) -> float:
    """AA phase written through the curvature K, evaluated literally.

    ``(pi N (N-1) / 2) (-56 + 3 N (16 - (N-1) K)) / ((2N - 3)(N K - 16))``.
    It does not reproduce :func:`aa_phase_closed`; see the verification report.
    """
    n = n_spins
    if n < 2:
        raise DomainError("need N >= 2")
    den = (2 * n - 3) * (n * k - 16)
    if den == 0:
        raise PoleError(f"pole at K = 16/N = {16 / n!r}")
    return math.pi * n * (n - 1) / 2 * (-56 + 3 * n * (16 - (n - 1) * k)) / den
