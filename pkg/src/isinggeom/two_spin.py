"""The two-spin case in entanglement coordinates.

The concurrence ``C = sin^2(theta) |sin xi|`` and the reduced concurrence
``C_r = C / |sin xi| = sin^2(theta)`` parameterize the (theta, xi) state space.
The chart fixes the preimage theta in (0, pi/2]; every quantity here is even
under theta -> pi - theta so the mirror branch gives the same values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import CoordinateSingularityError, DomainError, NonPhysicalError, PoleError
from .phases import PhaseValue, topological_phase

__all__ = [
    "ConcurrencePoint",
    "TwoSpinState",
    "two_spin_state",
    "pure_concurrence",
    "wootters_concurrence",
    "concurrence_closed",
    "metric_concurrence_coords",
    "metric_reduced_coords",
    "iso_concurrence_radius",
    "curvature_of_concurrence",
    "curvature_min",
    "negativity_condition",
    "geometric_phase_of_concurrence",
    "critical_concurrence",
    "critical_concurrence_numeric",
    "aa_phase_of_concurrence",
    "two_spin_topological_phase",
    "speed_distance_opttime_of_concurrence",
    "optimal_metric_concurrence",
]

_SIGMA_YY = np.array([[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=complex)
_BOUND_TOL = 1e-12


@dataclass(frozen=True)
class ConcurrencePoint:
    """A point (C, xi) of the two-spin state space with |sin xi| > 0 and 0 <= C <= |sin xi|."""

    c: float
    xi: float

    def __post_init__(self):
        s = abs(math.sin(self.xi))
        if s < 1e-15:
            raise DomainError(f"|sin xi| must be positive, got xi = {self.xi!r}")
        if not -_BOUND_TOL <= self.c <= s + _BOUND_TOL:
            raise DomainError(f"concurrence {self.c!r} outside [0, |sin xi| = {s!r}]")
        object.__setattr__(self, "c", float(min(max(self.c, 0.0), s)))

    @classmethod
    def from_angles(cls, theta: float, xi: float) -> "ConcurrencePoint":
        return cls(concurrence_closed(theta, xi), xi)

    @property
    def abs_sin(self) -> float:
        return abs(math.sin(self.xi))

    @property
    def c_r(self) -> float:
        return min(self.c / self.abs_sin, 1.0)

    @property
    def theta(self) -> float:
        """Preimage theta in [0, pi/2] with sin^2 theta = C_r."""
        return math.asin(math.sqrt(self.c_r))


@dataclass(frozen=True)
class TwoSpinState:
    """Amplitudes on |uu>, |ud>, |du>, |dd>."""

    a: complex
    b: complex
    c: complex
    d: complex

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d], dtype=complex)


def two_spin_state(theta: float, phi: float, xi: float) -> TwoSpinState:
    return TwoSpinState(
        a=np.exp(-1j * xi) * math.cos(theta / 2) ** 2,
        b=0.5 * np.exp(1j * phi) * math.sin(theta),
        c=0.5 * np.exp(1j * phi) * math.sin(theta),
        d=np.exp(1j * (2 * phi - xi)) * math.sin(theta / 2) ** 2,
    )


def pure_concurrence(state: TwoSpinState) -> float:
    """2 |ad - bc|."""
    return 2 * abs(state.a * state.d - state.b * state.c)


def wootters_concurrence(rho) -> float:
    """max(0, l1 - l2 - l3 - l4), l_i the descending square roots of eig(rho rho~).

    Small negative eigenvalues of ``rho`` (above -1e-8) are clipped to zero.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise NonPhysicalError(f"expected a 4x4 matrix, got shape {rho.shape}")
    if abs(np.trace(rho) - 1) > 1e-8:
        raise NonPhysicalError(f"trace {np.trace(rho).real!r} differs from 1")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-8:
        raise NonPhysicalError("matrix is not Hermitian")
    p, v = np.linalg.eigh((rho + rho.conj().T) / 2)
    if p[0] < -1e-8:
        raise NonPhysicalError("matrix has negative eigenvalues")
    # rho = W W^dagger with W = V sqrt(p); the Wootters numbers are the singular
    # values of W^T (sigma_y x sigma_y) W, which stay accurate near zero where
    # square roots of eig(rho rho~) would lose half the digits.
    w = v * np.sqrt(np.clip(p, 0.0, None))
    lam = np.linalg.svd(w.T @ _SIGMA_YY @ w, compute_uv=False)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def concurrence_closed(theta: float, xi: float) -> float:
    """sin^2(theta) |sin xi|."""
    return math.sin(theta) ** 2 * abs(math.sin(xi))


def _interior(point):
    s = point.abs_sin
    if point.c <= 0.0 or point.c >= s:
        raise CoordinateSingularityError(
            f"(C, xi) chart degenerates at C = {point.c!r} (|sin xi| = {s!r})")


def metric_concurrence_coords(point: ConcurrencePoint, dc: float, dxi: float) -> float:
    """Squared line element dS^2 in (C, xi) coordinates."""
    _interior(point)
    c, s, xi = point.c, point.abs_sin, point.xi
    tan = math.tan(xi)
    g_cc = 1 / (8 * c * (s - c))
    cross = -1 / (4 * tan * (s - c))
    g_xx = c / 4 * (1 / (2 * tan**2 * (s - c)) + (2 * s - c) / math.sin(xi) ** 2)
    return g_cc * dc**2 + cross * dc * dxi + g_xx * dxi**2


def metric_reduced_coords(c_r: float, dc_r: float, dxi: float) -> float:
    """Diagonal form dC_r^2 / (8 C_r (1 - C_r)) + C_r (2 - C_r) dxi^2 / 4."""
    if not 0.0 < c_r < 1.0:
        raise CoordinateSingularityError(f"(C_r, xi) chart degenerates at C_r = {c_r!r}")
    return dc_r**2 / (8 * c_r * (1 - c_r)) + c_r * (2 - c_r) * dxi**2 / 4


def iso_concurrence_radius(c_r: float) -> float:
    """Radius of the circle of constant reduced concurrence."""
    return math.sqrt(c_r * (2 - c_r)) / 2


def curvature_of_concurrence(point: ConcurrencePoint) -> float:
    """K = 4 [2 + |sin xi| (C - 3|sin xi|) / (C - 2|sin xi|)^2]."""
    c, s = point.c, point.abs_sin
    if c == 2 * s:
        raise PoleError("pole at C = 2 |sin xi|")
    return 4 * (2 + s * (c - 3 * s) / (c - 2 * s) ** 2)


def curvature_min(xi: float) -> float:
    """Curvature at C = 1, 4 [2 - |sin xi| (3|sin xi| - 1) / (2|sin xi| - 1)^2]."""
    s = abs(math.sin(xi))
    if 2 * s == 1:
        raise PoleError("pole at |sin xi| = 1/2")
    return 4 * (2 - s * (3 * s - 1) / (2 * s - 1) ** 2)


def negativity_condition(point: ConcurrencePoint) -> bool:
    """|sin xi| (C - 3|sin xi|) < -2 (C - 2|sin xi|)^2, i.e. K < 0."""
    c, s = point.c, point.abs_sin
    return bool(s * (c - 3 * s) < -2 * (c - 2 * s) ** 2)


def geometric_phase_of_concurrence(point: ConcurrencePoint) -> PhaseValue:
    """Geometric phase in (C, xi); the arctan of the ratio is taken quadrant-aware."""
    c, s, xi = point.c, point.abs_sin, point.xi
    num = (2 * s - c) * math.sin(xi)
    den = (2 * s - c) * math.cos(xi) + c
    return PhaseValue(-math.atan2(num, den) + xi * (1 - c / (2 * s)))


def critical_concurrence(xi: float) -> float:
    """Concurrence at which the geometric phase is smallest, closed form."""
    return math.sin(xi) - math.sqrt(
        math.sin(xi) / xi * (2 - xi * math.sin(xi) - 2 * math.cos(xi))) / math.tan(xi / 2)


def critical_concurrence_numeric(xi: float, xtol: float = 1e-6) -> float:
    """Golden-section minimizer of the geometric phase over C in [0, |sin xi|]."""
    s = abs(math.sin(xi))

    def phase(c):
        return geometric_phase_of_concurrence(ConcurrencePoint(min(max(c, 0.0), s), xi)).value

    grid = np.linspace(0.0, s, 201)
    i = int(np.argmin([phase(c) for c in grid]))
    if i in (0, grid.size - 1):
        return float(grid[i])
    res = optimize.minimize_scalar(phase, bracket=(grid[i - 1], grid[i], grid[i + 1]),
                                   method="golden", options={"xtol": xtol * 1e-3})
    return float(res.x)


def aa_phase_of_concurrence(point: ConcurrencePoint) -> PhaseValue:
    """-pi C / |sin xi|."""
    return PhaseValue(-math.pi * point.c / point.abs_sin)


def two_spin_topological_phase() -> PhaseValue:
    return topological_phase(2)


def speed_distance_opttime_of_concurrence(point: ConcurrencePoint,
                                          coupling: float = 1.0) -> tuple[float, float, float]:
    """(V, S, tau) as functions of the concurrence.

    V = (J / (2|sin xi|)) sqrt(C (2|sin xi| - C)), S = (xi / J) V and
    tau = S / V_max with V_max = J / 2.
    """
    if coupling == 0.0:
        raise DomainError("need a non-zero coupling")
    c, s = point.c, point.abs_sin
    j = abs(coupling)
    root = math.sqrt(max(c * (2 * s - c), 0.0))
    v = j / (2 * s) * root
    dist = point.xi / j * v
    tau = dist / (j / 2)
    return v, dist, tau


def optimal_metric_concurrence(point: ConcurrencePoint) -> float:
    """Coefficient of dxi_opt^2 on the optimal state circle, C (2|sin xi| - C) / (4 sin^2 xi)."""
    c, s = point.c, point.abs_sin
    return c / (4 * s**2) * (2 * s - c)
