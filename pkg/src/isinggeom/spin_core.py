"""States of N spin-1/2 particles evolving under H = J (sum_i S^z_i)^2.

Two representations are provided:

* :class:`DickeState` -- N+1 amplitudes over the normalized symmetric
  (Dicke) vectors ``|N, p>``, p = number of down spins.  This is the working
  representation; everything downstream is computed from it.
* :class:`FullState` -- all 2^N computational amplitudes.  It is only used as a
  brute-force oracle and is capped at ``MAX_ORACLE_SPINS`` spins.

Basis convention for :class:`FullState`: up spin is bit 0, down spin is bit 1,
and spin 0 (the first spin) is the most significant bit.  Units: hbar = 1 and
the dimensionless time is ``xi = J t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce

import numpy as np
from scipy.special import gammaln, xlogy

from .errors import DomainError, SizeError

MAX_ORACLE_SPINS = 14
EXACT_BINOMIAL_MAX = 50

__all__ = [
    "MAX_ORACLE_SPINS",
    "ModelParams",
    "DickeState",
    "FullState",
    "HamiltonianSpectrum",
    "binomials",
    "level_energies",
    "dicke_amplitudes",
    "build_initial_state",
    "evolve",
    "evolved_state",
    "spectrum",
    "dicke_to_full",
    "full_to_dicke",
    "product_state",
    "full_evolve_oracle",
    "symmetric_occupancy",
    "overlap",
    "energy_moments",
    "full_energy_moments",
    "reduced_two_spin_density",
    "state_period",
]


@dataclass(frozen=True)
class ModelParams:
    """Particle count, coupling, initial direction (theta, phi) and time xi = J t."""

    n_spins: int
    coupling: float = 1.0
    theta: float = 0.0
    phi: float = 0.0
    xi: float = 0.0

    def __post_init__(self):
        if int(self.n_spins) != self.n_spins or self.n_spins < 1:
            raise DomainError(f"n_spins must be a positive integer, got {self.n_spins!r}")
        object.__setattr__(self, "n_spins", int(self.n_spins))
        for name in ("coupling", "theta", "phi", "xi"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if not 0.0 <= self.theta <= math.pi:
            raise DomainError(f"theta must lie in [0, pi], got {self.theta!r}")
        if self.xi < 0.0:
            raise DomainError(f"xi must be non-negative, got {self.xi!r}")

    def replace(self, **changes) -> "ModelParams":
        values = {
            "n_spins": self.n_spins,
            "coupling": self.coupling,
            "theta": self.theta,
            "phi": self.phi,
            "xi": self.xi,
        }
        values.update(changes)
        return ModelParams(**values)


def _frozen(array, dtype=complex):
    out = np.array(array, dtype=dtype)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class DickeState:
    """Amplitudes ``c_p`` on the normalized Dicke vectors ``|N, p>``, p = 0..N."""

    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = _frozen(self.amplitudes)
        if amps.ndim != 1 or amps.size < 2:
            raise DomainError("a Dicke state needs at least two amplitudes")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_spins(self) -> int:
        return self.amplitudes.size - 1

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class FullState:
    """Amplitudes over the 2^N computational configurations."""

    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = _frozen(self.amplitudes)
        n = int(round(math.log2(amps.size))) if amps.size else 0
        if amps.ndim != 1 or amps.size != 2**n or n < 1:
            raise DomainError("a full state needs 2**N amplitudes with N >= 1")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_spins(self) -> int:
        return int(round(math.log2(self.amplitudes.size)))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class HamiltonianSpectrum:
    """Distinct eigenvalues with their degeneracies, highest energy first."""

    levels: tuple

    @property
    def total_degeneracy(self) -> int:
        return sum(d for _, d in self.levels)


def binomials(n: int) -> np.ndarray:
    """C(n, p) for p = 0..n as floats.

    Exact integer arithmetic up to n = 50, log-gamma beyond.
    """
    p = np.arange(n + 1)
    if n <= EXACT_BINOMIAL_MAX:
        return np.array([math.comb(n, k) for k in p], dtype=float)
    return np.exp(_log_binomials(n))


def _log_binomials(n):
    p = np.arange(n + 1)
    return gammaln(n + 1) - gammaln(p + 1) - gammaln(n - p + 1)


def level_energies(n: int) -> np.ndarray:
    """Dimensionless energies (N - 2p)^2 / 4 of the Dicke vectors (units of J)."""
    p = np.arange(n + 1)
    return (n - 2 * p) ** 2 / 4.0


def _binomial_weights(n, theta):
    # |c_p|^2 = C(N,p) cos^{2(N-p)}(theta/2) sin^{2p}(theta/2), in log space for large N
    p = np.arange(n + 1)
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    if n <= EXACT_BINOMIAL_MAX:
        return binomials(n) * c ** (2 * (n - p)) * s ** (2 * p)
    log_c = _log_binomials(n) + xlogy(2 * (n - p), c) + xlogy(2 * p, s)
    return np.exp(log_c)


def dicke_amplitudes(n: int, theta: float, phi: float, xi: float) -> np.ndarray:
    """Evolved Dicke amplitudes without parameter validation.

    Used directly by finite-difference stencils that step outside the
    validated parameter box.
    """
    p = np.arange(n + 1)
    mags = np.sqrt(_binomial_weights(n, theta))
    return mags * np.exp(1j * (p * phi - xi * level_energies(n)))


def build_initial_state(params: ModelParams) -> DickeState:
    """The product state with every spin along (theta, phi), at xi = 0."""
    return DickeState(dicke_amplitudes(params.n_spins, params.theta, params.phi, 0.0))


def evolve(state: DickeState, params: ModelParams) -> DickeState:
    """Apply exp(-i H t); each ``c_p`` picks up exp(-i xi (N - 2p)^2 / 4)."""
    if state.n_spins != params.n_spins:
        raise DomainError("state and params disagree on the number of spins")
    phases = np.exp(-1j * params.xi * level_energies(params.n_spins))
    return DickeState(state.amplitudes * phases)


def evolved_state(params: ModelParams) -> DickeState:
    return evolve(build_initial_state(params), params)


def spectrum(n: int, coupling: float = 1.0) -> HamiltonianSpectrum:
    """Eigenvalues J (N - 2p)^2 / 4 with degeneracies 2 C(N,p) (C(N, N/2) at the centre)."""
    levels = []
    for p in range(n // 2 + 1):
        degeneracy = math.comb(n, p) if 2 * p == n else 2 * math.comb(n, p)
        levels.append((coupling * (n - 2 * p) ** 2 / 4.0, degeneracy))
    return HamiltonianSpectrum(tuple(levels))


def _check_oracle_size(n):
    if n > MAX_ORACLE_SPINS:
        raise SizeError(f"full Hilbert-space oracle is capped at {MAX_ORACLE_SPINS} spins, got {n}")


def _down_counts(n):
    idx = np.arange(2**n)
    return sum((idx >> k) & 1 for k in range(n))


def dicke_to_full(state: DickeState) -> FullState:
    """Expand onto computational configurations: each gets ``c_p / sqrt(C(N,p))``."""
    n = state.n_spins
    _check_oracle_size(n)
    scale = state.amplitudes / np.sqrt(binomials(n))
    return FullState(scale[_down_counts(n)])


def full_to_dicke(state: FullState) -> DickeState:
    """Project onto the symmetric subspace, ``c_p = <N,p|psi>``.

    The result is unnormalized when ``state`` leaks out of the symmetric sector.
    """
    n = state.n_spins
    sums = np.bincount(_down_counts(n), weights=state.amplitudes.real, minlength=n + 1) + 1j * np.bincount(
        _down_counts(n), weights=state.amplitudes.imag, minlength=n + 1
    )
    return DickeState(sums / np.sqrt(binomials(n)))


def product_state(params: ModelParams) -> FullState:
    """Initial product state built by Kronecker products (oracle path)."""
    _check_oracle_size(params.n_spins)
    single = np.array(
        [math.cos(params.theta / 2), np.exp(1j * params.phi) * math.sin(params.theta / 2)]
    )
    return FullState(reduce(np.kron, [single] * params.n_spins))


def full_evolve_oracle(state: FullState, params: ModelParams) -> FullState:
    """Multiply each configuration by exp(-i xi m^2), m = (n_up - n_down) / 2."""
    n = state.n_spins
    _check_oracle_size(n)
    if n != params.n_spins:
        raise DomainError("state and params disagree on the number of spins")
    m = (n - 2 * _down_counts(n)) / 2.0
    return FullState(state.amplitudes * np.exp(-1j * params.xi * m**2))


def symmetric_occupancy(state: FullState) -> float:
    """Weight of ``state`` inside the symmetric (Dicke) subspace."""
    return float(np.sum(np.abs(full_to_dicke(state).amplitudes) ** 2))


def overlap(params: ModelParams) -> complex:
    """Transition amplitude <Psi_i | Psi(xi)>; independent of phi."""
    w = _binomial_weights(params.n_spins, params.theta)
    return complex(np.sum(w * np.exp(-1j * params.xi * level_energies(params.n_spins))))


def energy_moments(params: ModelParams) -> tuple[float, float]:
    """Mean and variance of H in the evolved state (both time independent)."""
    w = _binomial_weights(params.n_spins, params.theta)
    w = w / w.sum()
    energies = params.coupling * level_energies(params.n_spins)
    mean = float(np.sum(w * energies))
    variance = float(np.sum(w * (energies - mean) ** 2))
    return mean, variance


def full_energy_moments(state: FullState, coupling: float = 1.0) -> tuple[float, float]:
    """Brute-force <H> and <H^2> - <H>^2 over all 2^N configurations."""
    n = state.n_spins
    _check_oracle_size(n)
    m = (n - 2 * _down_counts(n)) / 2.0
    energies = coupling * m**2
    probs = np.abs(state.amplitudes) ** 2
    probs = probs / probs.sum()
    mean = float(probs @ energies)
    second = float(probs @ energies**2)
    return mean, second - mean**2


def reduced_two_spin_density(state: FullState, spin_a: int, spin_b: int) -> np.ndarray:
    """4x4 density matrix of spins ``spin_a`` and ``spin_b`` (0-based).

    The returned matrix is ordered with ``spin_a`` as the more significant
    qubit, in the basis uu, ud, du, dd.
    """
    n = state.n_spins
    if n < 2:
        raise DomainError("need at least two spins")
    for s in (spin_a, spin_b):
        if not 0 <= s < n:
            raise IndexError(f"spin index {s} out of range for {n} spins")
    if spin_a == spin_b:
        raise IndexError("spin indices must be distinct")
    psi = state.amplitudes.reshape((2,) * n)
    rest = [k for k in range(n) if k not in (spin_a, spin_b)]
    psi = np.transpose(psi, [spin_a, spin_b] + rest).reshape(4, -1)
    rho = psi @ psi.conj().T
    return rho / np.trace(rho).real


def state_period(n: int, projective: bool = False, theta: float = 1.0, phi: float = 0.3,
                 tol: float = 1e-12) -> float:
    """Smallest detected xi-period of the evolved state.

    Candidates are multiples of pi/4 up to 8 pi.  With ``projective=False``
    the amplitudes must repeat exactly; with ``projective=True`` a global phase
    is allowed (the ray repeats).  Returns 0.0 when every candidate works,
    i.e. the state never leaves its ray (N = 1).
    """
    params = ModelParams(n, 1.0, theta, phi, 0.0)
    start = evolved_state(params).amplitudes

    def returns(period):
        amps = evolved_state(params.replace(xi=period)).amplitudes
        if projective:
            return 1.0 - abs(np.vdot(start, amps)) <= tol
        return float(np.max(np.abs(amps - start))) <= tol

    if projective and returns(1e-3):
        return 0.0
    for k in range(1, 33):
        period = k * math.pi / 4
        if returns(period):
            return period
    raise DomainError(f"no period up to 8 pi detected for N = {n}")
