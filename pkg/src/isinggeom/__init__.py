"""Geometry, phases and speed limits of an all-to-all Ising spin register.

The model is ``H = J (sum_i S_i^z)^2`` acting on the product state with every
spin along (theta, phi); the dimensionless time is ``xi = J t``.
"""

from .errors import (
    ConvergenceError,
    CoordinateSingularityError,
    DomainError,
    IsingGeomError,
    NonPhysicalError,
    PoleError,
    SingularityError,
    SizeError,
    StepError,
    UndefinedPhaseError,
)
from .spin_core import DickeState, FullState, ModelParams, evolved_state, overlap, spectrum
from .geometry import fs_metric_closed, fs_metric_numeric, gaussian_curvature_closed, euler_characteristic
from .phases import PhaseValue, aa_phase_closed, aa_phase_numeric, geometric_phase, topological_phase
from .dynamics import brachistochrone, speed_closed
from .two_spin import ConcurrencePoint, concurrence_closed, wootters_concurrence

__version__ = "0.1.0"

__all__ = [
    "ConcurrencePoint",
    "ConvergenceError",
    "CoordinateSingularityError",
    "DickeState",
    "DomainError",
    "FullState",
    "IsingGeomError",
    "ModelParams",
    "NonPhysicalError",
    "PhaseValue",
    "PoleError",
    "SingularityError",
    "SizeError",
    "StepError",
    "UndefinedPhaseError",
    "aa_phase_closed",
    "aa_phase_numeric",
    "brachistochrone",
    "concurrence_closed",
    "euler_characteristic",
    "evolved_state",
    "fs_metric_closed",
    "fs_metric_numeric",
    "gaussian_curvature_closed",
    "geometric_phase",
    "overlap",
    "spectrum",
    "speed_closed",
    "topological_phase",
    "wootters_concurrence",
]
