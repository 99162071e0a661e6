"""Tabulated figure data and generic parameter sweeps.

Tables are returned as ``(header, rows)`` where ``rows`` is a list of lists
of floats; ``None`` marks a cell where the quantity is undefined (a pole of
the chart, a vanishing overlap, or a concurrence outside the series range).
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from . import dynamics, geometry, phases, spin_core, two_spin
from .errors import DomainError, IsingGeomError
from .spin_core import ModelParams

THETA_POINTS = 721
C_POINTS = 501
DEFAULT_N = (2, 3, 4, 5)
DEFAULT_XI = (0.5, 1.0, math.pi / 2, 2.5)

THETA_FIGURES = ("curvature_theta", "aa_theta", "speed_theta")
C_FIGURES = ("k_of_c", "phig_of_c", "aa_of_c", "v_of_c", "s_of_c", "tau_of_c")
FIGURE_IDS = THETA_FIGURES + C_FIGURES


def format_label(value: float) -> str:
    return format(float(value), ".17g")


def _theta_value(fid, n, theta, coupling):
    params = ModelParams(n, coupling, theta)
    if fid == "curvature_theta":
        if theta <= 0.0 or theta >= math.pi:
            return None
        return geometry.gaussian_curvature_closed(params).k
    if fid == "aa_theta":
        return phases.aa_phase_closed(params).value
    return dynamics.speed_closed(params)


def _c_value(fid, c, xi, coupling):
    point = two_spin.ConcurrencePoint(c, xi)
    if fid == "k_of_c":
        return two_spin.curvature_of_concurrence(point)
    if fid == "phig_of_c":
        return two_spin.geometric_phase_of_concurrence(point).value
    if fid == "aa_of_c":
        return two_spin.aa_phase_of_concurrence(point).value
    v, s, tau = two_spin.speed_distance_opttime_of_concurrence(point, coupling)
    return {"v_of_c": v, "s_of_c": s, "tau_of_c": tau}[fid]


def figure_table(figure_id: str, n_values=DEFAULT_N, xi_values=DEFAULT_XI, coupling: float = 1.0,
                 theta_points: int = THETA_POINTS, c_points: int = C_POINTS):
    """Data behind one figure.

    theta figures have one column per N; concurrence figures one column per
    xi, sharing a C grid on [0, max min(1, |sin xi|)] with empty cells beyond
    each series' own range.
    """
    if figure_id not in FIGURE_IDS:
        raise KeyError(f"unknown figure {figure_id!r}; choose from {', '.join(FIGURE_IDS)}")
    if figure_id in THETA_FIGURES:
        n_values = [int(n) for n in n_values]
        if any(n < 2 for n in n_values):
            raise DomainError("figure series need N >= 2")
        grid = np.linspace(0.0, math.pi, theta_points)
        header = ["theta"] + [f"N={n}" for n in n_values]
        rows = [[float(t)] + [_theta_value(figure_id, n, float(t), coupling) for n in n_values]
                for t in grid]
        return header, rows
    limits = [min(1.0, abs(math.sin(xi))) for xi in xi_values]
    if any(s < 1e-12 for s in limits):
        raise DomainError("concurrence figures need |sin xi| > 0 for every series")
    grid = np.linspace(0.0, max(limits), c_points)
    header = ["C"] + [f"xi={format_label(xi)}" for xi in xi_values]
    rows = []
    for c in grid:
        row = [float(c)]
        for xi, s in zip(xi_values, limits):
            row.append(_c_value(figure_id, float(c), float(xi), coupling) if c <= s else None)
        rows.append(row)
    return header, rows


# -- sweeps -------------------------------------------------------------------

SWEEP_AXES = ("n", "theta", "phi", "xi")


def _pair_concurrence(p):
    if p.n_spins < 2 or p.n_spins > spin_core.MAX_ORACLE_SPINS:
        return None
    rho = spin_core.reduced_two_spin_density(spin_core.evolved_state(p), 0, 1)
    return two_spin.wootters_concurrence(rho)


def _curvature(p):
    if p.n_spins < 2 or p.theta <= 0.0 or p.theta >= math.pi:
        return None
    return geometry.gaussian_curvature_closed(p).k


def _total_phase(p):
    return phases.total_phase(p).value


def _geometric_phase(p):
    return phases.geometric_phase_closed(p)


SWEEP_QUANTITIES = {
    "speed": dynamics.speed_closed,
    "distance": dynamics.distance,
    "energy_uncertainty": lambda p: dynamics.energy_uncertainty(p, oracle=False),
    "concurrence": lambda p: two_spin.concurrence_closed(p.theta, p.xi),
    "pair_concurrence": _pair_concurrence,
    "curvature": _curvature,
    "g_xixi": lambda p: geometry.fs_metric_closed(p).g_xixi,
    "overlap_abs": lambda p: abs(spin_core.overlap(p)),
    "total_phase": _total_phase,
    "dynamic_phase": lambda p: phases.dynamic_phase(p).value,
    "geometric_phase": _geometric_phase,
    "aa_phase": lambda p: phases.aa_phase_closed(p).value,
}


def sweep_table(quantity: str, grids: dict, n_values=(2,), coupling: float = 1.0,
                defaults=None):
    """Evaluate a registered quantity over the Cartesian product of ``grids``.

    ``grids`` maps an axis name (theta, phi, xi) to an array of values.  Rows
    run row-major: N outermost, then the grid axes in the order given.
    Points where the quantity is undefined give an empty cell.
    """
    if quantity not in SWEEP_QUANTITIES:
        raise KeyError(f"unknown quantity {quantity!r}; choose from {', '.join(sorted(SWEEP_QUANTITIES))}")
    fn = SWEEP_QUANTITIES[quantity]
    base = {"theta": math.pi / 2, "phi": 0.0, "xi": 0.0}
    base.update(defaults or {})
    axes = list(grids)
    for axis in axes:
        if axis not in base:
            raise KeyError(f"unknown sweep axis {axis!r}")
        if len(grids[axis]) < 1:
            raise DomainError(f"grid for {axis!r} is empty")
    header = ["n"] + axes + [quantity]
    rows = []
    for n in n_values:
        for combo in itertools.product(*(grids[a] for a in axes)):
            point = dict(base, **{a: float(v) for a, v in zip(axes, combo)})
            params = ModelParams(int(n), coupling, point["theta"], point["phi"], point["xi"])
            try:
                value = fn(params)
            except IsingGeomError:
                value = None
            rows.append([int(n)] + [float(v) for v in combo] + [None if value is None else float(value)])
    return header, rows
