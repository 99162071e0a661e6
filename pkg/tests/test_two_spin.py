import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isinggeom import dynamics, geometry, phases
from isinggeom import two_spin as ts
from isinggeom.errors import CoordinateSingularityError, DomainError, NonPhysicalError
from isinggeom.spin_core import ModelParams, dicke_to_full, evolved_state

xis = st.floats(0.05, 2 * math.pi - 0.05).filter(lambda x: abs(math.sin(x)) > 1e-2)


def projector(vec):
    vec = np.asarray(vec, dtype=complex)
    return np.outer(vec, vec.conj())


def test_state_examples():
    xi = 0.8
    np.testing.assert_allclose(ts.two_spin_state(0.0, 0.3, xi).vector, [np.exp(-1j * xi), 0, 0, 0], atol=1e-15)
    for theta, phi, xi in [(0.4, 1.0, 2.0), (2.5, 5.0, 0.1), (math.pi / 2, 0.0, 3.0)]:
        v = ts.two_spin_state(theta, phi, xi).vector
        assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-15)
        full = dicke_to_full(evolved_state(ModelParams(2, 1.0, theta, phi, xi))).amplitudes
        assert np.max(np.abs(v - full)) <= 1e-14


def test_wootters_examples():
    bell = np.array([1, 0, 0, 1]) / math.sqrt(2)
    assert ts.wootters_concurrence(projector(bell)) == pytest.approx(1.0, abs=1e-14)
    prod = np.kron([math.cos(0.3), math.sin(0.3)], [0.6, 0.8j])
    assert ts.wootters_concurrence(projector(prod)) == pytest.approx(0.0, abs=1e-14)
    assert ts.wootters_concurrence(np.eye(4) / 4) == 0.0


def test_wootters_rejects_unphysical():
    with pytest.raises(NonPhysicalError):
        ts.wootters_concurrence(np.eye(4))
    with pytest.raises(NonPhysicalError):
        ts.wootters_concurrence(np.diag([1.5, -0.5, 0, 0]))
    with pytest.raises(NonPhysicalError):
        ts.wootters_concurrence(np.eye(3) / 3)


@settings(max_examples=100)
@given(st.floats(0, math.pi), st.floats(0, 2 * math.pi), st.floats(0, 4 * math.pi))
def test_concurrence_closed_matches_oracles(theta, phi, xi):
    state = ts.two_spin_state(theta, phi, xi)
    closed = ts.concurrence_closed(theta, xi)
    assert abs(ts.wootters_concurrence(projector(state.vector)) - closed) <= 1e-12
    assert abs(ts.pure_concurrence(state) - closed) <= 1e-12


def test_concurrence_closed_examples():
    assert ts.concurrence_closed(math.pi / 2, math.pi / 2) == 1.0
    assert ts.concurrence_closed(0.0, 1.3) == 0.0
    assert ts.concurrence_closed(1.0, 0.7 + math.pi) == pytest.approx(ts.concurrence_closed(1.0, 0.7), abs=1e-15)


def test_concurrence_point_validation():
    with pytest.raises(DomainError):
        ts.ConcurrencePoint(0.5, 0.0)
    with pytest.raises(DomainError):
        ts.ConcurrencePoint(0.9, 0.5)
    p = ts.ConcurrencePoint.from_angles(2.0, 1.0)
    assert 0 < p.theta <= math.pi / 2
    assert math.sin(p.theta) ** 2 == pytest.approx(math.sin(2.0) ** 2, abs=1e-14)


def _theta_xi_line_element(theta, dtheta, dxi):
    g_thth, g_xixi = geometry.reduced_metric(2, theta)
    return g_thth * dtheta**2 + g_xixi * dxi**2


@settings(max_examples=60)
@given(st.floats(0.05, math.pi / 2 - 0.05), xis, st.floats(-1, 1), st.floats(-1, 1))
def test_concurrence_metric_is_pullback(theta, xi, dtheta, dxi):
    s = abs(math.sin(xi))
    point = ts.ConcurrencePoint.from_angles(theta, xi)
    dc = 2 * math.sin(theta) * math.cos(theta) * s * dtheta + math.sin(theta) ** 2 * np.sign(math.sin(xi)) * math.cos(
        xi) * dxi
    expected = _theta_xi_line_element(theta, dtheta, dxi)
    assert ts.metric_concurrence_coords(point, dc, dxi) == pytest.approx(expected, rel=1e-8, abs=1e-12)
    c_r = math.sin(theta) ** 2
    dc_r = 2 * math.sin(theta) * math.cos(theta) * dtheta
    assert abs(ts.metric_reduced_coords(c_r, dc_r, dxi) - expected) <= 1e-10 * max(1.0, expected)


def test_concurrence_metric_boundaries():
    with pytest.raises(CoordinateSingularityError):
        ts.metric_concurrence_coords(ts.ConcurrencePoint(0.0, 1.0), 0.1, 0.1)
    with pytest.raises(CoordinateSingularityError):
        ts.metric_concurrence_coords(ts.ConcurrencePoint(math.sin(1.0), 1.0), 0.1, 0.1)
    with pytest.raises(CoordinateSingularityError):
        ts.metric_reduced_coords(1.0, 0.1, 0.1)


def test_iso_concurrence_radius():
    assert ts.iso_concurrence_radius(1.0) == 0.5
    assert ts.iso_concurrence_radius(0.0) == 0.0


def test_curvature_examples():
    for xi in (0.3, 1.0, 2.0):
        s = abs(math.sin(xi))
        assert ts.curvature_of_concurrence(ts.ConcurrencePoint(0.0, xi)) == 5.0
        assert ts.curvature_of_concurrence(ts.ConcurrencePoint(s, xi)) == pytest.approx(0.0, abs=1e-14)
    assert ts.curvature_min(math.pi / 2) == pytest.approx(0.0, abs=1e-15)
    assert ts.curvature_of_concurrence(ts.ConcurrencePoint(1.0, math.pi / 2)) == pytest.approx(0.0, abs=1e-15)


def test_curvature_tends_to_initial_sphere_value():
    # K -> 8 as xi -> 0 at fixed C/|sin xi| below 1: the small-xi limit of the formula
    for c_r in (0.1, 0.5):
        xi = 1e-8
        k = ts.curvature_of_concurrence(ts.ConcurrencePoint(c_r * math.sin(xi), xi))
        assert k < 8
        assert ts.negativity_condition(ts.ConcurrencePoint(c_r * math.sin(xi), xi)) is False


def test_negativity_condition_matches_sign_of_k():
    assert ts.negativity_condition(ts.ConcurrencePoint(0.0, math.pi / 2)) is False
    count = 0
    for xi in np.linspace(0.01, 2 * math.pi - 0.01, 100):
        s = abs(math.sin(xi))
        if s < 1e-3:
            continue
        for c in np.linspace(0.0, s, 100):
            point = ts.ConcurrencePoint(float(c), float(xi))
            assert ts.negativity_condition(point) == (ts.curvature_of_concurrence(point) < 0)
            count += 1
    assert count > 9000


def test_geometric_phase_examples():
    for xi in (0.4, 1.5, 2.9):
        assert ts.geometric_phase_of_concurrence(ts.ConcurrencePoint(0.0, xi)).value == pytest.approx(0.0, abs=1e-14)


@pytest.mark.parametrize("xi", [1.0, 2.0])
def test_critical_concurrence(xi):
    assert abs(ts.critical_concurrence_numeric(xi) - ts.critical_concurrence(xi)) <= 1e-4


def test_aa_phase_examples():
    xi = 1.2
    s = abs(math.sin(xi))
    assert ts.aa_phase_of_concurrence(ts.ConcurrencePoint(0.0, xi)).value == 0.0
    assert ts.aa_phase_of_concurrence(ts.ConcurrencePoint(s, xi)).value == pytest.approx(-math.pi)
    assert ts.two_spin_topological_phase().value == -2 * math.pi
    values = [ts.aa_phase_of_concurrence(ts.ConcurrencePoint(c, xi)).value for c in np.linspace(0, s, 50)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_speed_distance_time_examples():
    xi, j = 1.1, 1.7
    s = abs(math.sin(xi))
    assert ts.speed_distance_opttime_of_concurrence(ts.ConcurrencePoint(0.0, xi), j) == (0.0, 0.0, 0.0)
    v, dist, tau = ts.speed_distance_opttime_of_concurrence(ts.ConcurrencePoint(s, xi), j)
    assert v == pytest.approx(j / 2, rel=1e-14)
    assert tau == pytest.approx(xi / j, rel=1e-14)


def test_speed_profile_and_optimal_time():
    xi = 2.0
    s = abs(math.sin(xi))
    grid = np.linspace(0.0, s, 201)
    out = [ts.speed_distance_opttime_of_concurrence(ts.ConcurrencePoint(c, xi)) for c in grid]
    speeds = [o[0] for o in out]
    assert all(a < b for a, b in zip(speeds, speeds[1:]))  # C'_c = |sin xi| sits at the end of the range
    assert all(o[2] < xi for o in out[:-1])
    assert out[-1][2] == pytest.approx(xi, rel=1e-14)


def test_optimal_metric():
    xi = 0.9
    s = abs(math.sin(xi))
    assert ts.optimal_metric_concurrence(ts.ConcurrencePoint(0.0, xi)) == 0.0
    assert ts.optimal_metric_concurrence(ts.ConcurrencePoint(s, xi)) == pytest.approx(0.25, abs=1e-15)
    for c in np.linspace(0, s, 17):
        point = ts.ConcurrencePoint(float(c), xi)
        v, _, _ = ts.speed_distance_opttime_of_concurrence(point, 1.0)
        assert ts.optimal_metric_concurrence(point) == pytest.approx(v**2, abs=1e-15)


@settings(max_examples=150)
@given(st.floats(0.02, math.pi - 0.02), xis, st.floats(0.3, 3.0))
def test_pullback_consistency(theta, xi, coupling):
    point = ts.ConcurrencePoint.from_angles(theta, xi)
    params = ModelParams(2, coupling, theta, 0.0, xi)
    assert abs(ts.curvature_of_concurrence(point) - geometry.gaussian_curvature_closed(params).k) <= 1e-9
    g_c = ts.geometric_phase_of_concurrence(point).value
    assert phases.phase_distance(g_c, phases.geometric_phase_closed(params)) <= 1e-9
    assert phases.phase_distance(ts.aa_phase_of_concurrence(point).value,
                                 phases.aa_phase_closed(params).value) <= 1e-9
    v, s, tau = ts.speed_distance_opttime_of_concurrence(point, coupling)
    assert abs(v - dynamics.speed_closed(params)) <= 1e-12 * max(1.0, coupling)
    assert abs(s - dynamics.distance(params)) <= 1e-9
    assert abs(tau - dynamics.distance(params) / dynamics.brachistochrone(2, coupling, xi).v_max) <= 1e-9
