import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isinggeom import spin_core as sc
from isinggeom.errors import DomainError, SizeError
from isinggeom.spin_core import DickeState, FullState, ModelParams

thetas = st.floats(0.0, math.pi)
phis = st.floats(0.0, 2 * math.pi, exclude_max=True)
xis = st.floats(0.0, 50.0)


def test_model_params_validation():
    with pytest.raises(DomainError):
        ModelParams(0)
    with pytest.raises(DomainError):
        ModelParams(2, theta=-0.1)
    with pytest.raises(DomainError):
        ModelParams(2, theta=3.2)
    with pytest.raises(DomainError):
        ModelParams(2, xi=-1.0)
    with pytest.raises(DomainError):
        ModelParams(2, coupling=float("nan"))
    assert ModelParams(3, theta=1.0).replace(xi=2.0).xi == 2.0


def test_states_are_immutable():
    state = sc.build_initial_state(ModelParams(2, theta=1.0))
    with pytest.raises(ValueError):
        state.amplitudes[0] = 0.0


def test_initial_state_single_spin_up():
    amps = sc.build_initial_state(ModelParams(1, theta=0.0)).amplitudes
    np.testing.assert_allclose(amps, [1, 0], atol=1e-15)


def test_initial_state_two_spins_equator():
    # (|u> + |d>)^2 / 2 = (1/2)|uu> + (1/sqrt2)|2,1> + (1/2)|dd>
    amps = sc.build_initial_state(ModelParams(2, theta=math.pi / 2)).amplitudes
    np.testing.assert_allclose(amps, [0.5, 1 / math.sqrt(2), 0.5], atol=1e-15)


@given(st.integers(1, 200), thetas, phis)
def test_initial_state_normalized(n, theta, phi):
    assert abs(sc.build_initial_state(ModelParams(n, 1.0, theta, phi)).norm - 1) <= 1e-12


def test_evolve_identity_at_zero():
    params = ModelParams(5, 1.0, 0.7, 0.2, 0.0)
    state = sc.build_initial_state(params)
    np.testing.assert_array_equal(sc.evolve(state, params).amplitudes, state.amplitudes)


def test_evolve_two_spin_phases():
    xi = 0.813
    params = ModelParams(2, 1.0, 1.1, 0.4, xi)
    state = sc.build_initial_state(params)
    ratio = sc.evolve(state, params).amplitudes / state.amplitudes
    np.testing.assert_allclose(ratio, [np.exp(-1j * xi), 1, np.exp(-1j * xi)], atol=1e-15)


@pytest.mark.parametrize("n", [2, 4, 6, 10])
def test_even_n_period_two_pi(n):
    params = ModelParams(n, 1.0, 1.2, 0.5, 0.77)
    a = sc.evolved_state(params).amplitudes
    b = sc.evolved_state(params.replace(xi=0.77 + 2 * math.pi)).amplitudes
    assert np.max(np.abs(a - b)) <= 1e-12


@pytest.mark.parametrize("n", [1, 3, 5, 7])
def test_odd_n_period_eight_pi(n):
    params = ModelParams(n, 1.0, 1.2, 0.5, 0.77)
    a = sc.evolved_state(params).amplitudes
    b = sc.evolved_state(params.replace(xi=0.77 + 8 * math.pi)).amplitudes
    c = sc.evolved_state(params.replace(xi=0.77 + 2 * math.pi)).amplitudes
    assert np.max(np.abs(a - b)) <= 1e-12
    assert np.max(np.abs(a - c)) > 1e-3


def test_measured_periods():
    assert sc.state_period(2) == pytest.approx(2 * math.pi, abs=0)
    assert sc.state_period(3) == pytest.approx(8 * math.pi, abs=0)
    # odd N >= 3: the ray already closes after pi
    assert sc.state_period(3, projective=True) == pytest.approx(math.pi, abs=0)
    assert sc.state_period(4, projective=True) == pytest.approx(2 * math.pi, abs=0)
    assert sc.state_period(1, projective=True) == 0.0


def test_spectrum():
    for n in range(1, 12):
        spec = sc.spectrum(n)
        assert spec.total_degeneracy == 2**n
        for energy, degeneracy in spec.levels:
            p = round(n / 2 - math.sqrt(energy))
            expected = math.comb(n, p) if 2 * p == n else 2 * math.comb(n, p)
            assert degeneracy == expected
    assert sc.spectrum(4, coupling=2.0).levels[0] == (8.0, 2)


def test_binomials_large_n_matches_exact():
    exact = np.array([math.comb(80, k) for k in range(81)], dtype=float)
    np.testing.assert_allclose(sc.binomials(80), exact, rtol=1e-12)


def test_large_n_state_is_finite_and_normalized():
    state = sc.evolved_state(ModelParams(2000, 1.0, 1.0, 0.0, 1.0))
    assert np.all(np.isfinite(state.amplitudes))
    assert abs(state.norm - 1) <= 1e-12


def test_dicke_to_full_examples():
    np.testing.assert_allclose(sc.dicke_to_full(DickeState([1, 0])).amplitudes, [1, 0])
    r = 1 / math.sqrt(2)
    np.testing.assert_allclose(sc.dicke_to_full(DickeState([0, 1, 0])).amplitudes, [0, r, r, 0], atol=1e-15)


def test_dicke_to_full_size_cap():
    with pytest.raises(SizeError):
        sc.dicke_to_full(DickeState(np.ones(16) / 4))


@settings(max_examples=40)
@given(st.integers(1, 10), st.integers(0, 2**32 - 1))
def test_full_dicke_round_trip(n, seed):
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
    state = DickeState(amps / np.linalg.norm(amps))
    full = sc.dicke_to_full(state)
    assert abs(full.norm - 1) <= 1e-14
    back = sc.dicke_to_full(sc.full_to_dicke(full))
    assert np.max(np.abs(back.amplitudes - full.amplitudes)) <= 1e-14


def test_oracle_phases():
    n, xi = 4, 0.37
    params = ModelParams(n, 1.0, 0.0, 0.0, xi)
    out = sc.full_evolve_oracle(sc.product_state(params), params).amplitudes
    assert out[0] == pytest.approx(np.exp(-1j * xi * n**2 / 4), abs=1e-15)
    # |ud> has m = 0
    basis = np.zeros(4, dtype=complex)
    basis[0b01] = 1.0
    two = ModelParams(2, 1.0, 0.0, 0.0, xi)
    assert sc.full_evolve_oracle(FullState(basis), two).amplitudes[1] == 1.0
    state = sc.product_state(ModelParams(3, 1.0, 0.4, 0.1))
    same = sc.full_evolve_oracle(state, ModelParams(3, 1.0, 0.4, 0.1, 0.0))
    np.testing.assert_array_equal(same.amplitudes, state.amplitudes)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), thetas, phis, xis)
def test_oracle_equivalence(n, theta, phi, xi):
    params = ModelParams(n, 1.0, theta, phi, xi)
    dicke = sc.dicke_to_full(sc.evolved_state(params)).amplitudes
    full = sc.full_evolve_oracle(sc.product_state(params), params)
    assert abs(full.norm - 1) <= 1e-14
    assert abs(np.vdot(dicke, full.amplitudes)) >= 1 - 1e-12


@given(st.integers(1, 10), thetas, phis)
def test_product_state_is_symmetric(n, theta, phi):
    assert abs(sc.symmetric_occupancy(sc.product_state(ModelParams(n, 1.0, theta, phi))) - 1) <= 1e-12


def test_overlap_examples():
    assert sc.overlap(ModelParams(6, 1.0, 1.3, 0.0, 0.0)) == pytest.approx(1.0, abs=1e-15)
    for xi in (0.2, 1.0, 2.7):
        expected = (1 + np.exp(-1j * xi)) / 2
        params = ModelParams(2, 1.0, math.pi / 2, 0.0, xi)
        assert abs(sc.overlap(params) - expected) <= 1e-15
        initial = sc.product_state(params)
        evolved = sc.full_evolve_oracle(initial, params)
        assert abs(np.vdot(initial.amplitudes, evolved.amplitudes) - expected) <= 1e-15


@given(st.integers(1, 40), thetas, phis, xis)
def test_overlap_bounded_and_phi_independent(n, theta, phi, xi):
    z = sc.overlap(ModelParams(n, 1.0, theta, phi, xi))
    assert abs(z) <= 1 + 1e-12
    assert sc.overlap(ModelParams(n, 1.0, theta, 0.0, xi)) == z
    amps = np.abs(sc.evolved_state(ModelParams(n, 1.0, theta, phi, xi)).amplitudes)
    ref = np.abs(sc.evolved_state(ModelParams(n, 1.0, theta, 0.0, 0.0)).amplitudes)
    np.testing.assert_allclose(amps, ref, atol=1e-15)


def test_energy_moments_eigenstate():
    for n in (1, 2, 5):
        mean, var = sc.energy_moments(ModelParams(n, 1.0, 0.0))
        assert mean == pytest.approx(n**2 / 4)
        assert var == pytest.approx(0.0, abs=1e-15)


def test_energy_moments_two_spin_equator():
    # weights (1/4, 1/2, 1/4) on energies (1, 0, 1): mean 1/2, variance 1/4
    mean, var = sc.energy_moments(ModelParams(2, 1.0, math.pi / 2))
    assert mean == pytest.approx(0.5, abs=1e-15)
    assert var == pytest.approx(0.25, abs=1e-15)
    oracle = sc.full_energy_moments(sc.product_state(ModelParams(2, 1.0, math.pi / 2)))
    assert oracle == pytest.approx((0.5, 0.25), abs=1e-15)


@given(st.integers(1, 12), thetas, st.floats(-3, 3).filter(lambda j: abs(j) > 1e-3))
def test_energy_moments_match_oracle(n, theta, coupling):
    params = ModelParams(n, coupling, theta)
    mean, var = sc.energy_moments(params)
    assert var >= 0
    assert mean == pytest.approx(coupling * n / 4 * (n * math.cos(theta) ** 2 + math.sin(theta) ** 2),
                                 abs=1e-12 * n**2)
    o_mean, o_var = sc.full_energy_moments(sc.product_state(params), coupling)
    assert o_mean == pytest.approx(mean, abs=1e-12 * n**2)
    assert o_var == pytest.approx(var, abs=1e-11 * n**4)


def test_reduced_density_two_spins_is_projector():
    params = ModelParams(2, 1.0, 0.9, 0.3, 1.4)
    psi = sc.dicke_to_full(sc.evolved_state(params))
    rho = sc.reduced_two_spin_density(psi, 0, 1)
    np.testing.assert_allclose(rho, np.outer(psi.amplitudes, psi.amplitudes.conj()), atol=1e-15)


@pytest.mark.parametrize("n", [3, 4])
def test_reduced_density_pair_independent(n):
    params = ModelParams(n, 1.0, 1.1, 0.6, 2.3)
    psi = sc.dicke_to_full(sc.evolved_state(params))
    ref = sc.reduced_two_spin_density(psi, 0, 1)
    for a in range(n):
        for b in range(n):
            if a != b:
                assert np.max(np.abs(sc.reduced_two_spin_density(psi, a, b) - ref)) <= 1e-12


@settings(max_examples=30)
@given(st.integers(2, 8), st.integers(0, 2**32 - 1))
def test_reduced_density_is_physical(n, seed):
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    psi = FullState(amps / np.linalg.norm(amps))
    a, b = rng.choice(n, 2, replace=False)
    rho = sc.reduced_two_spin_density(psi, int(a), int(b))
    assert abs(np.trace(rho) - 1) <= 1e-10
    assert np.max(np.abs(rho - rho.conj().T)) <= 1e-10
    assert np.min(np.linalg.eigvalsh(rho)) >= -1e-10


def test_reduced_density_bad_indices():
    psi = sc.product_state(ModelParams(3, 1.0, 0.5))
    with pytest.raises(IndexError):
        sc.reduced_two_spin_density(psi, 0, 0)
    with pytest.raises(IndexError):
        sc.reduced_two_spin_density(psi, 0, 3)
