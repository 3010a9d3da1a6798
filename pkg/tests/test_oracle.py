"""Tests for the truncated level-population reference integrator."""

import math

import numpy as np
import pytest

from molcool.errors import SolverError
from molcool.oracle import (
    PopulationVector,
    evolve_populations,
    mean_occupation,
    populations_from_quenched,
    truncation_levels,
)
from molcool.profiles import FrequencyProfile, ProfileShape
from molcool.thermo import QuenchedState, nu_of
from molcool.units import DimensionlessParams


def thermal_vector(theta, n_max, tail_threshold=1e-10):
    return populations_from_quenched(
        QuenchedState(eta=nu_of(theta) + 1.0), n_max, tail_threshold=tail_threshold
    )


def test_quenched_populations_are_geometric():
    pv = populations_from_quenched(QuenchedState(eta=2.0), n_max=40)
    expected = 0.5 ** (np.arange(41) + 1)
    assert np.array_equal(pv.p, expected)
    assert pv.tail_bound == 0.5**41
    assert pv.n_max == 40


def test_quenched_tail_bound_reference():
    # eta for a bath at theta = 0.032; 1001 retained levels
    pv = populations_from_quenched(QuenchedState(eta=31.752666621156665), n_max=1000)
    assert pv.tail_bound < 1e-13
    assert pv.tail_bound == pytest.approx(1.22653e-14, rel=1e-3)


def test_quenched_rejects_short_truncation():
    with pytest.raises(ValueError, match="increase n_max"):
        populations_from_quenched(QuenchedState(eta=31.752666621156665), n_max=200)
    with pytest.raises(ValueError, match="n_max must be >= 1"):
        populations_from_quenched(QuenchedState(eta=2.0), n_max=0)


def test_mean_occupation_matches_eta():
    eta = 5.0
    n_max = 200
    pv = populations_from_quenched(QuenchedState(eta=eta), n_max=n_max)
    deficit = pv.tail_bound * (n_max + eta)
    assert abs(mean_occupation(pv) - (eta - 1.0)) <= deficit + 1e-12
    # thermal occupation at theta = 0.048
    nu = nu_of(0.048)
    pv = thermal_vector(0.048, truncation_levels(nu))
    assert mean_occupation(pv) == pytest.approx(20.337333179741759, rel=1e-9)


def test_mean_occupation_ground_state():
    assert mean_occupation(PopulationVector(p=np.array([1.0, 0.0]), tail_bound=0.0)) == 0.0


def test_truncation_levels_rule():
    assert truncation_levels(0.5) == 20
    assert truncation_levels(nu_of(0.048)) == 814
    assert truncation_levels(0.024) == 1
    with pytest.raises(ValueError, match="nu_max must be positive"):
        truncation_levels(0.0)


def test_population_vector_validation():
    with pytest.raises(ValueError, match="1-d"):
        PopulationVector(p=np.ones((2, 2)), tail_bound=0.0)
    with pytest.raises(ValueError, match="at least levels 0 and 1"):
        PopulationVector(p=np.array([1.0]), tail_bound=0.0)
    with pytest.raises(ValueError, match="nonnegative"):
        PopulationVector(p=np.array([0.5, -0.1]), tail_bound=0.0)
    with pytest.raises(ValueError, match="tail_bound"):
        PopulationVector(p=np.array([0.5, 0.5]), tail_bound=math.nan)


def test_stationary_state_is_preserved():
    # theta held at 1.0; both integrators must sit on the thermal state
    d = DimensionlessParams(theta0=0.5, freq_ratio_r=2.0, gamma_tau_g=1.0)
    prof = FrequencyProfile(freq_ratio_r=2.0, shape=ProfileShape.CONSTANT, level=1.0)
    init = thermal_vector(1.0, truncation_levels(nu_of(1.0)) + 30)
    for method, kwargs in (("bdf", {}), ("rk4", {"step_size": 1e-3})):
        traj = evolve_populations(d, prof, init, horizon=10.0, method=method, **kwargs)
        drift = np.max(np.abs(traj.populations - init.p))
        assert drift < 1e-10, method
        # column sums of the generator vanish, so total mass is conserved
        total = traj.populations.sum(axis=1) + traj.tail_bound
        assert np.max(np.abs(total - (init.p.sum() + init.tail_bound))) < 1e-9


def test_decoupled_populations_are_frozen():
    # zero coupling zeroes every transition rate, so RK4 stages all vanish
    d = DimensionlessParams(theta0=0.3, freq_ratio_r=2.0, gamma_tau_g=0.0)
    prof = FrequencyProfile(freq_ratio_r=2.0)
    init = thermal_vector(0.6, truncation_levels(nu_of(0.6)) + 20)
    traj = evolve_populations(d, prof, init, horizon=2.0, method="rk4", step_size=1e-3)
    assert np.all(traj.populations == init.p)
    assert np.all(traj.mean_n == traj.mean_n[0])


def test_rk4_agrees_with_bdf():
    d = DimensionlessParams(theta0=0.3, freq_ratio_r=2.0, gamma_tau_g=1.0)
    prof = FrequencyProfile(freq_ratio_r=2.0)
    init = thermal_vector(0.6, truncation_levels(nu_of(0.3)) + 20)
    bdf = evolve_populations(d, prof, init, horizon=1.0)
    rk4 = evolve_populations(d, prof, init, horizon=1.0, method="rk4", step_size=5e-4)
    assert bdf.method == "bdf"
    assert rk4.method == "rk4-fixed"
    rel = np.max(np.abs(rk4.mean_n / bdf.mean_n - 1.0))
    assert rel < 1e-6
    total = bdf.populations.sum(axis=1) + bdf.tail_bound
    assert np.max(np.abs(total - 1.0)) < 1e-9


def test_cooling_preserves_quenched_form():
    # the birth-death flow maps a geometric start onto geometric states
    d = DimensionlessParams(theta0=0.3, freq_ratio_r=2.0, gamma_tau_g=1.0)
    prof = FrequencyProfile(freq_ratio_r=2.0)
    init = thermal_vector(0.6, truncation_levels(nu_of(0.3)) + 20)
    traj = evolve_populations(d, prof, init, horizon=1.0)
    p_end = traj.at(-1).p
    ratios = p_end[1:22] / p_end[:21]
    assert np.max(np.abs(ratios / ratios.mean() - 1.0)) < 1e-6


def test_rk4_stability_guard():
    # wide truncation and strong coupling push the spectral radius far
    # past what the default explicit step can take
    d = DimensionlessParams(theta0=0.01, freq_ratio_r=3.0, gamma_tau_g=10.0)
    prof = FrequencyProfile(freq_ratio_r=3.0)
    init = thermal_vector(0.03, truncation_levels(nu_of(0.01)))
    with pytest.raises(SolverError, match="stability bound") as excinfo:
        evolve_populations(d, prof, init, horizon=0.1, method="rk4")
    assert "method='bdf'" in str(excinfo.value)


def test_tail_overflow_aborts_mid_run():
    # truncated for the initial state only; heating past it must abort
    d = DimensionlessParams(theta0=0.3, freq_ratio_r=2.0, gamma_tau_g=1.0)
    prof = FrequencyProfile(freq_ratio_r=2.0)
    init = thermal_vector(0.6, truncation_levels(nu_of(0.6)))
    with pytest.raises(SolverError, match="truncation too small") as excinfo:
        evolve_populations(d, prof, init, horizon=3.0)
    assert "at s =" in str(excinfo.value)


def test_trajectory_sample_access():
    d = DimensionlessParams(theta0=0.3, freq_ratio_r=2.0, gamma_tau_g=1.0)
    prof = FrequencyProfile(freq_ratio_r=2.0)
    init = thermal_vector(0.6, truncation_levels(nu_of(0.3)) + 20)
    traj = evolve_populations(d, prof, init, horizon=0.5, samples_per_unit=10)
    assert traj.s.shape == (6,)
    assert traj.populations.shape == (6, init.p.size)
    first = traj.at(0)
    np.testing.assert_allclose(first.p, init.p, rtol=0, atol=1e-15)
    # .at() hands out a copy, not a view
    first.p[0] = 123.0
    assert traj.populations[0, 0] != 123.0
    assert traj.mean_n[3] == pytest.approx(mean_occupation(traj.at(3)), rel=1e-12)


def test_run_validation():
    d = DimensionlessParams(theta0=0.3, freq_ratio_r=2.0, gamma_tau_g=1.0)
    prof = FrequencyProfile(freq_ratio_r=2.0)
    init = thermal_vector(0.6, 80)
    with pytest.raises(ValueError, match="unknown method"):
        evolve_populations(d, prof, init, horizon=1.0, method="euler")
    with pytest.raises(ValueError, match="does not match"):
        evolve_populations(d, FrequencyProfile(freq_ratio_r=3.0), init, horizon=1.0)
    with pytest.raises(ValueError, match="horizon must be positive"):
        evolve_populations(d, prof, init, horizon=0.0)
    with pytest.raises(SolverError, match="step-size underflow"):
        evolve_populations(d, prof, init, horizon=1.0, method="rk4", step_size=1e-14)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-v"]))
