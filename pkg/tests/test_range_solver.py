"""Closed-form and implicit maximum-range solutions."""

import dataclasses
import math

import numpy as np
import pytest

from qi_rangekit.atmosphere import form_factor
from qi_rangekit.errors import DomainError, NoDetectionError
from qi_rangekit.link_budget import (
    DetectionSpec,
    IntegrationSpec,
    RadarParams,
    antenna_gain,
    channel_transmissivity,
    snr_eff,
)
from qi_rangekit.radiometry import dbm_to_watts, t_eff_from_noise_power, thermal_occupancy
from qi_rangekit.range_solver import (
    Illumination,
    RangeProblem,
    quantum_advantage_factor,
    r_max,
    r_max_free,
    sensitivity_gain,
    sweep_range,
    sweep_ratio,
    threshold_linear,
)

# Benchmark scenario pieces (the package's default scenario).
RADAR = RadarParams(sigma_m2=1.0, aperture_m2=0.5)
DETECTION = DetectionSpec(p_d=0.7, p_fa=1e-6, snr_min_db=10.0)
INTEGRATION = IntegrationSpec(tau_s=1.0, bandwidth_hz=1e9)
T_EFF = t_eff_from_noise_power(dbm_to_watts(-63.82), 1e9)


def benchmark_problem(n_s=1e-2, f_hz=1e12, mode=Illumination.CI, gamma=0.0, **overrides):
    problem = RangeProblem(
        radar=RADAR,
        detection=DETECTION,
        integration=INTEGRATION,
        n_s=n_s,
        f_hz=f_hz,
        n_b=thermal_occupancy(T_EFF, f_hz),
        gamma_db_per_km=gamma,
        mode=mode,
    )
    return dataclasses.replace(problem, **overrides) if overrides else problem


def independent_snr_eff(problem: RangeProblem, r_m: float) -> float:
    """Recompute SNR_eff through the public link-budget chain."""
    gain = antenna_gain(problem.radar.aperture_m2, problem.f_hz, problem.constants)
    eta = channel_transmissivity(
        problem.radar.sigma_m2,
        gain,
        problem.radar.aperture_m2,
        form_factor(problem.gamma_db_per_km, r_m),
        r_m,
    )
    return snr_eff(eta, problem.integration.pulse_count, problem.n_s, problem.n_b)


def test_advantage_factor_values():
    assert quantum_advantage_factor(1e-2) == pytest.approx(101.0**0.25, rel=1e-15)
    assert quantum_advantage_factor(1e-2) == pytest.approx(3.1702, abs=1e-4)
    assert quantum_advantage_factor(1.0) == pytest.approx(2.0**0.25, rel=1e-15)
    assert quantum_advantage_factor(1e12) == pytest.approx(1.0, rel=1e-9)
    assert sensitivity_gain(1e-2) == pytest.approx(101.0, rel=1e-15)
    with pytest.raises(DomainError):
        quantum_advantage_factor(0.0)


def test_free_space_benchmark_ranges():
    assert r_max_free(benchmark_problem()) == pytest.approx(137.088, abs=0.01)
    assert r_max_free(benchmark_problem(mode=Illumination.QI)) == pytest.approx(
        434.591, abs=0.01
    )


def test_four_pi_fourth_power_variant():
    literal = benchmark_problem(four_pi_exponent=4)
    assert r_max_free(literal) == pytest.approx(38.672, abs=0.01)
    # the two conventions differ by exactly (4*pi)^(1/2) in range
    assert r_max_free(benchmark_problem()) / r_max_free(literal) == pytest.approx(
        math.sqrt(4.0 * math.pi), rel=1e-12
    )


def test_threshold_doubling_scales_range():
    base = r_max_free(benchmark_problem())
    doubled = benchmark_problem(
        detection=DetectionSpec(p_d=0.7, p_fa=1e-6, snr_min_db=10.0 + 10.0 * math.log10(2.0))
    )
    assert r_max_free(doubled) == pytest.approx(base / 2.0**0.25, rel=1e-12)


def test_lossless_solution_equals_closed_form():
    for f_hz in (7e9, 95e9, 1e12):
        for n_s in (1e-3, 1e-2, 1e-1, 1.0):
            for mode in Illumination:
                problem = benchmark_problem(n_s=n_s, f_hz=f_hz, mode=mode)
                solution = r_max(problem)
                assert solution.converged
                assert solution.r_max_m == pytest.approx(r_max_free(problem), rel=1e-9)


def test_attenuated_solution_below_free_space_and_closed():
    problem = benchmark_problem(mode=Illumination.QI, gamma=3.0)
    solution = r_max(problem)
    assert solution.converged
    assert solution.r_max_m < r_max_free(problem)
    assert solution.r_max_m < 435.0
    # closure through the public chain, in dB against the mode threshold
    achieved = independent_snr_eff(problem, solution.r_max_m)
    residual_db = abs(10.0 * math.log10(achieved / threshold_linear(problem)))
    assert residual_db < 1e-6
    assert solution.bracket[0] <= solution.r_max_m <= solution.bracket[1]


def test_bracket_straddles_threshold():
    problem = benchmark_problem(gamma=5.0)
    solution = r_max(problem)
    threshold = threshold_linear(problem)
    lo, hi = solution.bracket
    assert independent_snr_eff(problem, lo) >= threshold
    assert independent_snr_eff(problem, hi) <= threshold


def test_extreme_attenuation_still_solves():
    mild = r_max(benchmark_problem(gamma=0.0)).r_max_m
    harsh = r_max(benchmark_problem(gamma=1e6)).r_max_m
    assert 0.0 < harsh < mild


def test_no_detection_error():
    hopeless = RangeProblem(
        radar=RadarParams(sigma_m2=1e-12, aperture_m2=1e-6),
        detection=DETECTION,
        integration=IntegrationSpec(tau_s=1.0, bandwidth_hz=1.0),
        n_s=1e-3,
        f_hz=1.0,
        n_b=1e6,
    )
    with pytest.raises(NoDetectionError):
        r_max(hopeless)


def test_quantum_classical_ratio_law():
    for n_s in np.logspace(-3, 1, 20):
        ci = r_max(benchmark_problem(n_s=n_s, mode=Illumination.CI)).r_max_m
        qi = r_max(benchmark_problem(n_s=n_s, mode=Illumination.QI)).r_max_m
        assert qi / ci == pytest.approx(quantum_advantage_factor(n_s), rel=1e-9)
    # with attenuation the longer quantum path pays more, so the ratio shrinks
    for n_s in (1e-3, 1e-1):
        ci = r_max(benchmark_problem(n_s=n_s, gamma=4.0, mode=Illumination.CI)).r_max_m
        qi = r_max(benchmark_problem(n_s=n_s, gamma=4.0, mode=Illumination.QI)).r_max_m
        assert qi / ci < quantum_advantage_factor(n_s)


def test_monotonicity_in_scenario_knobs():
    base = benchmark_problem(gamma=1.0)
    r_base = r_max(base).r_max_m
    assert r_max(benchmark_problem(n_s=2e-2, gamma=1.0)).r_max_m > r_base
    assert (
        r_max(
            benchmark_problem(gamma=1.0, radar=RadarParams(sigma_m2=2.0, aperture_m2=0.5))
        ).r_max_m
        > r_base
    )
    assert (
        r_max(
            benchmark_problem(gamma=1.0, radar=RadarParams(sigma_m2=1.0, aperture_m2=1.0))
        ).r_max_m
        > r_base
    )
    assert (
        r_max(
            benchmark_problem(
                gamma=1.0, integration=IntegrationSpec(tau_s=2.0, bandwidth_hz=1e9)
            )
        ).r_max_m
        > r_base
    )
    assert r_max(benchmark_problem(gamma=2.0)).r_max_m < r_base
    assert (
        r_max(
            benchmark_problem(
                gamma=1.0, detection=DetectionSpec(p_d=0.7, p_fa=1e-6, snr_min_db=13.0)
            )
        ).r_max_m
        < r_base
    )


def test_problem_validation():
    with pytest.raises(DomainError):
        benchmark_problem(n_s=0.0)
    with pytest.raises(DomainError):
        benchmark_problem(gamma=-1.0)
    with pytest.raises(DomainError):
        benchmark_problem(four_pi_exponent=3)


def make_benchmark(n_s, f_hz, mode):
    return benchmark_problem(n_s=n_s, f_hz=f_hz, mode=mode)


def test_sweep_range_single_point():
    result = sweep_range(make_benchmark, [1e-2], [1e12], [Illumination.CI, Illumination.QI])
    assert result.axis == (1e-2,)
    assert [s.mode for s in result.series] == [Illumination.CI, Illumination.QI]
    assert result.series[0].values[0] == pytest.approx(137.088, abs=0.01)
    assert result.series[1].values[0] == pytest.approx(434.591, abs=0.01)


def test_sweep_range_ordering_and_monotonicity():
    grid = list(np.logspace(-3, 0, 7))
    result = sweep_range(
        make_benchmark, grid, [7e9, 1e12], [Illumination.CI, Illumination.QI]
    )
    keys = [(s.frequency_hz, s.mode) for s in result.series]
    assert keys == [
        (7e9, Illumination.CI),
        (7e9, Illumination.QI),
        (1e12, Illumination.CI),
        (1e12, Illumination.QI),
    ]
    for ci, qi in zip(result.series[::2], result.series[1::2]):
        assert all(q >= c for c, q in zip(ci.values, qi.values))
        for series in (ci, qi):
            assert all(b > a for a, b in zip(series.values, series.values[1:]))


def test_sweep_range_marks_failures_as_absent():
    def factory(n_s, f_hz, mode):
        if n_s < 2e-3:
            return RangeProblem(
                radar=RadarParams(sigma_m2=1e-12, aperture_m2=1e-6),
                detection=DETECTION,
                integration=IntegrationSpec(tau_s=1.0, bandwidth_hz=1.0),
                n_s=n_s,
                f_hz=1.0,
                n_b=1e6,
            )
        return make_benchmark(n_s, f_hz, mode)

    result = sweep_range(factory, [1e-3, 1e-2], [1e12], [Illumination.CI])
    assert result.series[0].values[0] is None
    assert result.series[0].values[1] is not None


def test_sweep_grid_validation():
    with pytest.raises(DomainError):
        sweep_range(make_benchmark, [1e-2, 1e-3], [1e12], [Illumination.CI])
    with pytest.raises(DomainError):
        sweep_range(make_benchmark, [], [1e12], [Illumination.CI])
    with pytest.raises(DomainError):
        sweep_ratio([0.0, 1.0])


def test_sweep_ratio_values():
    assert sweep_ratio([0.5]).series[0].values[0] == pytest.approx(0.57735, abs=1e-5)
    assert sweep_ratio([1e-4]).series[0].values[0] == pytest.approx(9.9995e-3, rel=1e-4)
    values = sweep_ratio(list(np.logspace(-3, 2, 50))).series[0].values
    assert all(b > a for a, b in zip(values, values[1:]))
