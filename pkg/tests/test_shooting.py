import math

import numpy as np
import pytest

from SPINEROD.rod.core import rotation_error
from SPINEROD.scenario.scenario import Scenario
from SPINEROD.solver.integrate import ShootGuess
from SPINEROD.solver.shooting import (
    SolverConfig, shoot, residual, straight_guess, continuation_guess, pressure_sweep, sweep_cells
)
from SPINEROD.utils.consts import SWEEP_PRESSURES, SWEEP_SPINES
from SPINEROD.utils.errors import InvalidParameterError, SolverFailureError

# From 10 cm up the spine stiffens faster than A_effect grows.
STIFFENING_SPINES = (0.10, 0.15, 0.20, 0.25, 0.30)

def tip_angle(result):
    return math.acos(min(1.0, result.centerline[-1].R[2, 2]))

def deflection(result):
    return abs(result.tip_position[0])

@pytest.fixture(scope="module")
def bench_sweep():
    results = pressure_sweep(Scenario(), SWEEP_PRESSURES, SWEEP_SPINES)
    return dict(zip(sweep_cells(SWEEP_PRESSURES, SWEEP_SPINES), results))

class TestShoot:
    def test_unloaded_tip(self, unloaded):
        result = shoot(unloaded, ShootGuess())
        assert result.converged
        assert result.iterations == 0
        np.testing.assert_allclose(result.tip_position, [0, 0, 0.4], atol=1e-9)
        assert len(result.centerline) == 100

    def test_straight_guess_is_exact_for_straight_rod(self, unloaded):
        guess = straight_guess(unloaded)
        np.testing.assert_array_equal(guess.n0, np.zeros(3))
        np.testing.assert_array_equal(guess.m0, np.zeros(3))

    def test_straight_guess_carries_weight(self):
        scenario = Scenario()
        guess = straight_guess(scenario)
        load = scenario.load_model
        expected = load.f * 0.4 + np.array(scenario.tip_load.F_external)
        np.testing.assert_allclose(guess.n0, expected, rtol=1e-12)
        np.testing.assert_allclose(guess.m0, np.zeros(3), atol=1e-12)

    def test_bending_converges(self, bending):
        result = shoot(bending)
        assert result.converged
        assert result.residual_norm < 1e-8
        assert residual(result.guess, bending).norm() < 1e-8
        # Inflating group 1 bends the rod away from the group's side.
        assert result.tip_position[0] < 0
        assert result.tip_position[1] < 0

    def test_bend_stays_in_plane(self, bending):
        result = shoot(bending)
        centroid = bending.layout.centroid(1)
        normal = np.cross(centroid / np.linalg.norm(centroid), [0, 0, 1])
        for state in result.centerline:
            assert abs(state.p @ normal) < 1e-7

    def test_restart_from_solution(self, bending):
        result = shoot(bending)
        again = shoot(bending, result.guess)
        assert again.converged
        assert again.iterations == 0
        np.testing.assert_array_equal(again.tip_position, result.tip_position)

    def test_iteration_budget(self, bending):
        result = shoot(bending, tol=1e-30, max_iter=1)
        assert not result.converged
        assert result.iterations <= 1
        assert len(result.centerline) == 100

    def test_diverging_start(self, bending):
        with pytest.raises(SolverFailureError) as excinfo:
            shoot(bending, ShootGuess([1e308, 1e308, 0.0], [0.0, 0.0, 0.0]))
        assert excinfo.value.diagnostics["reason"] == "initial guess diverged"

    @pytest.mark.parametrize("kwargs", [{"tol": 0.0}, {"tol": -1.0}, {"max_iter": 0}])
    def test_bad_settings(self, bending, kwargs):
        with pytest.raises(InvalidParameterError):
            shoot(bending, **kwargs)

    def test_solver_config(self):
        assert SolverConfig() == SolverConfig(1e-8, 50)

class TestContinuation:
    def test_warm_start_saves_iterations(self):
        first = shoot(Scenario().with_group_pressure(50e3))
        cell = Scenario().with_group_pressure(100e3)
        warm = shoot(cell, first.guess)
        cold = shoot(cell, ShootGuess())
        assert warm.converged and cold.converged
        assert warm.iterations < cold.iterations
        np.testing.assert_allclose(warm.tip_position, cold.tip_position, atol=1e-7)

    def test_continuation_guess(self):
        previous_cell = Scenario().with_group_pressure(50e3)
        first = shoot(previous_cell)
        cell = Scenario().with_group_pressure(100e3)
        seeded = shoot(cell, continuation_guess(cell, previous_cell, first.guess))
        assert seeded.converged
        assert seeded.iterations < shoot(cell, ShootGuess()).iterations
        np.testing.assert_allclose(seeded.tip_position, shoot(cell).tip_position, atol=1e-7)

    def test_continuation_of_a_solution_is_itself(self, bending):
        solved = shoot(bending)
        guess = continuation_guess(bending, bending, solved.guess)
        np.testing.assert_allclose(guess.vector(), solved.guess.vector(), rtol=1e-12, atol=1e-15)

class TestSmallLoads:
    @pytest.mark.parametrize("gravity", [True, False])
    def test_linear_at_small_pressure(self, gravity):
        base = Scenario().with_overrides(gravity=gravity)
        low = shoot(base.with_group_pressure(1e3))
        high = shoot(base.with_group_pressure(2e3))
        assert low.converged and high.converged
        assert deflection(high) / deflection(low) == pytest.approx(2.0, rel=0.05)

    def test_residual_grows_linearly_off_the_solution(self, bending):
        x = shoot(bending).guess.vector()
        direction = np.zeros(6)
        direction[0] = 1.0
        norms = [residual(ShootGuess.from_vector(x + delta * direction), bending).norm() for delta in (1e-6, 2e-6, 4e-6)]
        assert norms[0] > 0
        assert norms[1] / norms[0] == pytest.approx(2.0, rel=0.05)
        assert norms[2] / norms[1] == pytest.approx(2.0, rel=0.05)

class TestUniformPressure:
    @pytest.mark.parametrize("spine", [0.0, 0.15, 0.30])
    def test_pure_extension(self, unloaded, spine):
        result = shoot(unloaded.with_spine_length(spine).with_uniform_pressure(150e3))
        assert result.converged
        assert abs(result.tip_position[0]) < 1e-6
        assert abs(result.tip_position[1]) < 1e-6
        assert result.tip_position[2] > 0.4

class TestBenchSweep:
    def test_every_cell_converges(self, bench_sweep):
        assert len(bench_sweep) == 35
        for result in bench_sweep.values():
            assert result.converged
            assert result.residual_norm < 1e-8
            assert result.iterations <= 50

    def test_rotations_stay_orthonormal(self, bench_sweep):
        for result in bench_sweep.values():
            for state in result.centerline:
                assert rotation_error(state.R) < 1e-6
                assert np.linalg.det(state.R) > 0.99

    def test_tip_within_arc_length(self, bench_sweep):
        for result in bench_sweep.values():
            points = np.array([state.p for state in result.centerline])
            arc = np.linalg.norm(np.diff(points, axis=0), axis=1).sum()
            assert np.linalg.norm(result.tip_position) <= arc + 1e-12

    def test_spine_reduces_deflection(self, bench_sweep):
        for pressure in SWEEP_PRESSURES:
            deflections = [deflection(bench_sweep[(spine, pressure)]) for spine in STIFFENING_SPINES]
            assert all(a > b for a, b in zip(deflections, deflections[1:]))
            assert deflection(bench_sweep[(0.0, pressure)]) > deflections[-1]

    def test_short_spine_is_softer(self, bench_sweep):
        # The 5 cm jammed spine is softer than silicone, so it bends a little further.
        for pressure in SWEEP_PRESSURES:
            assert tip_angle(bench_sweep[(0.05, pressure)]) > tip_angle(bench_sweep[(0.0, pressure)])
        assert deflection(bench_sweep[(0.05, 250e3)]) > deflection(bench_sweep[(0.0, 250e3)])

    def test_pressure_increases_deflection(self, bench_sweep):
        for spine in SWEEP_SPINES:
            cells = [bench_sweep[(spine, pressure)] for pressure in SWEEP_PRESSURES]
            deflections = [deflection(cell) for cell in cells]
            assert all(a < b for a, b in zip(deflections, deflections[1:]))
            angles = [tip_angle(cell) for cell in cells]
            assert all(a < b for a, b in zip(angles, angles[1:]))
            assert all(cell.tip_position[0] < 0 for cell in cells)

    def test_warm_start_matches_cold_start(self, bench_sweep):
        cell = Scenario().with_spine_length(0.2).with_group_pressure(150e3)
        cold = shoot(cell)
        np.testing.assert_allclose(bench_sweep[(0.2, 150e3)].tip_position, cold.tip_position, atol=1e-7)

def test_sweep_needs_cells():
    with pytest.raises(InvalidParameterError):
        pressure_sweep(Scenario(), [], [0.0])

def test_failed_cell_is_recorded(bending):
    results = pressure_sweep(bending.with_overrides(tol=1e-30, max_iter=1), [100e3], [0.0])
    assert len(results) == 1
    assert not results[0].converged
    assert not math.isnan(results[0].tip_position[0])
