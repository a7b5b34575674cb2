"""
The shooting method: guess the base loads, march to the tip, compare with
the tip boundary condition and correct the guess with damped Newton steps.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from SPINEROD.rod.core import RodState, E3, hat, norm
from SPINEROD.rod.actuation import pneumatic_load, tip_boundary
from SPINEROD.solver.integrate import ShootGuess, integrate_rod
from SPINEROD.utils.consts import (
    SOLVER_TOL, SOLVER_MAX_ITER, FD_STEP, MAX_BACKTRACKS, JACOBIAN_REGULARIZATION
)
from SPINEROD.utils.errors import (
    InvalidParameterError, DivergenceError, SolverFailureError
)

if TYPE_CHECKING:
    from SPINEROD.scenario.scenario import Scenario

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class SolverConfig:
    tol : float = SOLVER_TOL
    max_iter : int = SOLVER_MAX_ITER

    def __post_init__(self):
        if not (math.isfinite(self.tol) and self.tol > 0):
            raise InvalidParameterError("solver.tol", self.tol, f"Tolerance must be positive, got {self.tol}.")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise InvalidParameterError("solver.max_iter", self.max_iter, f"Need at least one iteration, got {self.max_iter}.")

@dataclass(frozen=True, eq=False)
class Residual:
    EF : np.ndarray
    EM : np.ndarray

    def vector(self) -> np.ndarray:
        return np.concatenate((self.EF, self.EM))

    def norm(self) -> float:
        return norm(self.vector())

@dataclass(frozen=True, eq=False)
class SolveResult:
    centerline : List[RodState]
    residual_norm : float
    iterations : int
    converged : bool
    tip_position : np.ndarray
    # Base loads of the returned iterate, for warm starts.
    guess : ShootGuess = field(default_factory=ShootGuess)

    @classmethod
    def failed(cls) -> SolveResult:
        return cls([], math.inf, 0, False, np.full(3, math.nan))

class ShootingProblem():
    """
    Everything a residual evaluation needs, built once per solve.
    """
    def __init__(self, scenario : Scenario):
        self.scenario = scenario
        self.profile = scenario.profile
        self.load = scenario.load_model
        self.A_effect = scenario.A_effect

    def tip_targets(self, R_tip : np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        # The pneumatic load follows the tip, so the targets move with R(L).
        n_P, m_P = pneumatic_load(self.scenario.pressures, self.scenario.layout, self.A_effect, R_tip)
        return tip_boundary(n_P, m_P, self.scenario.tip_load)

    def evaluate(self, x : np.ndarray) -> Tuple[np.ndarray, List[RodState]]:
        states = integrate_rod(ShootGuess.from_vector(x), self.profile, self.load, self.scenario.integration)
        tip = states[-1]
        nL, mL = self.tip_targets(tip.R)
        return np.concatenate((tip.n - nL, tip.m - mL)), states

    def jacobian(self, x : np.ndarray, r : np.ndarray) -> np.ndarray:
        """
        Forward differences, with the step scaled to each component.
        """
        J = np.empty((6, 6))
        for j in range(6):
            h = FD_STEP * max(1.0, abs(x[j]))
            shifted = x.copy()
            shifted[j] += h
            r_j, _ = self.evaluate(shifted)
            J[:, j] = (r_j - r) / h
        return J

def residual(guess : ShootGuess, scenario : Scenario) -> Residual:
    r, _ = ShootingProblem(scenario).evaluate(guess.vector())
    return Residual(r[:3], r[3:])

def straight_guess(scenario : Scenario) -> ShootGuess:
    """
    Base loads that would hold the rod in equilibrium if it stayed straight
    along the base z-axis. A good cold start for moderate pressures.
    """
    problem = ShootingProblem(scenario)
    nL, mL = problem.tip_targets(np.eye(3))
    L = scenario.material.L
    load = problem.load
    spine = load.spine_length
    n0 = nL + load.f * L + load.spine_f * spine
    # Integral of n(s) over the straight rod.
    n_integral = nL * L + load.f * L**2 / 2 + load.spine_f * spine**2 / 2
    m0 = mL + hat(E3) @ n_integral + load.l * L
    return ShootGuess(n0, m0)

def continuation_guess(cell : Scenario, previous_cell : Scenario, previous : ShootGuess) -> ShootGuess:
    """
    Warm start for a neighbouring cell: its own straight-rod guess plus the
    correction the previous cell needed on top of its straight-rod guess.
    """
    offset = previous.vector() - straight_guess(previous_cell).vector()
    return ShootGuess.from_vector(straight_guess(cell).vector() + offset)

def _newton_step(J : np.ndarray, r : np.ndarray, diagnostics : Dict[str, Any], best : SolveResult) -> np.ndarray:
    try:
        step = np.linalg.solve(J, -r)
    except np.linalg.LinAlgError:
        logger.debug("Singular Jacobian, retrying with %g on the diagonal", JACOBIAN_REGULARIZATION)
        try:
            step = np.linalg.solve(J + JACOBIAN_REGULARIZATION * np.eye(6), -r)
        except np.linalg.LinAlgError:
            diagnostics["reason"] = "singular Jacobian"
            raise SolverFailureError(diagnostics, best)
    if not np.isfinite(step).all():
        diagnostics["reason"] = "non-finite Newton step"
        raise SolverFailureError(diagnostics, best)
    return step

def shoot(scenario : Scenario, init : Optional[ShootGuess] = None,
          tol : Optional[float] = None, max_iter : Optional[int] = None) -> SolveResult:
    """
    Damped Newton iteration on the six tip residuals. Returns the converged
    solution, or the best iterate flagged unconverged when the iteration
    budget runs out or the line search stalls.
    """
    tol = scenario.solver.tol if tol is None else tol
    max_iter = scenario.solver.max_iter if max_iter is None else max_iter
    SolverConfig(tol, max_iter)
    if init is None:
        init = straight_guess(scenario)

    problem = ShootingProblem(scenario)
    x = init.vector()
    try:
        r, states = problem.evaluate(x)
    except DivergenceError as error:
        raise SolverFailureError({"reason": "initial guess diverged", "index": error.index, "guess": x.tolist()})
    r_norm = norm(r)
    iterations = 0

    def result() -> SolveResult:
        return SolveResult(states, r_norm, iterations, r_norm < tol, states[-1].p.copy(), ShootGuess.from_vector(x))

    while r_norm >= tol and iterations < max_iter:
        diagnostics : Dict[str, Any] = {"iteration": iterations + 1, "residual_norm": r_norm, "guess": x.tolist()}
        try:
            J = problem.jacobian(x, r)
        except DivergenceError as error:
            diagnostics["reason"] = f"diverged while differencing at index {error.index}"
            raise SolverFailureError(diagnostics, result())
        dx = _newton_step(J, r, diagnostics, result())

        accepted = None
        damping = 1.0
        for _ in range(MAX_BACKTRACKS + 1):
            trial = x + damping * dx
            try:
                r_trial, states_trial = problem.evaluate(trial)
                trial_norm = norm(r_trial)
            except DivergenceError:
                trial_norm = math.inf
            if trial_norm < r_norm:
                accepted = (trial, r_trial, states_trial, trial_norm)
                break
            damping /= 2
        if accepted is None:
            logger.warning("Line search stalled at iteration %d with residual %.3e", iterations + 1, r_norm)
            break

        x, r, states, r_norm = accepted
        iterations += 1
        logger.debug("Newton iteration %d: residual %.3e (damping %g)", iterations, r_norm, damping)

    solved = result()
    if not solved.converged:
        logger.warning("Shooting stopped after %d iterations with residual %.3e", iterations, r_norm)
    return solved

def pressure_sweep(scenario_base : Scenario, pressures : Sequence[float], spine_lengths : Sequence[float],
                   group : Optional[int] = None) -> List[SolveResult]:
    """
    Solves every (spine length, pressure) cell in row-major order. Along a
    row the pressure rises and each cell starts from the previous converged
    one; cells that fail are flagged, not fatal.
    """
    if len(pressures) == 0 or len(spine_lengths) == 0:
        raise InvalidParameterError("sweep", (pressures, spine_lengths), "Both the pressure and spine length lists must be non-empty.")
    results = []
    for spine_length in spine_lengths:
        row = scenario_base.with_spine_length(spine_length)
        previous : Optional[Tuple[Scenario, ShootGuess]] = None
        for pressure in pressures:
            cell = row.with_group_pressure(pressure, group)
            guess = continuation_guess(cell, *previous) if previous is not None else None
            try:
                solved = shoot(cell, guess)
            except SolverFailureError as error:
                logger.warning("Cell (spine %.3f m, %.0f Pa) failed: %s", spine_length, pressure, error)
                solved = error.best if error.best is not None else SolveResult.failed()
                solved = SolveResult(solved.centerline, solved.residual_norm, solved.iterations, False, solved.tip_position, solved.guess)
            if solved.converged:
                previous = (cell, solved.guess)
            logger.info("Cell (spine %.3f m, %.0f Pa): tip %s after %d iterations", spine_length, pressure, solved.tip_position, solved.iterations)
            results.append(solved)
    return results

def sweep_cells(pressures : Sequence[float], spine_lengths : Sequence[float]) -> List[Tuple[float, float]]:
    """
    The (spine length, pressure) pairs in the order pressure_sweep returns them.
    """
    return list(itertools.product(spine_lengths, pressures))
