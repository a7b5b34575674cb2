"""
Runs solves and whole studies, and writes what they produce: centerline
CSVs, JSON run summaries and the aggregate tables.
"""

from __future__ import annotations

import csv
import json
import logging
import math
from dataclasses import dataclass, asdict, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from SPINEROD.rod.core import RodState, norm
from SPINEROD.rod.spine import effective_area_coefficient
from SPINEROD.scenario.scenario import Scenario
from SPINEROD.solver.shooting import SolveResult, ShootGuess, shoot, pressure_sweep, sweep_cells
from SPINEROD.solver.curvature import constant_curvature_tip
from SPINEROD.utils.consts import CENTERLINE_HEADER
from SPINEROD.utils.errors import InvalidParameterError, SolverFailureError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

SWEEP_HEADER = ["spine_length", "pressure", "tip_x", "tip_y", "tip_z", "converged"]
CONVERGENCE_HEADER = ["N", "ds", "tip_error"]
ELONGATION_HEADER = ["spine_length", "pressure", "a_effect_coefficient", "elongation", "converged"]

@dataclass(frozen=True)
class ResultRecord:
    spine_length : float
    pressure : float
    N : int
    tip_position : Tuple[float, float, float]
    residual_norm : float
    iterations : int
    converged : bool
    centerline_path : Optional[str] = None

    @classmethod
    def from_result(cls, scenario : Scenario, result : SolveResult, centerline_path : Optional[str] = None) -> ResultRecord:
        return cls(scenario.spine.length, scenario.pressure, scenario.integration.N,
                   tuple(float(x) for x in result.tip_position), float(result.residual_norm),
                   result.iterations, bool(result.converged), centerline_path)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["tip_position"] = list(self.tip_position)
        return data

def write_centerline(states : Sequence[RodState], path : PathLike):
    rows = np.array([state.as_row() for state in states])
    np.savetxt(path, rows, fmt="%.17g", delimiter=",", header=CENTERLINE_HEADER, comments="")
    logger.info("Wrote %d centerline rows to %s", len(rows), path)

def write_summary(record : ResultRecord, path : PathLike):
    with open(path, "w") as summary_file:
        json.dump(record.to_dict(), summary_file, indent=2, sort_keys=True)
        summary_file.write("\n")
    logger.info("Wrote run summary to %s", path)

def _write_table(header : Sequence[str], rows : Sequence[Sequence[Any]], path : PathLike):
    with open(path, "w", newline="") as table_file:
        writer = csv.writer(table_file)
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(v)) if isinstance(v, float) else v for v in row])
    logger.info("Wrote %d rows to %s", len(rows), path)

def _record_result(scenario : Scenario, result : SolveResult, directory : Path) -> ResultRecord:
    directory.mkdir(parents=True, exist_ok=True)
    centerline_path = None
    if result.centerline:
        centerline_path = str(directory / "centerline.csv")
        write_centerline(result.centerline, centerline_path)
    record = ResultRecord.from_result(scenario, result, centerline_path)
    write_summary(record, directory / "summary.json")
    return record

def run(scenario : Scenario, out_dir : PathLike, init : Optional[ShootGuess] = None) -> ResultRecord:
    """
    Solves one scenario and writes centerline.csv and summary.json into
    out_dir. Solver failures propagate with their diagnostics.
    """
    return _record_result(scenario, shoot(scenario, init), Path(out_dir))

def cell_name(spine_length : float, pressure : float) -> str:
    return f"spine_{spine_length:g}m_{pressure:g}Pa"

def _check_unique(name : str, values : Sequence[float]):
    if len(set(values)) != len(values):
        raise InvalidParameterError(name, values, f"The {name} list has repeated values.")

def sweep(base : Scenario, pressures : Sequence[float], spine_lengths : Sequence[float], out_dir : PathLike) -> List[ResultRecord]:
    """
    Solves the whole (spine length, pressure) grid, writing each cell into
    its own directory and the aggregate table to sweep.csv once every cell
    is done.
    """
    _check_unique("pressures", pressures)
    _check_unique("spine lengths", spine_lengths)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    results = pressure_sweep(base, pressures, spine_lengths)
    records = []
    for (spine_length, pressure), result in zip(sweep_cells(pressures, spine_lengths), results):
        cell = base.with_spine_length(spine_length).with_group_pressure(pressure)
        records.append(_record_result(cell, result, out / cell_name(spine_length, pressure)))
    rows = [(r.spine_length, r.pressure, *r.tip_position, int(r.converged)) for r in records]
    _write_table(SWEEP_HEADER, rows, out / "sweep.csv")
    return records

@dataclass(frozen=True)
class ConvergenceRow:
    N : int
    ds : float
    tip_error : float

@dataclass(frozen=True)
class ConvergenceStudy:
    rows : Tuple[ConvergenceRow, ...]
    # Fitted slope of log(error) against log(ds); NaN if there is nothing to fit.
    order : float

    def ratios(self) -> List[float]:
        """
        Error ratio of each grid to the next finer one.
        """
        return [coarse.tip_error / fine.tip_error if fine.tip_error > 0 else math.nan
                for coarse, fine in zip(self.rows, self.rows[1:])]

def convergence_study(scenario : Scenario, N_list : Sequence[int]) -> ConvergenceStudy:
    """
    Solves on every grid and measures each tip against the Richardson
    extrapolation of the two finest solutions. Any unconverged grid aborts
    the study.
    """
    if len(N_list) < 3 or any(fine <= coarse for coarse, fine in zip(N_list, N_list[1:])):
        raise InvalidParameterError("grid", N_list, "Need at least 3 strictly ascending grid sizes.")
    L = scenario.material.L
    tips = []
    guess = None
    for N in N_list:
        result = shoot(scenario.with_overrides(N=N), guess)
        if not result.converged:
            raise SolverFailureError({"reason": "unconverged grid", "N": N, "residual_norm": result.residual_norm,
                                      "iterations": result.iterations}, result)
        logger.info("N = %d: tip %s", N, result.tip_position)
        tips.append(result.tip_position)
        guess = result.guess
    ratio = (N_list[-1] - 1) / (N_list[-2] - 1)
    reference = tips[-1] + (tips[-1] - tips[-2]) / (ratio - 1)
    rows = tuple(ConvergenceRow(N, L / (N - 1), norm(tip - reference)) for N, tip in zip(N_list, tips))

    order = math.nan
    fitted = [row for row in rows if row.tip_error > 0]
    if len(fitted) >= 2:
        slope, _ = np.polyfit(np.log([row.ds for row in fitted]), np.log([row.tip_error for row in fitted]), 1)
        order = float(slope)
    return ConvergenceStudy(rows, order)

def write_convergence_table(study : ConvergenceStudy, path : PathLike):
    _write_table(CONVERGENCE_HEADER, [(row.N, row.ds, row.tip_error) for row in study.rows], path)

@dataclass(frozen=True)
class ElongationRow:
    spine_length : float
    pressure : float
    # A_effect / A_norm used for the cell.
    coefficient : float
    elongation : float
    converged : bool

@dataclass(frozen=True)
class LinearFit:
    slope : float
    intercept : float
    r_squared : float

def elongation_study(base : Scenario, pressures : Sequence[float], spine_lengths : Optional[Sequence[float]] = None,
                     hold_a_effect : bool = True) -> List[ElongationRow]:
    """
    Pressurises all nine chambers equally and reports how far the tip
    moves along the rod axis, for every spine length and pressure. With
    hold_a_effect the bare-rod coefficient is used for every spine length.
    """
    _check_unique("pressures", pressures)
    if spine_lengths is None:
        spine_lengths = (base.spine.length,)
    rows = []
    for spine_length in spine_lengths:
        cell = base.with_spine_length(spine_length)
        if hold_a_effect and cell.a_effect_coefficient is None:
            cell = replace(cell, a_effect_coefficient=effective_area_coefficient(0.0, cell.spine.a_effect_table))
        coefficient = cell.A_effect / cell.layout.A_norm
        guess = None
        for pressure in pressures:
            result = shoot(cell.with_uniform_pressure(pressure), guess)
            if result.converged:
                guess = result.guess
            elongation = float(result.tip_position[2]) - cell.material.L
            logger.info("Spine %.3f m at %.0f Pa: elongation %.6g m", spine_length, pressure, elongation)
            rows.append(ElongationRow(spine_length, pressure, coefficient, elongation, result.converged))
    return rows

def elongation_fit(rows : Sequence[ElongationRow], spine_length : float) -> LinearFit:
    """
    Least-squares line of elongation against pressure for one spine length.
    """
    chosen = [row for row in rows if row.spine_length == spine_length]
    if len(chosen) < 2:
        raise InvalidParameterError("spine_length", spine_length, "Need at least two pressures to fit a line.")
    pressures = np.array([row.pressure for row in chosen])
    elongations = np.array([row.elongation for row in chosen])
    slope, intercept = np.polyfit(pressures, elongations, 1)
    spread = np.sum((elongations - elongations.mean())**2)
    misfit = np.sum((elongations - (slope * pressures + intercept))**2)
    r_squared = 1.0 - misfit / spread if spread > 0 else 1.0
    return LinearFit(float(slope), float(intercept), float(r_squared))

def write_elongation_table(rows : Sequence[ElongationRow], path : PathLike):
    _write_table(ELONGATION_HEADER, [(r.spine_length, r.pressure, r.coefficient, r.elongation, int(r.converged)) for r in rows], path)

@dataclass(frozen=True, eq=False)
class Comparison:
    cosserat_tip : np.ndarray
    curvature_tip : np.ndarray
    converged : bool

    @property
    def distance(self) -> float:
        return norm(self.cosserat_tip - self.curvature_tip)

def compare(scenario : Scenario) -> Comparison:
    """
    The Cosserat tip next to the constant-curvature estimate.
    """
    result = shoot(scenario)
    return Comparison(result.tip_position, constant_curvature_tip(scenario), result.converged)
