import argparse
from pathlib import Path
from typing import Optional, Sequence

from SPINEROD.scenario.scenario import Scenario
from SPINEROD.study import (
    sweep, cell_name, convergence_study, write_convergence_table, elongation_study,
    elongation_fit, write_elongation_table, SWEEP_HEADER, CONVERGENCE_HEADER, ELONGATION_HEADER
)
from SPINEROD.utils.actions import Outcome, Message, to_outcome
from SPINEROD.utils.cli import add_scenario_arguments, scenario_from_args, output_dir
from SPINEROD.utils.consts import SWEEP_PRESSURES, SWEEP_SPINES, ELONGATION_PRESSURES, CONVERGENCE_GRID
from SPINEROD.utils.text import format_table, list_to_and_separated

class Studies():
    """
    Sweeps and studies over many solves of one base scenario.
    """
    def register(self, subparsers):
        grid = subparsers.add_parser("sweep", help="solve a grid of spine lengths and pressures",
                                     description=self.sweep.__doc__)
        add_scenario_arguments(grid)
        grid.add_argument("--pressures", type=float, nargs="+", default=list(SWEEP_PRESSURES), help="group pressures in Pa")
        grid.add_argument("--spines", type=float, nargs="+", default=list(SWEEP_SPINES), help="spine lengths in m")
        grid.add_argument("--group", type=int, default=None, help="chamber group to pressurise (default from the scenario)")
        grid.set_defaults(handler=self.sweep)

        converge = subparsers.add_parser("converge", help="measure the discretisation error against grid size",
                                         description=self.converge.__doc__)
        add_scenario_arguments(converge)
        converge.add_argument("--grid", type=int, nargs="+", default=list(CONVERGENCE_GRID), help="ascending grid sizes")
        converge.set_defaults(handler=self.converge)

        elongate = subparsers.add_parser("elongate", help="uniform pressurisation of all nine chambers",
                                         description=self.elongate.__doc__)
        add_scenario_arguments(elongate)
        elongate.add_argument("--pressures", type=float, nargs="+", default=list(ELONGATION_PRESSURES), help="pressures in Pa")
        elongate.add_argument("--spines", type=float, nargs="+", default=list(SWEEP_SPINES), help="spine lengths in m")
        elongate.add_argument("--calibrated", action="store_true",
                              help="use the calibrated A_effect schedule instead of the bare-rod value")
        elongate.set_defaults(handler=self.elongate)

    def sweep(self, args : argparse.Namespace) -> Outcome:
        """
        Solves every (spine length, pressure) pair for <scenario>, writing one
        directory per cell and the aggregate sweep.csv.
        """
        return sweep_grid(scenario_from_args(args), args.pressures, args.spines, output_dir(args), args.group)

    def converge(self, args : argparse.Namespace) -> Outcome:
        """
        Solves <scenario> on each grid size and reports the tip error and the
        estimated order of convergence.
        """
        return converge_grid(scenario_from_args(args), args.grid, output_dir(args))

    def elongate(self, args : argparse.Namespace) -> Outcome:
        """
        Pressurises all nine chambers of <scenario> equally and reports the
        elongation for each spine length and pressure.
        """
        return elongate_grid(scenario_from_args(args), args.pressures, args.spines, output_dir(args), not args.calibrated)

def sweep_grid(base : Scenario, pressures : Sequence[float], spines : Sequence[float], out_dir : Path,
               group : Optional[int] = None) -> Outcome:
    if group is not None:
        base = base.with_group_pressure(0.0, group)
    records = sweep(base, pressures, spines, out_dir)
    rows = [(r.spine_length, r.pressure, *r.tip_position, r.converged) for r in records]
    converged = sum(r.converged for r in records)
    text = format_table(rows, SWEEP_HEADER)
    text += f"\n{converged} of {len(records)} cells converged; table written to {Path(out_dir) / 'sweep.csv'}"
    failed = [cell_name(r.spine_length, r.pressure) for r in records if not r.converged]
    if failed:
        text += f"\nNot converged: {list_to_and_separated(failed)}"
    return Message(text, to_outcome(converged == len(records)).exit_code)

def converge_grid(scenario : Scenario, grid : Sequence[int], out_dir : Path) -> Outcome:
    study = convergence_study(scenario, grid)
    Path(out_dir).mkdir(parents=True, exist_ok=True)
    write_convergence_table(study, Path(out_dir) / "convergence.csv")
    text = format_table([(row.N, row.ds, row.tip_error) for row in study.rows], CONVERGENCE_HEADER)
    ratios = ", ".join(f"{ratio:.3f}" for ratio in study.ratios())
    text += f"\nError ratios per refinement: {ratios}\nEstimated order: {study.order:.3f}"
    return Message(text)

def elongate_grid(base : Scenario, pressures : Sequence[float], spines : Sequence[float], out_dir : Path,
                  hold_a_effect : bool = True) -> Outcome:
    rows = elongation_study(base, pressures, spines, hold_a_effect)
    Path(out_dir).mkdir(parents=True, exist_ok=True)
    write_elongation_table(rows, Path(out_dir) / "elongation.csv")
    text = format_table([(r.spine_length, r.pressure, r.coefficient, r.elongation, r.converged) for r in rows], ELONGATION_HEADER)
    if hold_a_effect:
        text += f"\nA_effect / A_norm held at {rows[0].coefficient:g} for every spine length"
    else:
        text += "\nA_effect / A_norm follows the calibrated schedule"
    if len(pressures) >= 2:
        for spine in spines:
            fit = elongation_fit(rows, spine)
            text += f"\nSpine {spine:g} m: {fit.slope:.4g} m/Pa, R^2 = {fit.r_squared:.5f}"
    converged = all(r.converged for r in rows)
    return Message(text, to_outcome(converged).exit_code)
