import argparse
from pathlib import Path

from SPINEROD.scenario.scenario import Scenario
from SPINEROD.study import run, compare
from SPINEROD.utils.actions import Outcome, Message, to_outcome
from SPINEROD.utils.cli import add_scenario_arguments, scenario_from_args, output_dir
from SPINEROD.utils.text import format_vector

class Solving():
    """
    Single solves of one scenario file.
    """
    def register(self, subparsers):
        solve = subparsers.add_parser("solve", help="solve one scenario and write its centerline",
                                      description=self.solve.__doc__)
        add_scenario_arguments(solve)
        solve.set_defaults(handler=self.solve)

        comparison = subparsers.add_parser("compare", help="compare against the constant-curvature model",
                                           description=self.compare.__doc__)
        add_scenario_arguments(comparison)
        comparison.set_defaults(handler=self.compare)

    def solve(self, args : argparse.Namespace) -> Outcome:
        """
        Solves <scenario> and writes centerline.csv and summary.json.
        """
        return solve_scenario(scenario_from_args(args), output_dir(args))

    def compare(self, args : argparse.Namespace) -> Outcome:
        """
        Solves <scenario> and prints its tip next to the tip the piecewise
        constant-curvature model predicts for the same actuation.
        """
        return compare_scenario(scenario_from_args(args))

def solve_scenario(scenario : Scenario, out_dir : Path) -> Outcome:
    record = run(scenario, out_dir)
    lines = [
        f"Tip position: {format_vector(record.tip_position)} m",
        f"Residual {record.residual_norm:.3e} after {record.iterations} iterations",
        f"Centerline written to {record.centerline_path}",
    ]
    if not record.converged:
        lines.append("NOT CONVERGED: the centerline is the best iterate found.")
    return Message("\n".join(lines), to_outcome(record.converged).exit_code)

def compare_scenario(scenario : Scenario) -> Outcome:
    comparison = compare(scenario)
    lines = [
        f"Cosserat tip:          {format_vector(comparison.cosserat_tip)} m",
        f"Constant-curvature tip: {format_vector(comparison.curvature_tip)} m",
        f"Distance: {comparison.distance:.6g} m",
    ]
    if not comparison.converged:
        lines.append("NOT CONVERGED: the Cosserat tip is the best iterate found.")
    return Message("\n".join(lines), to_outcome(comparison.converged).exit_code)
