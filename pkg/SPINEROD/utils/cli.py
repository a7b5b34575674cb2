import argparse
from pathlib import Path

from SPINEROD.scenario.scenario import Scenario, load_scenario
from SPINEROD.utils.consts import OUTPUT_DIR

def add_scenario_arguments(parser : argparse.ArgumentParser):
    """
    The scenario file plus the overrides every solving command accepts.
    """
    parser.add_argument("scenario", type=Path, help="scenario file (key = value lines)")
    parser.add_argument("--no-gravity", action="store_true", help="switch gravity off, including the tip mass")
    parser.add_argument("--tol", type=float, default=None, help="Newton residual tolerance")
    parser.add_argument("--max-iter", type=int, default=None, help="Newton iteration budget")
    parser.add_argument("--grid-n", type=int, default=None, help="number of grid points")
    parser.add_argument("--output", type=Path, default=None,
                        help=f"output directory (default $SPINEROD_OUTPUT_DIR or '{OUTPUT_DIR}')")

def scenario_from_args(args : argparse.Namespace) -> Scenario:
    scenario = load_scenario(args.scenario)
    return scenario.with_overrides(gravity=False if args.no_gravity else None,
                                   tol=args.tol, max_iter=args.max_iter, N=args.grid_n)

def output_dir(args : argparse.Namespace) -> Path:
    """
    Each scenario file writes under its own subdirectory, named after it.
    """
    root = Path(OUTPUT_DIR) if args.output is None else args.output
    return root / args.scenario.stem
