# Physical parameters of the robot, all SI.
E_SILICONE = 0.507147e6
DENSITY = 1300.0
OUTER_RADIUS = 0.05
INNER_RADIUS = 0.029
CHAMBER_RADIUS = 0.005
CHAMBER_PATH_RADIUS = 0.04
ROD_LENGTH = 0.4

GRAVITY = 9.81
# The robot hangs tip-down from its frame, so +z of the base frame points down.
GRAVITY_DIRECTION = (0.0, 0.0, 1.0)
# The 53 gram mass carried at the tip.
TIP_MASS = 0.053

# Chambers.
CHAMBER_COUNT = 9
CHAMBER_SPACING_DEG = 40.0
DEFAULT_GROUPS = ((0, 1, 2), (3, 4, 5), (6, 7, 8))
# Safety ceiling on any single chamber pressure.
MAX_PRESSURE = 400e3

# Jammed spine: measured modulus against spine length.
MAX_SPINE_LENGTH = 0.30
SPINE_MODULI = (
    (0.05, 0.318e6),
    (0.10, 1.323e6),
    (0.15, 2.032e6),
    (0.20, 3.069e6),
    (0.25, 3.763e6),
    (0.30, 4.389e6),
)
# Calibrated A_effect / A_norm against spine length.
A_EFFECT_SCHEDULE = (
    (0.0, 1.5),
    (0.05, 1.5),
    (0.10, 1.7),
    (0.15, 1.9),
    (0.20, 2.0),
    (0.25, 2.15),
    (0.30, 2.4),
)

# Discretisation and solver.
GRID_POINTS = 100
MIN_GRID_POINTS = 10
REORTHONORMALIZE_EVERY = 1
ROTATION_TOLERANCE = 1e-6
SOLVER_TOL = 1e-8
SOLVER_MAX_ITER = 50
FD_STEP = 1e-6
MAX_BACKTRACKS = 8
JACOBIAN_REGULARIZATION = 1e-9

# Study presets.
SWEEP_PRESSURES = (50e3, 100e3, 150e3, 200e3, 250e3)
SWEEP_SPINES = (0.0, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30)
ELONGATION_PRESSURES = (30e3, 60e3, 90e3, 120e3, 150e3)
CONVERGENCE_GRID = (100, 200, 400, 800, 1600, 3200)

CENTERLINE_HEADER = "s,px,py,pz,nx,ny,nz,mx,my,mz"

# env stuff

from dotenv import load_dotenv
import os

load_dotenv()

OUTPUT_DIR = os.getenv("SPINEROD_OUTPUT_DIR", "results")
LOG_LEVEL = os.getenv("SPINEROD_LOG_LEVEL", "WARNING")
