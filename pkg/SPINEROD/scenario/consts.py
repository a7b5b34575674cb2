import math

from SPINEROD.scenario.validators import (
    TypeValidator, RangeValidator, InValidator, BothValidator, BoolValidator,
    ListValidator, VectorValidator, TableValidator
)
from SPINEROD.utils.consts import MAX_PRESSURE, MAX_SPINE_LENGTH, CHAMBER_COUNT, MIN_GRID_POINTS
from SPINEROD.rod.spine import INTERPOLATIONS

def _number(low=-math.inf, high=math.inf, open_min=False):
    return BothValidator(TypeValidator(float), RangeValidator(low, high, open_min))

def _integer(low, high=math.inf):
    return BothValidator(TypeValidator(int), RangeValidator(low, high))

_POSITIVE = _number(0, open_min=True)

# Every key a scenario file may set, with its cleaner and what a good value
# looks like (used in the error message when the cleaner rejects it).
KEYS = {
    "material.E": (_POSITIVE, "a positive Young's modulus in Pa"),
    "material.G": (_POSITIVE, "a positive shear modulus in Pa"),
    "material.rho": (_POSITIVE, "a positive density in kg/m^3"),
    "material.r_o": (_POSITIVE, "a positive outer radius in m"),
    "material.r_i": (_number(0), "a non-negative inner radius in m"),
    "material.r_c": (_POSITIVE, "a positive chamber radius in m"),
    "material.r_path": (_POSITIVE, "a positive chamber path radius in m"),
    "material.L": (_POSITIVE, "a positive rod length in m"),
    "layout.groups": (ListValidator(ListValidator(TypeValidator(int), 3), 3, ";"),
                      "three ';'-separated triplets of chamber indices"),
    "spine.length": (_number(0, MAX_SPINE_LENGTH),
                     f"a spine length within the tested envelope [0, {MAX_SPINE_LENGTH}] m"),
    "spine.radius": (_POSITIVE, "a positive spine radius in m"),
    "spine.moduli": (TableValidator(), "comma-separated length:modulus pairs"),
    "spine.a_effect": (TableValidator(), "comma-separated length:coefficient pairs"),
    "spine.interpolation": (InValidator(INTERPOLATIONS), f"one of {', '.join(INTERPOLATIONS)}"),
    "spine.weight": (BoolValidator(), "on or off"),
    "spine.rho": (_POSITIVE, "a positive spine density in kg/m^3"),
    "actuation.coefficient": (_POSITIVE, "a positive A_effect / A_norm ratio"),
    "group": (BothValidator(TypeValidator(int), InValidator((1, 2, 3))), "a chamber group, 1 to 3"),
    "pressure": (_number(0, MAX_PRESSURE), f"a pressure in [0, {MAX_PRESSURE:.0f}] Pa"),
    "pressures": (ListValidator(_number(0, MAX_PRESSURE), CHAMBER_COUNT),
                  f"{CHAMBER_COUNT} comma-separated pressures in [0, {MAX_PRESSURE:.0f}] Pa"),
    "external.force": (VectorValidator(), "three comma-separated force components in N"),
    "external.moment": (VectorValidator(), "three comma-separated moment components in N m"),
    "gravity": (BoolValidator(), "on or off"),
    "gravity.direction": (VectorValidator(), "three comma-separated components"),
    "integration.N": (_integer(MIN_GRID_POINTS), f"an integer number of grid points, at least {MIN_GRID_POINTS}"),
    "integration.reorthonormalize_every": (_integer(1), "a positive integer"),
    "solver.tol": (_POSITIVE, "a positive tolerance"),
    "solver.max_iter": (_integer(1), "a positive integer"),
}
