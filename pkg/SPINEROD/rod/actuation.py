"""
Pneumatic actuation: where the nine chambers sit in the cross-section, the
force and moment their pressures put on the free end, and the resulting
boundary condition at the tip.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from SPINEROD.rod.core import MaterialParams, Vec3, Mat3, E3, as_vec3, norm, hat
from SPINEROD.utils.consts import (
    CHAMBER_COUNT, CHAMBER_SPACING_DEG, DEFAULT_GROUPS, MAX_PRESSURE,
    TIP_MASS, GRAVITY, GRAVITY_DIRECTION
)
from SPINEROD.utils.errors import InvalidCommandError, InvalidParameterError

Triplet = Tuple[int, int, int]

@dataclass(frozen=True)
class ChamberLayout:
    count : int
    positions : Tuple[Tuple[float, float, float], ...]
    A_norm : float
    group_map : Tuple[Triplet, ...] = DEFAULT_GROUPS

    def __post_init__(self):
        if self.count != CHAMBER_COUNT or len(self.positions) != self.count:
            raise InvalidParameterError("layout.count", self.count, f"The robot has exactly {CHAMBER_COUNT} chambers.")
        object.__setattr__(self, "group_map", check_groups(self.group_map))

    def positions_array(self) -> np.ndarray:
        return np.array(self.positions, dtype=float)

    def group(self, group : int) -> Triplet:
        """
        Chambers of a group, numbered from 1.
        """
        if not 1 <= group <= len(self.group_map):
            raise InvalidCommandError(f"Group {group} does not exist; groups are numbered 1 to {len(self.group_map)}.")
        return self.group_map[group - 1]

    def centroid(self, group : int) -> Vec3:
        return self.positions_array()[list(self.group(group))].mean(axis=0)

def check_groups(groups : Sequence[Sequence[int]]) -> Tuple[Triplet, ...]:
    """
    Three triplets that between them use every chamber exactly once.
    """
    cleaned = tuple(tuple(int(c) for c in group) for group in groups)
    if len(cleaned) != 3 or any(len(group) != 3 for group in cleaned):
        raise InvalidParameterError("layout.groups", groups, "Chambers must be split into 3 groups of 3.")
    if sorted(c for group in cleaned for c in group) != list(range(CHAMBER_COUNT)):
        raise InvalidParameterError("layout.groups", groups, f"Each of the chambers 0 to {CHAMBER_COUNT - 1} must appear in exactly one group.")
    return cleaned # type: ignore

def default_layout(mat : MaterialParams, groups : Sequence[Sequence[int]] = DEFAULT_GROUPS) -> ChamberLayout:
    """
    Nine chambers spaced 40 degrees apart on the path radius, grouped into
    contiguous triplets.
    """
    positions = []
    for i in range(CHAMBER_COUNT):
        theta = math.radians(i * CHAMBER_SPACING_DEG)
        positions.append((mat.r_path * math.cos(theta), mat.r_path * math.sin(theta), 0.0))
    return ChamberLayout(CHAMBER_COUNT, tuple(positions), math.pi * mat.r_c**2, check_groups(groups))

@dataclass(frozen=True)
class PressureCommand:
    pressures : Tuple[float, ...] = (0.0,) * CHAMBER_COUNT

    def __post_init__(self):
        pressures = tuple(float(p) for p in self.pressures)
        if len(pressures) != CHAMBER_COUNT:
            raise InvalidCommandError(f"Expected {CHAMBER_COUNT} chamber pressures, got {len(pressures)}.")
        for i, p in enumerate(pressures):
            if not math.isfinite(p) or p < 0:
                raise InvalidCommandError(f"Chamber {i} pressure must be non-negative, got {p} Pa.")
            if p > MAX_PRESSURE:
                raise InvalidCommandError(f"Chamber {i} pressure {p} Pa is above the {MAX_PRESSURE} Pa ceiling.")
        object.__setattr__(self, "pressures", pressures)

    def peak(self) -> float:
        return max(self.pressures)

def group_pressures(layout : ChamberLayout, group : int, pressure : float) -> PressureCommand:
    """
    Pressurises the three chambers of one group and leaves the other six at zero.
    """
    chambers = layout.group(group)
    return PressureCommand(tuple(pressure if i in chambers else 0.0 for i in range(layout.count)))

def uniform_pressures(pressure : float) -> PressureCommand:
    return PressureCommand((pressure,) * CHAMBER_COUNT)

@dataclass(frozen=True)
class ExternalLoad:
    """
    Extra force and moment on the tip, in the base frame. Zero unless given;
    Scenario.tip_load falls back to tip_mass() while gravity is on.
    """
    F_external : Tuple[float, float, float] = (0.0, 0.0, 0.0)
    L_external : Tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "F_external", tuple(as_vec3(self.F_external, "external.force")))
        object.__setattr__(self, "L_external", tuple(as_vec3(self.L_external, "external.moment")))

    @classmethod
    def tip_mass(cls, g_dir : Sequence[float] = GRAVITY_DIRECTION, mass : float = TIP_MASS) -> ExternalLoad:
        """
        The weight of a mass hanging from the tip.
        """
        direction = as_vec3(g_dir, "gravity.direction")
        if norm(direction) == 0:
            raise InvalidParameterError("gravity.direction", g_dir, "Gravity direction must be non-zero.")
        return cls(tuple(mass * GRAVITY * direction / norm(direction)))

def pneumatic_load(cmd : PressureCommand, layout : ChamberLayout, A_effect : float, R_tip : Mat3) -> Tuple[Vec3, Vec3]:
    """
    Force and moment of the pressurised chambers on the free end. The force
    follows the tip tangent R_tip e3; chamber positions are the undeformed
    cross-section coordinates.
    """
    if not (math.isfinite(A_effect) and A_effect > 0):
        raise InvalidParameterError("A_effect", A_effect, f"Effective chamber area must be positive, got {A_effect}.")
    pressures = np.array(cmd.pressures, dtype=float)
    if (pressures < 0).any():
        raise InvalidCommandError("Chamber pressures must be non-negative.")
    thrust = A_effect * (R_tip @ E3)
    n_P = pressures.sum() * thrust
    m_P = hat(pressures @ layout.positions_array()) @ thrust
    return n_P, m_P

def tip_boundary(n_P : Vec3, m_P : Vec3, ext : ExternalLoad) -> Tuple[Vec3, Vec3]:
    return n_P + np.array(ext.F_external), m_P + np.array(ext.L_external)
