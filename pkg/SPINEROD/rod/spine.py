"""
The jammed growing spine: Euler-Bernoulli identification of its modulus,
the measured modulus table, the volume-weighted combined modulus of the
robot and spine together, the A_effect calibration schedule, and the
piecewise stiffness profile the solver reads while marching.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from SPINEROD.rod.core import MaterialParams, SectionProperties, section_properties, disk_area
from SPINEROD.utils.consts import SPINE_MODULI, A_EFFECT_SCHEDULE, MAX_SPINE_LENGTH, E_SILICONE
from SPINEROD.utils.errors import (
    InvalidParameterError, DomainError, OutOfEnvelopeError, RigidBodyError
)

Table = Tuple[Tuple[float, float], ...]

INTERPOLATIONS = ("linear", "previous")

def _positive(name : str, value : float):
    if not (math.isfinite(value) and value > 0):
        raise InvalidParameterError(name, value, f"{name} must be positive, got {value}.")

def beam_deflection(F : float, L : float, x : float, E : float, I : float) -> float:
    """
    Cantilever deflection at x under a point force F at x.
    """
    _positive("E", E)
    _positive("I", I)
    if not 0 <= x <= L:
        raise DomainError("x", x, 0, L)
    return F * (3 * L - x) * x**2 / (6 * E * I)

def modulus_from_deflection(F : float, L : float, x : float, y : float, I : float) -> float:
    """
    Inverts the cantilever deflection for E, for any section and load point.
    """
    if y == 0:
        raise RigidBodyError()
    for name, value in (("F", F), ("L", L), ("y", y), ("I", I)):
        _positive(name, value)
    if not 0 < x <= L:
        raise DomainError("x", x, 0, L)
    return F * (3 * L - x) * x**2 / (6 * I * y)

def modulus_from_tip_deflection(F : float, L : float, r : float, y : float) -> float:
    """
    Young's modulus of a solid circular beam of radius r from the deflection
    y under a tip load F.
    """
    if y == 0:
        raise RigidBodyError()
    for name, value in (("F", F), ("L", L), ("r", r), ("y", y)):
        _positive(name, value)
    return 4 * F * L**3 / (3 * math.pi * r**4 * y)

def combined_modulus(E_c : float, E_s : float, V_c : float, V_s : float) -> float:
    """
    Volume-weighted modulus of the robot (c) and the spine (s) bonded together.
    """
    _positive("E_c", E_c)
    _positive("E_s", E_s)
    if V_c < 0 or V_s < 0:
        raise InvalidParameterError("volume", (V_c, V_s), f"Volumes must be non-negative, got {V_c} and {V_s}.")
    total = V_c + V_s
    if total <= 0:
        raise InvalidParameterError("volume", (V_c, V_s), "At least one volume must be positive.")
    return (V_c / total) * E_c + (V_s / total) * E_s

def check_table(table : Sequence[Sequence[float]], name : str, strict_values : bool) -> Table:
    """
    Cleans a (length, value) table: lengths strictly increasing, values
    increasing too (strictly or not).
    """
    cleaned = tuple((float(a), float(b)) for a, b in table)
    if len(cleaned) == 0:
        raise InvalidParameterError(name, table, f"{name} needs at least one entry.")
    for (a0, b0), (a1, b1) in zip(cleaned, cleaned[1:]):
        if a1 <= a0:
            raise InvalidParameterError(name, table, f"{name} lengths must be strictly increasing.")
        if b1 < b0 or (strict_values and b1 == b0):
            raise InvalidParameterError(name, table, f"{name} values must be increasing.")
    if cleaned[0][0] < 0 or any(b <= 0 for _, b in cleaned):
        raise InvalidParameterError(name, table, f"{name} entries must be positive.")
    return cleaned

@dataclass(frozen=True)
class SpineConfig:
    length : float = 0.0
    # None means a snug fit in the robot's inner channel.
    radius : Optional[float] = None
    modulus_table : Table = SPINE_MODULI
    a_effect_table : Table = A_EFFECT_SCHEDULE
    interpolation : str = "linear"
    # Whether the spine's own weight loads the rod; needs rho.
    weight : bool = False
    rho : Optional[float] = None

    def __post_init__(self):
        if not (math.isfinite(self.length) and 0 <= self.length <= MAX_SPINE_LENGTH):
            raise OutOfEnvelopeError(self.length, MAX_SPINE_LENGTH)
        if self.radius is not None:
            _positive("spine.radius", self.radius)
        if self.interpolation not in INTERPOLATIONS:
            raise InvalidParameterError("spine.interpolation", self.interpolation, f"Interpolation must be one of {INTERPOLATIONS}.")
        object.__setattr__(self, "modulus_table", check_table(self.modulus_table, "spine.moduli", True))
        object.__setattr__(self, "a_effect_table", check_table(self.a_effect_table, "spine.a_effect", False))
        if self.weight:
            if self.rho is None:
                raise InvalidParameterError("spine.rho", None, "spine.rho is required when the spine's weight is on.")
            _positive("spine.rho", self.rho)

def _lookup(table : Table, x : float, interpolation : str) -> float:
    lengths = [a for a, _ in table]
    values = [b for _, b in table]
    if interpolation == "previous":
        index = int(np.searchsorted(lengths, x, side="right")) - 1
        return values[max(index, 0)]
    return float(np.interp(x, lengths, values))

def spine_modulus(spine : SpineConfig, length : float, E_silicone : float = E_SILICONE) -> float:
    """
    Jammed spine modulus at a given length: the measured value at tabulated
    lengths, interpolated in between, and blended towards silicone below the
    shortest measurement.
    """
    if not length > 0:
        raise InvalidParameterError("spine.length", length, "The spine modulus is only defined for a spine that is present.")
    limit = min(MAX_SPINE_LENGTH, spine.modulus_table[-1][0])
    if length > limit:
        raise OutOfEnvelopeError(length, limit)
    table = spine.modulus_table
    if table[0][0] > 0:
        table = ((0.0, E_silicone),) + table
    return _lookup(table, length, spine.interpolation)

def effective_area_coefficient(spine_length : float, schedule : Table = A_EFFECT_SCHEDULE) -> float:
    limit = min(MAX_SPINE_LENGTH, schedule[-1][0])
    if not (math.isfinite(spine_length) and schedule[0][0] <= spine_length <= limit):
        raise OutOfEnvelopeError(spine_length, limit)
    return _lookup(schedule, spine_length, "linear")

def a_effect(spine_length : float, A_norm : float, schedule : Table = A_EFFECT_SCHEDULE) -> float:
    """
    The calibrated pressurised area of one chamber for a given spine length.
    """
    _positive("A_norm", A_norm)
    return effective_area_coefficient(spine_length, schedule) * A_norm

@dataclass(frozen=True, eq=False)
class StiffnessProfile:
    spine : SpineConfig
    mat : MaterialParams
    E_combined : float = field(init=False)
    boundary_s : float = field(init=False)
    _combined : SectionProperties = field(init=False, repr=False)
    _silicone : SectionProperties = field(init=False, repr=False)

    def __post_init__(self):
        spine_radius = self.spine_radius
        if spine_radius > self.mat.r_i:
            raise InvalidParameterError("spine.radius", spine_radius, f"The spine (radius {spine_radius} m) does not fit in the inner channel (radius {self.mat.r_i} m).")
        E_combined = self.mat.E_silicone
        if self.spine.length > 0:
            # Shared length, so the volume ratio is the area ratio.
            E_spine = spine_modulus(self.spine, self.spine.length, self.mat.E_silicone)
            E_combined = combined_modulus(self.mat.E_silicone, E_spine, self.mat.area, disk_area(spine_radius))
        object.__setattr__(self, "E_combined", E_combined)
        object.__setattr__(self, "boundary_s", self.spine.length)
        object.__setattr__(self, "_combined", section_properties(self.mat, E_combined))
        object.__setattr__(self, "_silicone", section_properties(self.mat, self.mat.E_silicone))

    @property
    def spine_radius(self) -> float:
        return self.mat.r_i if self.spine.radius is None else self.spine.radius

    def breakpoints(self) -> Tuple[float, ...]:
        return (self.boundary_s,) if self.boundary_s > 0 else ()

def stiffness_at(profile : StiffnessProfile, s : float) -> SectionProperties:
    if not 0 <= s <= profile.mat.L:
        raise DomainError("s", s, 0, profile.mat.L)
    if s < profile.boundary_s:
        return profile._combined
    return profile._silicone
