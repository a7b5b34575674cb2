"""
The static rod itself: its value types, the skew map, the cross-section
stiffness, the linear constitutive law and the right-hand side of the rod
ODEs that the solver marches along the arc length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence, Tuple

import numpy as np

from SPINEROD.utils.consts import (
    E_SILICONE, DENSITY, OUTER_RADIUS, INNER_RADIUS, CHAMBER_RADIUS,
    CHAMBER_PATH_RADIUS, ROD_LENGTH, GRAVITY, GRAVITY_DIRECTION
)
from SPINEROD.utils.errors import InvalidParameterError, SingularStiffnessError

# Aliases only; both are plain float64 arrays of shape (3,) and (3, 3).
Vec3 = np.ndarray
Mat3 = np.ndarray

E3 = np.array([0.0, 0.0, 1.0])
V_STAR = np.array([0.0, 0.0, 1.0])
U_STAR = np.zeros(3)

def as_vec3(values : Any, name : str = "vector") -> Vec3:
    """
    Turns any three-element sequence into a finite float vector, or raises.
    """
    try:
        vec = np.array(values, dtype=float).reshape(3)
    except (TypeError, ValueError):
        raise InvalidParameterError(name, values, f"{name} must have exactly three components.")
    if not np.isfinite(vec).all():
        raise InvalidParameterError(name, values, f"{name} must be finite.")
    return vec

def norm(v : Vec3) -> float:
    return math.sqrt(float(v @ v))

def hat(v : Vec3) -> Mat3:
    """
    The skew-symmetric matrix with hat(v) @ w == cross(v, w).
    """
    return np.array([[0.0, -v[2], v[1]],
                     [v[2], 0.0, -v[0]],
                     [-v[1], v[0], 0.0]])

def orthonormalize(R : Mat3) -> Mat3:
    """
    Pulls a drifting rotation back onto SO(3). The tangent column keeps its
    direction; the other two are rebuilt from cross products.
    """
    z = R[:, 2] / norm(R[:, 2])
    y = hat(z) @ R[:, 0]
    y = y / norm(y)
    x = hat(y) @ z
    return np.column_stack((x, y, z))

def rotation_error(R : Mat3) -> float:
    return float(np.linalg.norm(R.T @ R - np.eye(3)))

def disk_area(r : float) -> float:
    return math.pi * r**2

def annulus_area(r_o : float, r_i : float) -> float:
    return math.pi * (r_o**2 - r_i**2)

def annulus_second_moment(r_o : float, r_i : float) -> float:
    """
    Second moment of an annulus about a diameter. r_i = 0 gives the solid disk.
    """
    return math.pi / 4 * (r_o**4 - r_i**4)

@dataclass(frozen=True)
class MaterialParams:
    E_silicone : float = E_SILICONE
    # Defaults to E/3 (incompressible silicone).
    G : Optional[float] = None
    rho : float = DENSITY
    r_o : float = OUTER_RADIUS
    r_i : float = INNER_RADIUS
    r_c : float = CHAMBER_RADIUS
    r_path : float = CHAMBER_PATH_RADIUS
    L : float = ROD_LENGTH

    def __post_init__(self):
        if self.G is None:
            object.__setattr__(self, "G", self.E_silicone / 3)
        for name in ("E_silicone", "G", "rho", "r_o", "r_c", "r_path", "L"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidParameterError(f"material.{name}", value, f"material.{name} must be positive, got {value}.")
        # r_i = 0 is a solid rod.
        if not (math.isfinite(self.r_i) and 0 <= self.r_i < self.r_o):
            raise InvalidParameterError("material.r_i", self.r_i, f"Inner radius {self.r_i} must lie in [0, r_o = {self.r_o}).")
        if not self.r_c < self.r_path < self.r_o:
            raise InvalidParameterError("material.r_path", self.r_path, f"Need r_c < r_path < r_o, got r_c = {self.r_c}, r_path = {self.r_path}, r_o = {self.r_o}.")

    @property
    def area(self) -> float:
        return annulus_area(self.r_o, self.r_i)

@dataclass(frozen=True, eq=False)
class SectionProperties:
    A : float
    Ixx : float
    Iyy : float
    Izz : float
    E : float
    G : float
    Kse : Mat3
    Kbt : Mat3
    v_star : Vec3 = field(default_factory=lambda: V_STAR.copy())
    u_star : Vec3 = field(default_factory=lambda: U_STAR.copy())
    # Inverse diagonals, or None when the matrix has a zero on its diagonal.
    Kse_inv : Optional[Vec3] = field(init=False, repr=False, compare=False)
    Kbt_inv : Optional[Vec3] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "Kse_inv", _inverse_diagonal(self.Kse))
        object.__setattr__(self, "Kbt_inv", _inverse_diagonal(self.Kbt))

def _inverse_diagonal(K : Mat3) -> Optional[Vec3]:
    diagonal = np.diag(K).astype(float)
    if (diagonal == 0).any():
        return None
    return 1.0 / diagonal

def section_properties(mat : MaterialParams, E_effective : float) -> SectionProperties:
    """
    Annular cross-section of the robot with the given Young's modulus. The
    chamber bores are not subtracted; the silicone modulus was identified on
    the same annulus.
    """
    if not (math.isfinite(E_effective) and E_effective > 0):
        raise InvalidParameterError("E_effective", E_effective, f"Young's modulus must be positive, got {E_effective}.")
    A = mat.area
    Ixx = annulus_second_moment(mat.r_o, mat.r_i)
    Iyy = Ixx
    Izz = Ixx + Iyy
    Kse = np.diag([mat.G * A, mat.G * A, E_effective * A])
    Kbt = np.diag([E_effective * Ixx, E_effective * Iyy, E_effective * Izz])
    return SectionProperties(A, Ixx, Iyy, Izz, E_effective, mat.G, Kse, Kbt)

@dataclass(frozen=True, eq=False)
class RodState:
    s : float
    p : Vec3
    R : Mat3
    n : Vec3
    m : Vec3

    def as_row(self) -> Tuple[float, ...]:
        return (self.s, *self.p, *self.n, *self.m)

@dataclass(frozen=True, eq=False)
class LoadModel:
    f : Vec3 = field(default_factory=lambda: np.zeros(3))
    l : Vec3 = field(default_factory=lambda: np.zeros(3))
    g_dir : Vec3 = field(default_factory=lambda: np.array(GRAVITY_DIRECTION))
    gravity_enabled : bool = False
    # Extra distributed force carried inside the spine region (its weight),
    # zero unless the scenario asks for it.
    spine_f : Vec3 = field(default_factory=lambda: np.zeros(3))
    spine_length : float = 0.0

    @classmethod
    def build(cls, mat : MaterialParams, gravity_enabled : bool = True,
              g_dir : Sequence[float] = GRAVITY_DIRECTION,
              spine_line_density : float = 0.0, spine_length : float = 0.0) -> LoadModel:
        """
        The distributed loads on the rod: its own weight when gravity is on,
        and optionally the spine's weight (kg/m) over the spine region.
        """
        direction = as_vec3(g_dir, "gravity.direction")
        length = norm(direction)
        if length == 0:
            raise InvalidParameterError("gravity.direction", g_dir, "Gravity direction must be non-zero.")
        direction = direction / length
        f = np.zeros(3)
        spine_f = np.zeros(3)
        if gravity_enabled:
            f = mat.rho * mat.area * GRAVITY * direction
            spine_f = spine_line_density * GRAVITY * direction
        return cls(f, np.zeros(3), direction, gravity_enabled, spine_f, spine_length)

    def force_at(self, s : float) -> Vec3:
        if s < self.spine_length:
            return self.f + self.spine_f
        return self.f

def constitutive_strains(state : RodState, sec : SectionProperties) -> Tuple[Vec3, Vec3]:
    if sec.Kse_inv is None:
        raise SingularStiffnessError("Kse")
    if sec.Kbt_inv is None:
        raise SingularStiffnessError("Kbt")
    RT = state.R.T
    v = sec.Kse_inv * (RT @ state.n) + sec.v_star
    u = sec.Kbt_inv * (RT @ state.m) + sec.u_star
    return v, u

def ode_rhs(state : RodState, sec : SectionProperties, load : LoadModel) -> Tuple[Vec3, Mat3, Vec3, Vec3]:
    """
    Arc-length derivatives of (p, R, n, m) at one station.
    """
    v, u = constitutive_strains(state, sec)
    dp = state.R @ v
    dR = state.R @ hat(u)
    dn = -load.force_at(state.s)
    dm = -(hat(dp) @ state.n) - load.l
    return dp, dR, dn, dm
