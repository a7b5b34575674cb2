"""
Piecewise constant-curvature estimate of the tip position, for comparison
against the Cosserat solution. Each stiffness region bends into an arc under
the pneumatic moment alone; gravity and external loads are ignored.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
from scipy.linalg import expm

from SPINEROD.rod.core import Vec3, hat
from SPINEROD.rod.actuation import pneumatic_load
from SPINEROD.rod.spine import stiffness_at

if TYPE_CHECKING:
    from SPINEROD.scenario.scenario import Scenario

def _twist(v : Vec3, u : Vec3) -> np.ndarray:
    T = np.zeros((4, 4))
    T[:3, :3] = hat(u)
    T[:3, 3] = v
    return T

def constant_curvature_tip(scenario : Scenario) -> Vec3:
    """
    Tip position when every region carries the base-frame pneumatic moment
    as a constant curvature and the pneumatic thrust as a constant stretch.
    """
    profile = scenario.profile
    n_P, m_P = pneumatic_load(scenario.pressures, scenario.layout, scenario.A_effect, np.eye(3))
    L = profile.mat.L
    edges = [0.0, *profile.breakpoints(), L]
    pose = np.eye(4)
    for start, end in zip(edges, edges[1:]):
        if end <= start:
            continue
        sec = stiffness_at(profile, start)
        v = sec.Kse_inv * n_P + sec.v_star
        u = sec.Kbt_inv * m_P + sec.u_star
        pose = pose @ expm((end - start) * _twist(v, u))
    return pose[:3, 3].copy()
