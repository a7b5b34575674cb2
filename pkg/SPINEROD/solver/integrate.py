"""
Explicit Euler march of the rod ODEs from the clamped base to the free end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List

import numpy as np

from SPINEROD.rod.core import RodState, LoadModel, ode_rhs, orthonormalize, as_vec3
from SPINEROD.rod.spine import StiffnessProfile, stiffness_at
from SPINEROD.utils.consts import GRID_POINTS, MIN_GRID_POINTS, REORTHONORMALIZE_EVERY
from SPINEROD.utils.errors import InvalidParameterError, DivergenceError

@dataclass(frozen=True)
class IntegrationConfig:
    N : int = GRID_POINTS
    reorthonormalize_every : int = REORTHONORMALIZE_EVERY

    def __post_init__(self):
        if int(self.N) != self.N or self.N < MIN_GRID_POINTS:
            raise InvalidParameterError("integration.N", self.N, f"Need at least {MIN_GRID_POINTS} grid points, got {self.N}.")
        if int(self.reorthonormalize_every) != self.reorthonormalize_every or self.reorthonormalize_every < 1:
            raise InvalidParameterError("integration.reorthonormalize_every", self.reorthonormalize_every, "Re-orthonormalisation interval must be a positive integer.")

    def ds(self, L : float) -> float:
        return L / (self.N - 1)

@dataclass(frozen=True, eq=False)
class ShootGuess:
    """
    The unknown base loads n(0), m(0) that the shooting method iterates on.
    """
    n0 : np.ndarray = field(default_factory=lambda: np.zeros(3))
    m0 : np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        object.__setattr__(self, "n0", as_vec3(self.n0, "n0"))
        object.__setattr__(self, "m0", as_vec3(self.m0, "m0"))

    def vector(self) -> np.ndarray:
        return np.concatenate((self.n0, self.m0))

    @classmethod
    def from_vector(cls, x : np.ndarray) -> ShootGuess:
        return cls(x[:3], x[3:])

def integrate_rod(guess : ShootGuess, profile : StiffnessProfile, load : LoadModel, cfg : IntegrationConfig) -> List[RodState]:
    """
    Marches N grid points from p = 0, R = I with the guessed base loads. The
    section stiffness is read at the left end of every step, so the combined
    stiffness applies to steps starting inside the spine.
    """
    s_grid = np.linspace(0.0, profile.mat.L, cfg.N)
    ds = cfg.ds(profile.mat.L)
    state = RodState(0.0, np.zeros(3), np.eye(3), guess.n0.copy(), guess.m0.copy())
    states = [state]
    with np.errstate(over="ignore", invalid="ignore"):
        for i in range(1, cfg.N):
            sec = stiffness_at(profile, state.s)
            dp, dR, dn, dm = ode_rhs(state, sec, load)
            p = state.p + ds * dp
            R = state.R + ds * dR
            n = state.n + ds * dn
            m = state.m + ds * dm
            if not math.isfinite(float(p.sum() + R.sum() + n.sum() + m.sum())):
                raise DivergenceError(i)
            if i % cfg.reorthonormalize_every == 0:
                R = orthonormalize(R)
            state = RodState(float(s_grid[i]), p, R, n, m)
            states.append(state)
    return states
