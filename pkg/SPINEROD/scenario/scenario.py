"""
A Scenario is everything one solve needs. Scenarios are read from and
written to flat "key = value" text files; see the README for the keys.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass, field, replace
from functools import cached_property
from pathlib import Path
from typing import Any, Dict, Iterator, Optional, Tuple, Union

from SPINEROD.rod.core import MaterialParams, LoadModel
from SPINEROD.rod.actuation import (
    ChamberLayout, PressureCommand, ExternalLoad, default_layout,
    group_pressures, uniform_pressures
)
from SPINEROD.rod.spine import SpineConfig, StiffnessProfile, a_effect
from SPINEROD.scenario.consts import KEYS
from SPINEROD.solver.integrate import IntegrationConfig
from SPINEROD.solver.shooting import SolverConfig
from SPINEROD.utils.consts import GRAVITY_DIRECTION, DEFAULT_GROUPS, CHAMBER_COUNT
from SPINEROD.utils.errors import SpineRodError, ScenarioParseError, InvalidParameterError
from SPINEROD.utils.text import format_vector

@dataclass(frozen=True)
class Scenario:
    material : MaterialParams = field(default_factory=MaterialParams)
    # None means the default layout for the material.
    layout : Optional[ChamberLayout] = None
    spine : SpineConfig = field(default_factory=SpineConfig)
    pressures : PressureCommand = field(default_factory=PressureCommand)
    # The group the pressure shorthand applies to.
    group : int = 1
    # None means the tip mass, which only weighs something with gravity on.
    external : Optional[ExternalLoad] = None
    gravity_enabled : bool = True
    gravity_direction : Tuple[float, float, float] = GRAVITY_DIRECTION
    # When set, A_effect = coefficient * A_norm regardless of the spine.
    a_effect_coefficient : Optional[float] = None
    integration : IntegrationConfig = field(default_factory=IntegrationConfig)
    solver : SolverConfig = field(default_factory=SolverConfig)

    def __post_init__(self):
        if self.layout is None:
            object.__setattr__(self, "layout", default_layout(self.material))
        object.__setattr__(self, "gravity_direction", tuple(float(g) for g in self.gravity_direction))
        self.layout.group(self.group)
        if self.a_effect_coefficient is not None and not (math.isfinite(self.a_effect_coefficient) and self.a_effect_coefficient > 0):
            raise InvalidParameterError("actuation.coefficient", self.a_effect_coefficient, "The A_effect coefficient must be positive.")
        # Derived pieces are built eagerly; bad combinations fail here.
        self.profile
        self.load_model
        self.tip_load
        self.A_effect

    @cached_property
    def profile(self) -> StiffnessProfile:
        return StiffnessProfile(self.spine, self.material)

    @cached_property
    def load_model(self) -> LoadModel:
        line_density = 0.0
        if self.spine.weight:
            line_density = self.spine.rho * math.pi * self.profile.spine_radius**2
        return LoadModel.build(self.material, self.gravity_enabled, self.gravity_direction,
                               line_density, self.spine.length)

    @cached_property
    def tip_load(self) -> ExternalLoad:
        if self.external is not None:
            return self.external
        if self.gravity_enabled:
            return ExternalLoad.tip_mass(self.gravity_direction)
        return ExternalLoad()

    @cached_property
    def A_effect(self) -> float:
        if self.a_effect_coefficient is not None:
            return self.a_effect_coefficient * self.layout.A_norm
        return a_effect(self.spine.length, self.layout.A_norm, self.spine.a_effect_table)

    @property
    def pressure(self) -> float:
        return self.pressures.peak()

    def with_spine_length(self, length : float) -> Scenario:
        return replace(self, spine=replace(self.spine, length=length))

    def with_group_pressure(self, pressure : float, group : Optional[int] = None) -> Scenario:
        group = self.group if group is None else group
        return replace(self, pressures=group_pressures(self.layout, group, pressure), group=group)

    def with_uniform_pressure(self, pressure : float) -> Scenario:
        return replace(self, pressures=uniform_pressures(pressure))

    def with_overrides(self, gravity : Optional[bool] = None, tol : Optional[float] = None,
                       max_iter : Optional[int] = None, N : Optional[int] = None) -> Scenario:
        """
        Applies command-line overrides; None leaves a setting alone.
        """
        changes : Dict[str, Any] = {}
        if gravity is not None:
            changes["gravity_enabled"] = gravity
        if tol is not None or max_iter is not None:
            changes["solver"] = SolverConfig(self.solver.tol if tol is None else tol,
                                             self.solver.max_iter if max_iter is None else max_iter)
        if N is not None:
            changes["integration"] = replace(self.integration, N=N)
        return replace(self, **changes)

MATERIAL_FIELDS = {
    "material.E": "E_silicone",
    "material.G": "G",
    "material.rho": "rho",
    "material.r_o": "r_o",
    "material.r_i": "r_i",
    "material.r_c": "r_c",
    "material.r_path": "r_path",
    "material.L": "L",
}

SPINE_FIELDS = {
    "spine.length": "length",
    "spine.radius": "radius",
    "spine.moduli": "modulus_table",
    "spine.a_effect": "a_effect_table",
    "spine.interpolation": "interpolation",
    "spine.weight": "weight",
    "spine.rho": "rho",
}

@contextmanager
def _blame(lines : Dict[str, int], *keys : str) -> Iterator[None]:
    """
    Turns a library error raised while assembling the scenario into a parse
    error pointing at the line that most likely caused it.
    """
    try:
        yield
    except ScenarioParseError:
        raise
    except SpineRodError as error:
        key = getattr(error, "name", None)
        if key not in lines:
            key = next((k for k in keys if k in lines), keys[0] if keys else None)
        raise ScenarioParseError(key, lines.get(key), str(error)) from error

def _pick(values : Dict[str, Any], fields : Dict[str, str]) -> Dict[str, Any]:
    return {name: values[key] for key, name in fields.items() if key in values}

def parse_scenario(text : str) -> Scenario:
    values : Dict[str, Any] = {}
    lines : Dict[str, int] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line == "":
            continue
        if "=" not in line:
            raise ScenarioParseError(None, number, f"expected 'key = value', got '{line}'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KEYS:
            raise ScenarioParseError(key, number, "unknown key")
        if key in values:
            raise ScenarioParseError(key, number, f"already set on line {lines[key]}")
        validator, description = KEYS[key]
        clean = validator(value)
        if clean is None:
            raise ScenarioParseError(key, number, f"invalid value '{value}'; expected {description}")
        values[key] = clean
        lines[key] = number

    if "pressure" in values and "pressures" in values:
        raise ScenarioParseError("pressure", lines["pressure"], f"pressures is already set on line {lines['pressures']}; give only one of them")

    with _blame(lines, *MATERIAL_FIELDS):
        material = MaterialParams(**_pick(values, MATERIAL_FIELDS))
    with _blame(lines, "layout.groups"):
        layout = default_layout(material, values.get("layout.groups", DEFAULT_GROUPS))
    with _blame(lines, *SPINE_FIELDS):
        spine = SpineConfig(**_pick(values, SPINE_FIELDS))
    group = values.get("group", 1)
    with _blame(lines, "pressure", "pressures", "group"):
        if "pressure" in values:
            pressures = group_pressures(layout, group, values["pressure"])
        else:
            pressures = PressureCommand(values.get("pressures", (0.0,) * CHAMBER_COUNT))
    with _blame(lines, "external.force", "external.moment"):
        external = None
        if "external.force" in values or "external.moment" in values:
            external = ExternalLoad(values.get("external.force", (0.0, 0.0, 0.0)),
                                    values.get("external.moment", (0.0, 0.0, 0.0)))
    with _blame(lines, "integration.N", "integration.reorthonormalize_every"):
        integration = IntegrationConfig(values.get("integration.N", IntegrationConfig.N),
                                        values.get("integration.reorthonormalize_every", IntegrationConfig.reorthonormalize_every))
    with _blame(lines, "solver.tol", "solver.max_iter"):
        solver = SolverConfig(values.get("solver.tol", SolverConfig.tol),
                              values.get("solver.max_iter", SolverConfig.max_iter))
    with _blame(lines, "gravity.direction", "spine.radius", "spine.length", "spine.a_effect",
                "actuation.coefficient", "material.r_i"):
        return Scenario(material, layout, spine, pressures, group, external,
                        values.get("gravity", True),
                        values.get("gravity.direction", GRAVITY_DIRECTION),
                        values.get("actuation.coefficient"), integration, solver)

def _on_off(flag : bool) -> str:
    return "on" if flag else "off"

def _table(table : Tuple[Tuple[float, float], ...]) -> str:
    return ", ".join(f"{length!r}:{value!r}" for length, value in table)

def serialize_scenario(scenario : Scenario) -> str:
    """
    Writes every setting explicitly, with floats in their shortest exact
    form, so that parse_scenario gives back an equal scenario.
    """
    mat = scenario.material
    spine = scenario.spine
    entries = [
        ("material.E", repr(mat.E_silicone)),
        ("material.G", repr(mat.G)),
        ("material.rho", repr(mat.rho)),
        ("material.r_o", repr(mat.r_o)),
        ("material.r_i", repr(mat.r_i)),
        ("material.r_c", repr(mat.r_c)),
        ("material.r_path", repr(mat.r_path)),
        ("material.L", repr(mat.L)),
        ("layout.groups", "; ".join(",".join(str(c) for c in group) for group in scenario.layout.group_map)),
        ("spine.length", repr(spine.length)),
    ]
    if spine.radius is not None:
        entries.append(("spine.radius", repr(spine.radius)))
    entries += [
        ("spine.moduli", _table(spine.modulus_table)),
        ("spine.a_effect", _table(spine.a_effect_table)),
        ("spine.interpolation", spine.interpolation),
        ("spine.weight", _on_off(spine.weight)),
    ]
    if spine.rho is not None:
        entries.append(("spine.rho", repr(spine.rho)))
    if scenario.a_effect_coefficient is not None:
        entries.append(("actuation.coefficient", repr(scenario.a_effect_coefficient)))
    entries += [
        ("group", str(scenario.group)),
        ("pressures", format_vector(scenario.pressures.pressures)),
    ]
    if scenario.external is not None:
        entries += [
            ("external.force", format_vector(scenario.external.F_external)),
            ("external.moment", format_vector(scenario.external.L_external)),
        ]
    entries += [
        ("gravity", _on_off(scenario.gravity_enabled)),
        ("gravity.direction", format_vector(scenario.gravity_direction)),
        ("integration.N", str(scenario.integration.N)),
        ("integration.reorthonormalize_every", str(scenario.integration.reorthonormalize_every)),
        ("solver.tol", repr(scenario.solver.tol)),
        ("solver.max_iter", str(scenario.solver.max_iter)),
    ]
    return "\n".join(f"{key} = {value}" for key, value in entries) + "\n"

def load_scenario(path : Union[str, Path]) -> Scenario:
    return parse_scenario(Path(path).read_text())
