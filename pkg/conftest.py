import pytest

from SPINEROD.rod.actuation import ExternalLoad
from SPINEROD.scenario.scenario import Scenario

@pytest.fixture
def unloaded() -> Scenario:
    """
    No pressure, no tip load, no gravity: the rod stays straight.
    """
    return Scenario(gravity_enabled=False, external=ExternalLoad())

@pytest.fixture
def bending() -> Scenario:
    return Scenario().with_group_pressure(150e3)

@pytest.fixture
def write_scenario(tmp_path):
    def write(text : str, name : str = "scenario.txt"):
        path = tmp_path / name
        path.write_text(text)
        return path
    return write
