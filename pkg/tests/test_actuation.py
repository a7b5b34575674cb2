import math

import numpy as np
import pytest

from SPINEROD.rod.core import MaterialParams, hat
from SPINEROD.rod.actuation import (
    ChamberLayout, PressureCommand, ExternalLoad, default_layout, check_groups,
    group_pressures, uniform_pressures, pneumatic_load, tip_boundary
)
from SPINEROD.utils.consts import TIP_MASS, GRAVITY
from SPINEROD.utils.errors import InvalidCommandError, InvalidParameterError

A_EFFECT = 1.5 * math.pi * 0.005**2

@pytest.fixture
def layout():
    return default_layout(MaterialParams())

class TestLayout:
    def test_positions(self, layout):
        positions = layout.positions_array()
        np.testing.assert_array_equal(positions[0], [0.04, 0, 0])
        np.testing.assert_allclose(np.linalg.norm(positions, axis=1), 0.04, rtol=1e-15)
        np.testing.assert_array_equal(positions[:, 2], np.zeros(9))
        np.testing.assert_allclose(positions.sum(axis=0), np.zeros(3), atol=1e-15)
        angles = np.degrees(np.arctan2(positions[:, 1], positions[:, 0])) % 360
        np.testing.assert_allclose(angles, np.arange(9) * 40.0, atol=1e-9)

    def test_area_and_groups(self, layout):
        assert layout.A_norm == pytest.approx(7.854e-5, rel=1e-4)
        assert layout.group_map == ((0, 1, 2), (3, 4, 5), (6, 7, 8))
        assert layout.group(2) == (3, 4, 5)

    @pytest.mark.parametrize("group", [0, 4])
    def test_missing_group(self, layout, group):
        with pytest.raises(InvalidCommandError):
            layout.group(group)

    def test_custom_groups(self):
        layout = default_layout(MaterialParams(), ((0, 3, 6), (1, 4, 7), (2, 5, 8)))
        assert layout.group(1) == (0, 3, 6)

    @pytest.mark.parametrize("groups", [
        ((0, 1, 2), (3, 4, 5)),
        ((0, 1, 2), (2, 3, 4), (5, 6, 7)),
        ((0, 1), (2, 3, 4, 5), (6, 7, 8)),
    ])
    def test_bad_groups(self, groups):
        with pytest.raises(InvalidParameterError):
            check_groups(groups)

    def test_wrong_count(self, layout):
        with pytest.raises(InvalidParameterError):
            ChamberLayout(8, layout.positions[:8], layout.A_norm)

class TestPressureCommand:
    def test_group_shorthand(self, layout):
        cmd = group_pressures(layout, 1, 250e3)
        assert cmd.pressures == (250e3, 250e3, 250e3, 0, 0, 0, 0, 0, 0)
        cmd = group_pressures(layout, 3, 50e3)
        assert cmd.pressures[6:] == (50e3,) * 3
        assert sum(cmd.pressures[:6]) == 0

    def test_uniform(self):
        assert uniform_pressures(30e3).pressures == (30e3,) * 9

    @pytest.mark.parametrize("pressures", [
        (-1.0,) + (0.0,) * 8,
        (401e3,) + (0.0,) * 8,
        (0.0,) * 8,
        (math.nan,) + (0.0,) * 8,
    ])
    def test_invalid(self, pressures):
        with pytest.raises(InvalidCommandError):
            PressureCommand(pressures)

    def test_ceiling_allowed(self):
        assert PressureCommand((400e3,) * 9).peak() == 400e3

class TestPneumaticLoad:
    def test_zero(self, layout):
        n_P, m_P = pneumatic_load(PressureCommand(), layout, A_EFFECT, np.eye(3))
        np.testing.assert_array_equal(n_P, np.zeros(3))
        np.testing.assert_array_equal(m_P, np.zeros(3))

    def test_single_chamber(self, layout):
        P = 100e3
        n_P, m_P = pneumatic_load(PressureCommand((P,) + (0.0,) * 8), layout, A_EFFECT, np.eye(3))
        np.testing.assert_allclose(n_P, [0, 0, P * A_EFFECT])
        np.testing.assert_allclose(m_P, [0, -0.04 * P * A_EFFECT, 0], atol=1e-15)

    @pytest.mark.parametrize("P", [30e3, 150e3, 400e3])
    def test_uniform_cancels_moment(self, layout, P):
        n_P, m_P = pneumatic_load(uniform_pressures(P), layout, A_EFFECT, np.eye(3))
        np.testing.assert_allclose(n_P, [0, 0, 9 * P * A_EFFECT], rtol=1e-14)
        assert np.linalg.norm(m_P) < 1e-12 * P * A_EFFECT * 0.04

    def test_group_moment_points_across_centroid(self, layout):
        P = 200e3
        n_P, m_P = pneumatic_load(group_pressures(layout, 1, P), layout, A_EFFECT, np.eye(3))
        centroid = layout.centroid(1)
        np.testing.assert_allclose(m_P, np.cross(3 * P * centroid, [0, 0, A_EFFECT]), rtol=1e-12)
        assert m_P[2] == 0

    def test_follows_tip(self, layout):
        angle = 0.3
        R = np.eye(3) + math.sin(angle) * hat(np.array([1.0, 0, 0])) + (1 - math.cos(angle)) * hat(np.array([1.0, 0, 0])) @ hat(np.array([1.0, 0, 0]))
        n_P, _ = pneumatic_load(uniform_pressures(100e3), layout, A_EFFECT, R)
        np.testing.assert_allclose(n_P, 9 * 100e3 * A_EFFECT * R[:, 2], rtol=1e-14)

    def test_linear_in_pressure(self, layout):
        cmd = PressureCommand((10e3, 20e3, 0, 5e3, 0, 0, 70e3, 0, 1e3))
        doubled = PressureCommand(tuple(2 * p for p in cmd.pressures))
        n1, m1 = pneumatic_load(cmd, layout, A_EFFECT, np.eye(3))
        n2, m2 = pneumatic_load(doubled, layout, A_EFFECT, np.eye(3))
        np.testing.assert_allclose(n2, 2 * n1, rtol=1e-14)
        np.testing.assert_allclose(m2, 2 * m1, rtol=1e-14)

    @pytest.mark.parametrize("area", [0.0, -1e-5])
    def test_bad_area(self, layout, area):
        with pytest.raises(InvalidParameterError):
            pneumatic_load(PressureCommand(), layout, area, np.eye(3))

class TestTipBoundary:
    def test_zero(self):
        nL, mL = tip_boundary(np.zeros(3), np.zeros(3), ExternalLoad())
        np.testing.assert_array_equal(nL, np.zeros(3))
        np.testing.assert_array_equal(mL, np.zeros(3))

    def test_tip_mass(self):
        nL, _ = tip_boundary(np.zeros(3), np.zeros(3), ExternalLoad((0.0, 0.0, -0.52)))
        np.testing.assert_array_equal(nL, [0, 0, -0.52])

    def test_superposition(self):
        n_P, m_P = np.array([1.0, 2.0, 3.0]), np.array([0.1, 0.0, -0.2])
        ext = ExternalLoad((0.5, 0.0, 1.0), (0.0, 0.3, 0.0))
        nL, mL = tip_boundary(n_P, m_P, ext)
        n0, m0 = tip_boundary(np.zeros(3), np.zeros(3), ext)
        np.testing.assert_allclose(nL, n_P + n0)
        np.testing.assert_allclose(mL, m_P + m0)

    def test_default_tip_mass_weight(self):
        ext = ExternalLoad.tip_mass()
        np.testing.assert_allclose(ext.F_external, [0, 0, TIP_MASS * GRAVITY])
        assert math.hypot(*ext.F_external) == pytest.approx(0.52, abs=0.005)
        with pytest.raises(InvalidParameterError):
            ExternalLoad.tip_mass((0.0, 0.0, 0.0))
