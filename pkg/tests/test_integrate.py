import numpy as np
import pytest

from SPINEROD.rod.core import MaterialParams, LoadModel, rotation_error
from SPINEROD.rod.spine import SpineConfig, StiffnessProfile
from SPINEROD.solver.integrate import IntegrationConfig, ShootGuess, integrate_rod
from SPINEROD.utils.errors import InvalidParameterError, DivergenceError

@pytest.fixture
def profile():
    return StiffnessProfile(SpineConfig(), MaterialParams())

def test_unloaded_rod_is_straight(profile):
    states = integrate_rod(ShootGuess(), profile, LoadModel(), IntegrationConfig())
    assert len(states) == 100
    assert states[0].s == 0.0
    assert states[-1].s == 0.4
    np.testing.assert_allclose(states[-1].p, [0, 0, 0.4], atol=1e-12)
    for state in states:
        assert state.p[0] == 0 and state.p[1] == 0
        assert state.p[2] == pytest.approx(state.s, abs=1e-12)
        np.testing.assert_array_equal(state.R, np.eye(3))

def test_grid_spacing(profile):
    cfg = IntegrationConfig(N=11)
    states = integrate_rod(ShootGuess(), profile, LoadModel(), cfg)
    assert cfg.ds(0.4) == pytest.approx(0.04)
    np.testing.assert_allclose(np.diff([state.s for state in states]), 0.04, rtol=1e-12)

@pytest.mark.parametrize("kwargs", [{"N": 9}, {"N": 100.5}, {"reorthonormalize_every": 0}])
def test_invalid_config(kwargs):
    with pytest.raises(InvalidParameterError):
        IntegrationConfig(**kwargs)

def test_force_balance_along_rod(profile):
    mat = MaterialParams()
    load = LoadModel.build(mat)
    states = integrate_rod(ShootGuess([0.0, 0.0, 30.0], [0.1, -0.2, 0.0]), profile, load, IntegrationConfig())
    ds = 0.4 / 99
    dn = np.diff([state.n for state in states], axis=0) / ds
    np.testing.assert_allclose(dn, np.tile(-load.f, (99, 1)), rtol=1e-9, atol=1e-9)

def test_rotations_stay_orthonormal(profile):
    guess = ShootGuess([5.0, 0.0, 40.0], [0.5, 1.0, 0.1])
    for state in integrate_rod(guess, profile, LoadModel(), IntegrationConfig()):
        assert rotation_error(state.R) < 1e-6
        assert np.linalg.det(state.R) > 0.99

def test_reorthonormalisation_limits_drift(profile):
    guess = ShootGuess([0.0, 0.0, 0.0], [0.5, 0.0, 0.0])
    every_step = integrate_rod(guess, profile, LoadModel(), IntegrationConfig(N=100, reorthonormalize_every=1))
    never = integrate_rod(guess, profile, LoadModel(), IntegrationConfig(N=100, reorthonormalize_every=1000))
    assert rotation_error(every_step[-1].R) < 1e-12
    assert rotation_error(never[-1].R) > 1e-7

def test_spine_region_bends_less():
    mat = MaterialParams()
    guess = ShootGuess([0.0, 0.0, 0.0], [0.5, 0.0, 0.0])
    bare = integrate_rod(guess, StiffnessProfile(SpineConfig(), mat), LoadModel(), IntegrationConfig())
    spined = integrate_rod(guess, StiffnessProfile(SpineConfig(length=0.3), mat), LoadModel(), IntegrationConfig())
    assert abs(spined[-1].p[1]) < abs(bare[-1].p[1])

def test_divergence_reports_index(profile):
    with pytest.raises(DivergenceError) as excinfo:
        integrate_rod(ShootGuess([1e308, 1e308, 0.0], [0.0, 0.0, 0.0]), profile, LoadModel(), IntegrationConfig())
    assert excinfo.value.index >= 1
