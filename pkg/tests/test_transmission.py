import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from clarisim.actuator import DEFAULT_ACTUATOR, DriveCommand, free_deflection
from clarisim.errors import ClariError, RangeError
from clarisim.transmission import (DEFAULT_LEG, LegModuleParams, tip_lift_block_force, tip_lift_deflection,
                                   tip_swing_deflection, tip_trajectory)

from oracles import sinusoid_samples

A, LEG = DEFAULT_ACTUATOR, DEFAULT_LEG
BODY_WEIGHT_MN = 0.976 * 9.81


def test_ratios_match_lever_arms():
    assert LEG.t_ratio_lift == pytest.approx(6.25 / 0.5, rel=1e-6)
    assert LEG.t_ratio_swing == pytest.approx(4.5 / 0.45, rel=1e-6)
    with pytest.raises(ClariError):
        LegModuleParams(t_ratio_lift=11.0)


def test_efficiency_defaults():
    # 2.85 / (10 * 0.405), 2.3 / (12.5 * 0.405), 14.3 * 12.5 / 287.2
    assert LEG.eta_disp_swing == pytest.approx(0.7037, abs=1e-4)
    assert LEG.eta_disp_lift == pytest.approx(0.4543, abs=1e-4)
    assert LEG.eta_force_lift == pytest.approx(0.6225, abs=2e-4)
    with pytest.raises(ClariError):
        LegModuleParams(eta_disp_lift=1.2)


@pytest.mark.parametrize("fn, v, expected", [
    (tip_swing_deflection, 225.0, 2.85), (tip_swing_deflection, 0.0, 0.0),
    (tip_lift_deflection, 225.0, 2.3), (tip_lift_deflection, 0.0, 0.0),
    (tip_lift_block_force, 225.0, 14.3), (tip_lift_block_force, 0.0, 0.0),
])
def test_endpoints(fn, v, expected):
    assert fn(LEG, A, v) == pytest.approx(expected, rel=1e-12, abs=1e-12)


def test_voltage_errors_propagate():
    for fn in (tip_swing_deflection, tip_lift_deflection, tip_lift_block_force):
        with pytest.raises(RangeError):
            fn(LEG, A, 226.0)


def test_single_leg_carries_robot():
    assert tip_lift_block_force(LEG, A, 225.0) > BODY_WEIGHT_MN


@given(st.floats(min_value=1e-6, max_value=225.0))
def test_swing_exceeds_lift(v):
    assert tip_swing_deflection(LEG, A, v) > tip_lift_deflection(LEG, A, v)


@given(st.floats(0, 225), st.floats(0, 1))
def test_homogeneous(v, alpha):
    for fn in (tip_swing_deflection, tip_lift_deflection, tip_lift_block_force):
        assert fn(LEG, A, alpha * v) == pytest.approx(alpha * fn(LEG, A, v), rel=1e-12, abs=1e-15)


@given(st.floats(0, 225))
def test_tip_bounds(v):
    peak = free_deflection(A, A.v_max) * 1e-3
    assert tip_swing_deflection(LEG, A, v) <= LEG.eta_disp_swing * LEG.t_ratio_swing * peak + 1e-12
    assert tip_lift_deflection(LEG, A, v) <= LEG.eta_disp_lift * LEG.t_ratio_lift * peak + 1e-12


def test_trajectory_quarter_samples():
    lift = DriveCommand(225.0, 10.0, phase=math.pi / 2)
    swing = DriveCommand(225.0, 10.0, phase=0.0)
    got = [(s.swing, s.lift) for s in tip_trajectory(LEG, A, lift, swing, 4)]
    expected = [(0.0, 1.15), (1.425, 0.0), (0.0, -1.15), (-1.425, 0.0)]
    for (gs, gl), (es, el) in zip(got, expected):
        assert gs == pytest.approx(es, abs=1e-12)
        assert gl == pytest.approx(el, abs=1e-12)


def test_trajectory_zero_amplitude():
    states = tip_trajectory(LEG, A, DriveCommand(0.0, 5.0, 1.0), DriveCommand(0.0, 5.0, 2.0), 8)
    assert all(s.swing == 0 and s.lift == 0 for s in states)


def test_trajectory_errors():
    with pytest.raises(ClariError):
        tip_trajectory(LEG, A, DriveCommand(100, 5.0), DriveCommand(100, 10.0), 8)
    with pytest.raises(ClariError):
        tip_trajectory(LEG, A, DriveCommand(100, 5.0), DriveCommand(100, 5.0), 3)


@pytest.mark.parametrize("n", [4, 16, 100])
def test_trajectory_extremes_match_single_axis(n):
    v = 180.0
    states = tip_trajectory(LEG, A, DriveCommand(v, 10, math.pi / 2), DriveCommand(v, 10, 0.0), n)
    swing = [s.swing for s in states]
    lift = [s.lift for s in states]
    assert max(swing) == pytest.approx(0.5 * tip_swing_deflection(LEG, A, v), rel=1e-9)
    assert min(lift) == pytest.approx(-0.5 * tip_lift_deflection(LEG, A, v), rel=1e-9)
    assert swing == pytest.approx(sinusoid_samples(0.5 * tip_swing_deflection(LEG, A, v), 0.0, n), abs=1e-12)
