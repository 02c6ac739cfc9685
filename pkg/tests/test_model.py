import math

import pytest

from pipeclimber.model import (
    Bend, IncompatiblePipe, PipeNetwork, RobotParams, Straight, ValidationError, clamp_state,
    normalize_angle,
)


def test_defaults():
    p = RobotParams()
    assert (p.track_diameter_mm, p.k, p.j) == (80.0, 20.0, 2.0)
    assert (p.diameter_max_mm, p.diameter_min_mm, p.robot_length_mm) == (280.0, 248.0, 200.0)
    assert (p.motor_speed_rpm, p.motor_torque_nm) == (48.0, 1.177)
    assert p.clamp_travel_mm == 32.0
    assert p.inertias == (0.0,) * 6


@pytest.mark.parametrize("kwargs", [
    dict(track_diameter_mm=0.0),
    dict(input_to_ring_ratio=-1.0),
    dict(diameter_min_mm=300.0),
    dict(input_to_ring_ratio=2.0, ring_to_output_ratio=2.0),
    dict(side_gear_inertia=-1e-6),
    dict(side_gear_inertias=(1.0,) * 5),
])
def test_params_rejects_invalid(kwargs):
    with pytest.raises(ValidationError):
        RobotParams(**kwargs)


def test_per_gear_inertia_override():
    p = RobotParams(side_gear_inertia=1.0, side_gear_inertias=[1, 2, 3, 4, 5, 6])
    assert p.inertias == (1.0, 2.0, 3.0, 4.0, 5.0, 6.0)


@pytest.mark.parametrize("diameter, compression", [(280.0, 0.0), (248.0, 32.0), (276.0, 4.0)])
def test_clamp_state(diameter, compression):
    assert clamp_state(diameter) == compression


@pytest.mark.parametrize("diameter", [240.0, 280.5])
def test_clamp_state_incompatible(diameter):
    with pytest.raises(IncompatiblePipe):
        clamp_state(diameter)


def test_segments_validate():
    with pytest.raises(ValidationError):
        Straight(0.0)
    with pytest.raises(ValidationError):
        Straight(-5.0)
    with pytest.raises(ValidationError):
        Bend(7.0, 419.0)
    with pytest.raises(ValidationError):
        Bend(1.0, float("nan"))
    assert Bend(0.0, 419.0).angle_rad == 0.0


def test_orientation_normalized():
    assert Bend(1.0, 419.0, -math.pi / 2).orientation_rad == pytest.approx(1.5 * math.pi)
    assert Bend(1.0, 419.0, 2 * math.pi).orientation_rad == 0.0
    assert normalize_angle(-1e-18) == 0.0
    for a in (-10.0, -1e-300, 0.0, 3.0, 6.283185307179586, 100.0):
        assert 0.0 <= normalize_angle(a) < 2 * math.pi


def test_network_invariants():
    with pytest.raises(ValidationError):
        PipeNetwork(138.0, ())
    with pytest.raises(ValidationError):
        PipeNetwork(0.0, (Straight(1.0),))
    with pytest.raises(ValidationError):
        PipeNetwork(138.0, (Bend(1.0, 138.0),))
    with pytest.raises(ValidationError):
        PipeNetwork(138.0, ("straight 5",))


def test_with_orientation_keeps_straights():
    net = PipeNetwork(138.0, [Straight(521.0), Bend(math.pi / 2, 419.0, 0.0)])
    turned = net.with_orientation(math.radians(30))
    assert turned.segments[0] == Straight(521.0)
    assert turned.segments[1].orientation_rad == pytest.approx(math.radians(30))
    assert isinstance(turned.segments, tuple)
    assert net.centerline_length_mm() == pytest.approx(521.0 + 419.0 * math.pi / 2)
