import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st
from scipy.linalg import null_space

from oracles import side_gears_reduced
from pipeclimber.geartrain import (
    RECIRCULATION_MODE, GearState, LoadCondition, _CONSTRAINTS, equal_load_speeds,
    equal_load_torques, forward_speeds, net_output_torques, output_sum, output_torques,
    resolve_outputs, solve_side_gears,
)
from pipeclimber.model import (
    InconsistentOutputs, RingConstraintViolated, RobotParams, ValidationError,
)

speeds = st.floats(-500, 500, allow_nan=False)


def valid_side_gears(omega_in, free, k=20.0):
    c = omega_in / k
    a, b, d = free
    return [c + a, c - a, c + b, c - b, c + d, c - d]


@pytest.mark.parametrize("omega_in, side, expected", [
    (48.0, [2.4] * 6, (4.8, 4.8, 4.8)),
    (0.0, [0.0] * 6, (0.0, 0.0, 0.0)),
    (48.0, [1.4, 3.4, 1.4, 3.4, 2.4, 2.4], (2.8, 5.8, 5.8)),
])
def test_forward_examples(omega_in, side, expected):
    out = forward_speeds(omega_in, side)
    assert out == pytest.approx(expected, rel=1e-9, abs=1e-12)
    assert sum(out) == pytest.approx(3 * 2 * omega_in / 20, abs=1e-12)


def test_forward_rejects_broken_ring():
    with pytest.raises(RingConstraintViolated):
        forward_speeds(48.0, [2.4, 2.4, 2.4, 2.5, 2.4, 2.4])
    with pytest.raises(ValidationError):
        forward_speeds(48.0, [2.4] * 5)


def test_both_output_forms_agree_symbolically():
    w = sp.symbols("w1:7")
    wi, k, j = sp.symbols("w_i k j", positive=True)
    ring = {w[1]: 2 * wi / k - w[0], w[3]: 2 * wi / k - w[2], w[5]: 2 * wi / k - w[4]}
    subtractive = [2 * j * wi / k - j * (w[1] + w[3]) / 2,
                   2 * j * wi / k - j * (w[2] + w[4]) / 2,
                   2 * j * wi / k - j * (w[0] + w[5]) / 2]
    direct = [j * (w[0] + w[2]) / 2, j * (w[3] + w[5]) / 2, j * (w[1] + w[4]) / 2]
    for s, d in zip(subtractive, direct):
        assert sp.simplify((s - d).subs(ring)) == 0
    assert sp.simplify(sum(direct).subs(ring) - 3 * j * wi / k) == 0


@given(speeds, st.tuples(speeds, speeds, speeds))
def test_output_sum_invariant(omega_in, free):
    out = forward_speeds(omega_in, valid_side_gears(omega_in, free))
    assert sum(out) == pytest.approx(output_sum(omega_in), rel=1e-9, abs=1e-9)


@given(speeds)
def test_uniform_state_is_equal_load(omega_in):
    uniform = [omega_in / 20.0] * 6
    assert forward_speeds(omega_in, uniform) == pytest.approx(
        equal_load_speeds(omega_in), rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("omega_in, expected", [(48.0, 4.8), (0.0, 0.0), (-48.0, -4.8)])
def test_equal_load_speeds(omega_in, expected):
    assert equal_load_speeds(omega_in) == pytest.approx((expected,) * 3, rel=1e-12)


def test_constraint_matrix_null_space_is_recirculation():
    ns = null_space(_CONSTRAINTS)
    assert ns.shape == (6, 1)
    mode = RECIRCULATION_MODE / np.linalg.norm(RECIRCULATION_MODE)
    assert abs(abs(ns[:, 0] @ mode) - 1.0) < 1e-12


def test_solve_uniform():
    assert solve_side_gears(48.0, (4.8, 4.8, 4.8)) == pytest.approx([2.4] * 6, abs=1e-12)


def test_solve_matches_reduced_oracle():
    outs = (3.431, 4.800, 6.169)
    side = solve_side_gears(48.0, outs)
    np.testing.assert_allclose(side, side_gears_reduced(48.0, outs), rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(forward_speeds(48.0, side), outs, rtol=1e-9)
    # minimum deviation from uniform: orthogonal to the free direction
    assert abs((side - 2.4) @ RECIRCULATION_MODE) < 1e-12


def test_solve_inconsistent():
    with pytest.raises(InconsistentOutputs):
        solve_side_gears(48.0, (5.0, 5.0, 5.0))


@settings(max_examples=300)
@given(speeds, st.floats(-50, 50), st.floats(-50, 50), st.floats(-100, 100))
def test_round_trip_any_recirculation(omega_in, o1, o2, lam):
    outs = (o1, o2, output_sum(omega_in) - o1 - o2)
    side = solve_side_gears(omega_in, outs, lam)
    np.testing.assert_allclose(forward_speeds(omega_in, side), outs, rtol=1e-9, atol=1e-9)
    np.testing.assert_allclose(side, side_gears_reduced(omega_in, outs, t=lam), atol=1e-9)


def test_output_torques_examples():
    assert output_torques(1.177, [0.0] * 6) == pytest.approx((20 * 1.177 / 6,) * 3, rel=1e-12)
    assert output_torques(1.177, [0.0] * 6)[0] == pytest.approx(3.9233, abs=5e-5)
    assert output_torques(0.0, [0.0] * 6) == (0.0, 0.0, 0.0)
    a, inertia = 3.0, 2e-4
    got = output_torques(1.177, [a] * 6, [inertia] * 6)
    assert got == pytest.approx((20 * 1.177 / 6 - 2 * inertia * a / 2,) * 3, rel=1e-12)


def test_output_torques_pairing():
    # only S1 and S3 load output 1, S4 and S6 output 2, S2 and S5 output 3
    inertias = [1.0, 10.0, 100.0, 1000.0, 10000.0, 100000.0]
    tau = output_torques(0.0, [1.0] * 6, inertias)
    assert tau == pytest.approx((-(1 + 100) / 2, -(1000 + 100000) / 2, -(10 + 10000) / 2))


def test_output_torques_symbolic():
    I = sp.symbols("I1:7")
    acc = sp.symbols("a1:7")
    ti, k, j = sp.symbols("tau_i k j", positive=True)
    params = RobotParams(input_to_ring_ratio=20.0, ring_to_output_ratio=2.0)
    vals = {ti: 1.177, k: 20, j: 2, **dict(zip(I, [1, 2, 3, 4, 5, 6])),
            **dict(zip(acc, [0.5, -1, 2, 0.25, -3, 4]))}
    # acceleration of the S7..S12 partner identified with its S1..S6 gear
    expected = [k * ti / (3 * j) - (I[0] * acc[0] + I[2] * acc[2]) / j,
                k * ti / (3 * j) - (I[3] * acc[3] + I[5] * acc[5]) / j,
                k * ti / (3 * j) - (I[1] * acc[1] + I[4] * acc[4]) / j]
    got = output_torques(1.177, [0.5, -1, 2, 0.25, -3, 4], [1, 2, 3, 4, 5, 6], params)
    assert got == pytest.approx([float(e.subs(vals)) for e in expected], rel=1e-12)


def test_torque_sum():
    assert sum(output_torques(1.177, [0.0] * 6)) == pytest.approx(20 * 1.177 / 2, rel=1e-12)


@pytest.mark.parametrize("tau_r, expected", [(0.0, 3.9233), (3.9233, 0.0), (1.0, 2.9233)])
def test_equal_load_torques(tau_r, expected):
    assert equal_load_torques(1.177, tau_r) == pytest.approx((expected,) * 3, abs=5e-5)


def test_equal_load_torques_rejects_negative_load():
    with pytest.raises(ValidationError):
        equal_load_torques(1.177, -1.0)


def test_gear_state():
    s = GearState.from_outputs(48.0, (3.431, 4.8, 6.169), recirculation=0.3)
    assert s.check() is s
    assert GearState.from_side_gears(48.0, [2.4] * 6).output_rpm == pytest.approx((4.8,) * 3)
    with pytest.raises(InconsistentOutputs):
        GearState(48.0, (2.4,) * 6, (4.0, 4.8, 5.6)).check()


def test_load_condition_and_resolution():
    with pytest.raises(ValidationError):
        LoadCondition((-1.0, 0.0, 0.0))
    assert resolve_outputs(48.0, LoadCondition()) == pytest.approx((4.8,) * 3)
    # one output held back: the other two share the remainder equally
    held = resolve_outputs(48.0, LoadCondition(prescribed_rpm=(3.0, None, None)))
    assert held == pytest.approx((3.0, 5.7, 5.7))
    with pytest.raises(InconsistentOutputs):
        resolve_outputs(48.0, LoadCondition(prescribed_rpm=(5.0, 5.0, 5.0)))
    tau = net_output_torques(1.177, LoadCondition((1.0, 0.0, 3.9233)))
    assert tau == pytest.approx((2.9233, 3.9233, 0.0), abs=5e-5)
