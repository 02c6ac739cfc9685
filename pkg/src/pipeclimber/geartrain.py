"""
Speed and torque relations of the three-output open differential.

Side gears S1..S6 sit in the three two-output differentials, paired
(S1, S2), (S3, S4), (S5, S6) around ring gears turning at ``w_i / k``.
Each two-input differential collects one side gear from each of its two
neighbours through a rigid mesh (S7..S12 mirror S1..S6):

    O1 <- (S1, S3)    O2 <- (S4, S6)    O3 <- (S2, S5)

which is the only pairing consistent with the output-speed relations in
:func:`forward_speeds`.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .model import (
    DEFAULT_PARAMS, InconsistentOutputs, RingConstraintViolated, RobotParams,
    ValidationError, as_triple,
)

REL_TOL = 1e-9
ABS_TOL = 1e-12

RING_PAIRS = ((0, 1), (2, 3), (4, 5))
# side gears feeding each output, 0-based
OUTPUT_PAIRS = ((0, 2), (3, 5), (1, 4))
# side gears whose complement appears in the subtractive form of each output
COMPLEMENT_PAIRS = ((1, 3), (2, 4), (0, 5))

# Moving every side gear along this direction keeps all three ring sums and
# all three outputs fixed: the internal recirculation mode of the train.
RECIRCULATION_MODE = np.array([1.0, -1.0, -1.0, 1.0, 1.0, -1.0])

# Rows 0-2: ring constraints (wa + wb) / 2.  Rows 3-5: outputs / j.
_CONSTRAINTS = np.zeros((6, 6))
for _row, (_a, _b) in enumerate(RING_PAIRS + OUTPUT_PAIRS):
    _CONSTRAINTS[_row, _a] = _CONSTRAINTS[_row, _b] = 0.5


def _close(a: float, b: float, scale: float = 0.0) -> bool:
    scale = max(abs(a), abs(b), abs(scale))
    return abs(a - b) <= max(REL_TOL * scale, ABS_TOL)


def _six(values, name):
    arr = np.asarray(values, dtype=float)
    if arr.shape != (6,):
        raise ValidationError(f"{name} needs six entries, got shape {arr.shape}")
    return arr


def ring_speed(omega_in: float, params: RobotParams = DEFAULT_PARAMS) -> float:
    return omega_in / params.k


def check_ring_constraints(omega_in, side_gears, params=DEFAULT_PARAMS):
    w = _six(side_gears, "side_gears")
    ring = ring_speed(omega_in, params)
    for a, b in RING_PAIRS:
        mean = 0.5 * (w[a] + w[b])
        if not _close(mean, ring, max(abs(w[a]), abs(w[b]))):
            raise RingConstraintViolated(
                f"(w{a + 1} + w{b + 1})/2 = {mean!r} but ring gear turns at {ring!r} rpm")
    return w


def forward_speeds(omega_in: float, side_gears: Sequence[float],
                   params: RobotParams = DEFAULT_PARAMS) -> Tuple[float, float, float]:
    """Output speeds (rpm) for a given input speed and side-gear state.

    Evaluates both the subtractive form ``2j*w_i/k - j*(wa + wb)/2`` and the
    direct pair form ``j*(wa + wb)/2``; they must agree on any state that
    satisfies the ring constraints.
    """
    w = check_ring_constraints(omega_in, side_gears, params)
    j = params.j
    base = 2.0 * j * ring_speed(omega_in, params)
    outputs = []
    for (a, b), (c, d) in zip(COMPLEMENT_PAIRS, OUTPUT_PAIRS):
        subtractive = base - j * (w[a] + w[b]) / 2.0
        direct = j * (w[c] + w[d]) / 2.0
        if not _close(subtractive, direct, j * max(abs(w).max(), abs(base))):
            raise RingConstraintViolated(
                f"output forms disagree: {subtractive!r} vs {direct!r}")
        outputs.append(subtractive)
    return tuple(outputs)


def equal_load_speeds(omega_in: float,
                      params: RobotParams = DEFAULT_PARAMS) -> Tuple[float, float, float]:
    w = params.j * omega_in / params.k
    return (w, w, w)


def output_sum(omega_in: float, params: RobotParams = DEFAULT_PARAMS) -> float:
    """Sum of the three output speeds fixed by the input, ``3*j*w_i/k``."""
    return 3.0 * params.j * omega_in / params.k


def solve_side_gears(omega_in: float, outputs: Sequence[float], recirculation: float = 0.0,
                     params: RobotParams = DEFAULT_PARAMS) -> np.ndarray:
    """Side-gear speeds S1..S6 producing the requested output speeds.

    The constraint system has rank five, so solutions form a line. The
    ``recirculation`` parameter moves along it in units of
    :data:`RECIRCULATION_MODE` (rpm per gear); 0 is the solution closest to
    the uniform state where every side gear turns with the ring gears.
    """
    outs = np.asarray(as_triple(outputs, "outputs"))
    expected = output_sum(omega_in, params)
    if not _close(outs.sum(), expected, np.abs(outs).max()):
        raise InconsistentOutputs(
            f"outputs sum to {outs.sum()!r} rpm; input {omega_in!r} rpm forces {expected!r}")
    ring = ring_speed(omega_in, params)
    rhs = np.concatenate([np.full(3, ring), outs / params.j])
    uniform = np.full(6, ring)
    deviation, *_ = np.linalg.lstsq(_CONSTRAINTS, rhs - _CONSTRAINTS @ uniform, rcond=None)
    return uniform + deviation + recirculation * RECIRCULATION_MODE


def output_torques(torque_in: float, side_gear_accel: Sequence[float],
                   inertias: Optional[Sequence[float]] = None,
                   params: RobotParams = DEFAULT_PARAMS) -> Tuple[float, float, float]:
    """Output torques (N*m) given input torque and side-gear accelerations (rad/s^2).

    Each output loses the inertial torque of the two side gears that drive it.
    ``inertias`` defaults to ``params.inertias``.
    """
    acc = _six(side_gear_accel, "side_gear_accel")
    inertia = _six(params.inertias if inertias is None else inertias, "inertias")
    share = params.k * torque_in / (3.0 * params.j)
    return tuple(
        share - (inertia[a] * acc[a] + inertia[b] * acc[b]) / params.j
        for a, b in OUTPUT_PAIRS)


def equal_load_torques(torque_in: float, resistive_torque: float = 0.0,
                       common_accel: float = 0.0, inertia: Optional[float] = None,
                       params: RobotParams = DEFAULT_PARAMS) -> Tuple[float, float, float]:
    if resistive_torque < 0:
        raise ValidationError("resistive torque must be >= 0")
    if inertia is None:
        inertia = params.inertias[0]
    tau = (params.k * torque_in / (3.0 * params.j)
           - 2.0 * inertia * common_accel / params.j - resistive_torque)
    return (tau, tau, tau)


@dataclass(frozen=True)
class GearState:
    input_rpm: float
    side_gear_rpm: Tuple[float, ...]
    output_rpm: Tuple[float, float, float]

    def __post_init__(self):
        object.__setattr__(self, "side_gear_rpm", tuple(float(v) for v in self.side_gear_rpm))
        object.__setattr__(self, "output_rpm", as_triple(self.output_rpm, "output_rpm"))

    def check(self, params: RobotParams = DEFAULT_PARAMS) -> "GearState":
        """Raise unless the ring and output relations hold for ``params``."""
        outs = forward_speeds(self.input_rpm, self.side_gear_rpm, params)
        for got, want in zip(outs, self.output_rpm):
            if not _close(got, want):
                raise InconsistentOutputs(f"output {want!r} rpm, side gears give {got!r}")
        return self

    @classmethod
    def from_side_gears(cls, omega_in, side_gears, params=DEFAULT_PARAMS):
        return cls(omega_in, tuple(side_gears), forward_speeds(omega_in, side_gears, params))

    @classmethod
    def from_outputs(cls, omega_in, outputs, recirculation=0.0, params=DEFAULT_PARAMS):
        side = solve_side_gears(omega_in, outputs, recirculation, params)
        return cls(omega_in, tuple(side), tuple(outputs))


@dataclass(frozen=True)
class LoadCondition:
    """Resistive torque on each output and optional prescribed output speeds.

    A ``None`` entry in ``prescribed_rpm`` leaves that output free.
    """

    resistive_torque_nm: Tuple[float, float, float] = (0.0, 0.0, 0.0)
    prescribed_rpm: Tuple[Optional[float], Optional[float], Optional[float]] = (None, None, None)

    def __post_init__(self):
        tau = as_triple(self.resistive_torque_nm, "resistive_torque_nm")
        if any(t < 0 for t in tau):
            raise ValidationError("resistive torques must be >= 0")
        prescribed = tuple(self.prescribed_rpm)
        if len(prescribed) != 3:
            raise ValidationError("prescribed_rpm needs three entries (None for free)")
        object.__setattr__(self, "resistive_torque_nm", tau)
        object.__setattr__(self, "prescribed_rpm",
                           tuple(None if p is None else float(p) for p in prescribed))


def resolve_outputs(omega_in: float, load: LoadCondition,
                    params: RobotParams = DEFAULT_PARAMS) -> Tuple[float, float, float]:
    """Output speeds once the prescribed outputs are pinned.

    Free outputs split whatever the fixed output sum leaves over equally,
    as equally loaded outputs of an open differential do.
    """
    fixed = [p for p in load.prescribed_rpm if p is not None]
    free = 3 - len(fixed)
    total = output_sum(omega_in, params)
    if free == 0:
        outs = tuple(load.prescribed_rpm)
        if not _close(sum(outs), total, max(abs(o) for o in outs)):
            raise InconsistentOutputs(f"prescribed outputs sum to {sum(outs)!r}, need {total!r}")
        return outs
    share = (total - sum(fixed)) / free
    return tuple(share if p is None else p for p in load.prescribed_rpm)


def net_output_torques(torque_in: float, load: LoadCondition,
                       side_gear_accel: Sequence[float] = (0.0,) * 6,
                       params: RobotParams = DEFAULT_PARAMS) -> Tuple[float, float, float]:
    """Output torque left after each output's resistive torque, quasi-static by default."""
    drive = output_torques(torque_in, side_gear_accel, params=params)
    return tuple(t - r for t, r in zip(drive, load.resistive_torque_nm))
