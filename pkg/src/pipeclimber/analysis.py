"""Slip of a rigid equal-speed drive, encoder quantization and fixture validation."""

from dataclasses import dataclass
from enum import Enum
from math import cos, fabs, floor
from typing import Mapping, Optional, Tuple

from .bend import effective_radii, track_angles
from .geartrain import equal_load_speeds
from .model import DEFAULT_PARAMS, Bend, PipeNetwork, RobotParams, ValidationError
from .traversal import bend_state, straight_state, track_linear_speed

ENCODER_PITCH_MM = 50.26
LEAST_COUNT_MM = ENCODER_PITCH_MM

DISTANCE_KEYS = ("D_t1", "D_t2", "D_t3", "D_R")


class DriveMode(str, Enum):
    THREE_OOD = "three-ood"
    RIGID = "rigid-equal-speed"


@dataclass(frozen=True)
class SlipReport:
    drive_mode: DriveMode
    slip_mm: Tuple[float, float, float]
    per_segment: Tuple[Tuple[float, float, float], ...]

    def __post_init__(self):
        if any(s < 0 for s in self.slip_mm):
            raise ValidationError("slip is a path length and cannot be negative")


def _network_at(network, alpha_rad):
    return network if alpha_rad is None else network.with_orientation(alpha_rad)


def rigid_drive_slip(network: PipeNetwork, alpha_rad: Optional[float] = None,
                     omega_in: float = DEFAULT_PARAMS.motor_speed_rpm,
                     params: RobotParams = DEFAULT_PARAMS) -> SlipReport:
    """Track slip when all three tracks are forced to the straight-pipe speed.

    Assumes the robot centre still follows the pipe centreline, so in a bend
    of angle theta each track is off its no-slip path by ``r*|cos(phi_k)|*theta``
    regardless of the motor speed. ``alpha_rad`` overrides every bend's roll.
    """
    network = _network_at(network, alpha_rad)
    r = network.pipe_radius_mm
    per_segment = []
    for seg in network.segments:
        if isinstance(seg, Bend):
            per_segment.append(tuple(r * fabs(cos(phi)) * seg.angle_rad
                                     for phi in track_angles(seg.orientation_rad)))
        else:
            per_segment.append((0.0, 0.0, 0.0))
    return SlipReport(DriveMode.RIGID, _column_sums(per_segment), tuple(per_segment))


def ood_drive_slip(network: PipeNetwork, alpha_rad: Optional[float] = None,
                   omega_in: float = DEFAULT_PARAMS.motor_speed_rpm,
                   params: RobotParams = DEFAULT_PARAMS) -> SlipReport:
    """Track slip with the differential: commanded speed minus no-slip speed, integrated."""
    network = _network_at(network, alpha_rad)
    r = network.pipe_radius_mm
    per_segment = []
    for seg in network.segments:
        if isinstance(seg, Bend):
            radii = effective_radii(seg.orientation_rad, r, seg.bend_radius_mm)
            omega_robot, commanded = bend_state(omega_in, radii, params)
            duration = seg.angle_rad / omega_robot if omega_robot else 0.0
            per_segment.append(tuple(fabs(v - omega_robot * rho) * duration
                                     for v, rho in zip(commanded, radii.rho_mm)))
        else:
            commanded = straight_state(omega_in, params)
            # centreline speed: every output at the equal-load speed
            no_slip = track_linear_speed(equal_load_speeds(omega_in, params)[0],
                                         params.track_diameter_mm)
            duration = seg.length_mm / no_slip if no_slip else 0.0
            per_segment.append(tuple(fabs(v - no_slip) * duration for v in commanded))
    return SlipReport(DriveMode.THREE_OOD, _column_sums(per_segment), tuple(per_segment))


def drive_slip(network, mode, alpha_rad=None, omega_in=DEFAULT_PARAMS.motor_speed_rpm,
               params=DEFAULT_PARAMS) -> SlipReport:
    mode = DriveMode(mode)
    fn = rigid_drive_slip if mode is DriveMode.RIGID else ood_drive_slip
    return fn(network, alpha_rad, omega_in, params)


def _column_sums(rows):
    return tuple(float(sum(row[k] for row in rows)) for k in range(3))


def encoder_counts(distance_mm: float, pitch_mm: float = ENCODER_PITCH_MM) -> int:
    """Whole encoder readings registered over ``distance_mm`` of track travel."""
    if distance_mm < 0:
        raise ValidationError("distance must be >= 0")
    return int(floor(distance_mm / pitch_mm))


@dataclass(frozen=True)
class ValidationEntry:
    key: str
    theoretical_mm: float
    fixture_mm: float
    error_mm: float
    passes: bool


@dataclass(frozen=True)
class ValidationReport:
    entries: Tuple[ValidationEntry, ...]
    least_count_mm: float

    @property
    def all_pass(self) -> bool:
        return all(e.passes for e in self.entries)

    def __getitem__(self, key: str) -> ValidationEntry:
        for e in self.entries:
            if e.key == key:
                return e
        raise KeyError(key)


def totals_as_distances(totals) -> dict:
    """Map simulation totals onto the fixture keys D_t1..D_t3, D_R."""
    return dict(zip(DISTANCE_KEYS, (*totals.D_track, totals.D_robot)))


def validate_against_fixtures(sim_totals: Mapping[str, float], fixtures: Mapping[str, float],
                              least_count_mm: float = LEAST_COUNT_MM) -> ValidationReport:
    """Compare measured distances with theory; error is fixture minus theory."""
    if set(sim_totals) != set(fixtures):
        raise ValidationError(
            f"entry mismatch: theory has {sorted(sim_totals)}, fixtures have {sorted(fixtures)}")
    entries = []
    for key in sim_totals:
        theory, measured = float(sim_totals[key]), float(fixtures[key])
        error = measured - theory
        entries.append(ValidationEntry(key, theory, measured, error, fabs(error) < least_count_mm))
    return ValidationReport(tuple(entries), least_count_mm)
