"""
Robot constants, pipe-route types and the error hierarchy.

Units used throughout the package:

- lengths in mm
- angles in radians internally (degrees only at the file/CLI boundary)
- angular speeds of gears and the motor in rpm
- track and robot speeds in mm/s, times in s
- torques in N*m, inertias in kg*m^2
"""

from dataclasses import dataclass, field
from math import isfinite, pi
from typing import Optional, Sequence, Tuple, Union

TWO_PI = 2.0 * pi


class PipeClimberError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(PipeClimberError, ValueError):
    """A value violates an invariant of the type being constructed."""


class IncompatiblePipe(PipeClimberError, ValueError):
    """Pipe diameter lies outside the robot's clamp range."""


class RingConstraintViolated(PipeClimberError, ValueError):
    """Side-gear speeds do not average to the ring-gear speed."""


class InconsistentOutputs(PipeClimberError, ValueError):
    """Requested output speeds cannot be produced by an open differential."""


class DegenerateBend(PipeClimberError, ValueError):
    """Bend radius does not exceed the pipe radius."""


class ZeroInputSpeed(PipeClimberError, ValueError):
    """Motor is stopped, so a segment of non-zero extent is never finished."""


def _positive(name, value):
    if not (isfinite(value) and value > 0):
        raise ValidationError(f"{name} must be a positive finite number, got {value!r}")


def normalize_angle(angle: float) -> float:
    """Wrap an angle into [0, 2*pi)."""
    wrapped = angle % TWO_PI
    # -tiny % 2pi rounds up to exactly 2pi
    return 0.0 if wrapped >= TWO_PI else wrapped


@dataclass(frozen=True)
class RobotParams:
    track_diameter_mm: float = 80.0
    input_to_ring_ratio: float = 20.0   # k
    ring_to_output_ratio: float = 2.0   # j
    robot_length_mm: float = 200.0
    diameter_max_mm: float = 280.0
    diameter_min_mm: float = 248.0
    motor_speed_rpm: float = 48.0
    motor_torque_nm: float = 1.177
    side_gear_inertia: float = 0.0
    # optional per-gear override for S1..S6
    side_gear_inertias: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        for name in ("track_diameter_mm", "input_to_ring_ratio", "ring_to_output_ratio",
                     "robot_length_mm", "diameter_max_mm", "diameter_min_mm"):
            _positive(name, getattr(self, name))
        if self.diameter_min_mm > self.diameter_max_mm:
            raise ValidationError("diameter_min_mm exceeds diameter_max_mm")
        if not self.input_to_ring_ratio > self.ring_to_output_ratio:
            raise ValidationError("input_to_ring_ratio (k) must exceed ring_to_output_ratio (j)")
        if not (isfinite(self.motor_speed_rpm) and isfinite(self.motor_torque_nm)):
            raise ValidationError("motor ratings must be finite")
        if not (isfinite(self.side_gear_inertia) and self.side_gear_inertia >= 0):
            raise ValidationError("side_gear_inertia must be >= 0")
        if self.side_gear_inertias is not None:
            values = tuple(float(v) for v in self.side_gear_inertias)
            if len(values) != 6 or any(not (isfinite(v) and v >= 0) for v in values):
                raise ValidationError("side_gear_inertias needs six non-negative values")
            object.__setattr__(self, "side_gear_inertias", values)

    @property
    def k(self) -> float:
        return self.input_to_ring_ratio

    @property
    def j(self) -> float:
        return self.ring_to_output_ratio

    @property
    def inertias(self) -> Tuple[float, ...]:
        """Inertias of side gears S1..S6."""
        if self.side_gear_inertias is not None:
            return self.side_gear_inertias
        return (self.side_gear_inertia,) * 6

    @property
    def clamp_travel_mm(self) -> float:
        return self.diameter_max_mm - self.diameter_min_mm


DEFAULT_PARAMS = RobotParams()


@dataclass(frozen=True)
class Straight:
    length_mm: float

    def __post_init__(self):
        _positive("length_mm", self.length_mm)


@dataclass(frozen=True)
class Bend:
    """Constant-curvature elbow of ``angle_rad`` about an axis ``bend_radius_mm`` away.

    ``orientation_rad`` is the robot roll while inside this bend, measured
    from the inward (towards the bend axis) direction to track t1.
    """

    angle_rad: float
    bend_radius_mm: float
    orientation_rad: float = 0.0

    def __post_init__(self):
        # angle 0 is accepted as a degenerate no-op bend
        if not (isfinite(self.angle_rad) and 0.0 <= self.angle_rad <= TWO_PI):
            raise ValidationError(f"bend angle must lie in [0, 2*pi], got {self.angle_rad!r}")
        _positive("bend_radius_mm", self.bend_radius_mm)
        if not isfinite(self.orientation_rad):
            raise ValidationError("orientation must be finite")
        object.__setattr__(self, "orientation_rad", normalize_angle(self.orientation_rad))


PipeSegment = Union[Straight, Bend]


@dataclass(frozen=True)
class PipeNetwork:
    pipe_radius_mm: float
    segments: Tuple[PipeSegment, ...] = field(default_factory=tuple)

    def __post_init__(self):
        _positive("pipe_radius_mm", self.pipe_radius_mm)
        segments = tuple(self.segments)
        if not segments:
            raise ValidationError("a pipe network needs at least one segment")
        for i, seg in enumerate(segments):
            if not isinstance(seg, (Straight, Bend)):
                raise ValidationError(f"segment {i} is not a Straight or Bend: {seg!r}")
            if isinstance(seg, Bend) and seg.bend_radius_mm <= self.pipe_radius_mm:
                raise ValidationError(
                    f"segment {i}: bend radius {seg.bend_radius_mm} mm must exceed "
                    f"pipe radius {self.pipe_radius_mm} mm")
        object.__setattr__(self, "segments", segments)

    @property
    def pipe_diameter_mm(self) -> float:
        return 2.0 * self.pipe_radius_mm

    @property
    def bends(self) -> Tuple[Bend, ...]:
        return tuple(s for s in self.segments if isinstance(s, Bend))

    def with_orientation(self, alpha_rad: float) -> "PipeNetwork":
        """Copy of the network with the robot held at roll ``alpha_rad`` in every bend."""
        segments = tuple(
            Bend(s.angle_rad, s.bend_radius_mm, alpha_rad) if isinstance(s, Bend) else s
            for s in self.segments)
        return PipeNetwork(self.pipe_radius_mm, segments)

    def centerline_length_mm(self) -> float:
        return sum(s.length_mm if isinstance(s, Straight) else s.angle_rad * s.bend_radius_mm
                   for s in self.segments)


def clamp_state(pipe_diameter_mm: float, params: RobotParams = DEFAULT_PARAMS) -> float:
    """Radial compression the wall-clamp takes up inside a pipe of the given diameter.

    >>> clamp_state(248.0)
    32.0
    """
    if not (params.diameter_min_mm <= pipe_diameter_mm <= params.diameter_max_mm):
        raise IncompatiblePipe(
            f"pipe diameter {pipe_diameter_mm} mm outside clamp range "
            f"[{params.diameter_min_mm}, {params.diameter_max_mm}] mm")
    return params.diameter_max_mm - pipe_diameter_mm


def as_triple(values: Sequence[float], name: str = "values") -> Tuple[float, float, float]:
    out = tuple(float(v) for v in values)
    if len(out) != 3:
        raise ValidationError(f"{name} needs exactly three entries, got {len(out)}")
    return out
