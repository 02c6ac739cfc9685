"""Kinematic and quasi-static torque model of a three-tracked in-pipe robot
driven through a three-output open differential."""

from .analysis import (
    DriveMode, SlipReport, ValidationReport, drive_slip, encoder_counts, ood_drive_slip,
    rigid_drive_slip, validate_against_fixtures,
)
from .bend import BendRadii, effective_radii, track_angles
from .geartrain import (
    GearState, LoadCondition, equal_load_speeds, equal_load_torques, forward_speeds,
    output_torques, solve_side_gears,
)
from .model import (
    DEFAULT_PARAMS, Bend, DegenerateBend, IncompatiblePipe, InconsistentOutputs,
    PipeClimberError, PipeNetwork, RingConstraintViolated, RobotParams, Straight,
    ValidationError, ZeroInputSpeed, clamp_state,
)
from .netio import ParseError, emit_network, emit_timeline_csv, parse_network
from .traversal import (
    TraversalTimeline, bend_state, segment_transit, simulate, straight_state, track_linear_speed,
)

__version__ = "0.1.0"
