"""
Quasi-static traversal of a pipe route.

Within a segment every track runs at a constant speed; segment changes are
instantaneous. In a straight all three tracks run at the equal-load speed.
In a bend the robot turns about the bend axis at a rate fixed by the
differential's output sum, and each track runs at that rate times its own
effective radius, so no track slips.
"""

from dataclasses import dataclass
from math import pi
from typing import Iterator, NamedTuple, Tuple

import numpy as np

from .bend import BendRadii, effective_radii
from .geartrain import equal_load_speeds
from .model import (
    DEFAULT_PARAMS, Bend, PipeNetwork, PipeSegment, RobotParams, Straight, ValidationError,
    ZeroInputSpeed, clamp_state,
)

DEFAULT_SAMPLE_DT = 0.01


def track_linear_speed(output_rpm: float, track_diameter_mm: float) -> float:
    """Surface speed (mm/s) of a track whose sprocket output turns at ``output_rpm``."""
    if not track_diameter_mm > 0:
        raise ValidationError("track diameter must be positive")
    return output_rpm * pi * track_diameter_mm / 60.0


def straight_state(omega_in: float,
                   params: RobotParams = DEFAULT_PARAMS) -> Tuple[float, float, float]:
    return tuple(track_linear_speed(w, params.track_diameter_mm)
                 for w in equal_load_speeds(omega_in, params))


class BendState(NamedTuple):
    omega_robot: float          # rad/s about the bend axis
    v_track: Tuple[float, float, float]


def bend_state(omega_in: float, radii: BendRadii,
               params: RobotParams = DEFAULT_PARAMS) -> BendState:
    total = sum(straight_state(omega_in, params))
    omega_robot = total / (3.0 * radii.R_mm)
    return BendState(omega_robot, tuple(omega_robot * rho for rho in radii.rho_mm))


class SegmentTransit(NamedTuple):
    duration_s: float
    delta_track_mm: Tuple[float, float, float]
    delta_robot_mm: float
    v_track: Tuple[float, float, float]
    v_robot: float


def segment_transit(segment: PipeSegment, omega_in: float, r_mm: float,
                    params: RobotParams = DEFAULT_PARAMS) -> SegmentTransit:
    if omega_in < 0:
        raise ValidationError("the robot only drives forward through a route (omega_in >= 0)")
    if isinstance(segment, Straight):
        v = straight_state(omega_in, params)
        if omega_in == 0:
            raise ZeroInputSpeed(f"straight of {segment.length_mm} mm never completes at 0 rpm")
        length = segment.length_mm
        return SegmentTransit(length / v[0], (length,) * 3, length, v, sum(v) / 3.0)
    if isinstance(segment, Bend):
        radii = effective_radii(segment.orientation_rad, r_mm, segment.bend_radius_mm)
        omega_robot, v = bend_state(omega_in, radii, params)
        theta = segment.angle_rad
        if theta == 0:
            return SegmentTransit(0.0, (0.0, 0.0, 0.0), 0.0, v, sum(v) / 3.0)
        if omega_in == 0:
            raise ZeroInputSpeed(f"bend of {theta} rad never completes at 0 rpm")
        return SegmentTransit(theta / omega_robot, tuple(theta * rho for rho in radii.rho_mm),
                              theta * segment.bend_radius_mm, v, sum(v) / 3.0)
    raise TypeError(f"not a pipe segment: {segment!r}")


class Sample(NamedTuple):
    t: float
    segment: int
    v_track: Tuple[float, float, float]
    v_robot: float
    D_track: Tuple[float, float, float]
    D_robot: float


class Totals(NamedTuple):
    T_total: float
    D_track: Tuple[float, float, float]
    D_robot: float


@dataclass(frozen=True, eq=False)
class TraversalTimeline:
    """Sampled speed/distance profile over a route.

    Columns are numpy arrays of equal length; ``v_track`` and ``D_track`` are
    ``(n, 3)``. The last sample, when present, sits at ``totals.T_total``.
    """

    t: np.ndarray
    segment: np.ndarray
    v_track: np.ndarray
    v_robot: np.ndarray
    D_track: np.ndarray
    D_robot: np.ndarray
    totals: Totals
    transits: Tuple[SegmentTransit, ...] = ()

    def __len__(self):
        return len(self.t)

    def __iter__(self) -> Iterator[Sample]:
        for i in range(len(self.t)):
            yield Sample(float(self.t[i]), int(self.segment[i]), tuple(self.v_track[i]),
                         float(self.v_robot[i]), tuple(self.D_track[i]), float(self.D_robot[i]))

    @classmethod
    def from_samples(cls, samples, totals: Totals) -> "TraversalTimeline":
        samples = list(samples)
        return cls(
            t=np.array([s.t for s in samples], dtype=float),
            segment=np.array([s.segment for s in samples], dtype=int),
            v_track=np.array([s.v_track for s in samples], dtype=float).reshape(-1, 3),
            v_robot=np.array([s.v_robot for s in samples], dtype=float),
            D_track=np.array([s.D_track for s in samples], dtype=float).reshape(-1, 3),
            D_robot=np.array([s.D_robot for s in samples], dtype=float),
            totals=totals,
        )


def simulate(network: PipeNetwork, omega_in: float = DEFAULT_PARAMS.motor_speed_rpm,
             params: RobotParams = DEFAULT_PARAMS,
             sample_dt: float = DEFAULT_SAMPLE_DT) -> TraversalTimeline:
    """Drive the robot through ``network`` with the motor at ``omega_in`` rpm.

    Totals are summed per segment in closed form; the samples only describe
    the profile and do not feed back into the totals.
    """
    if not sample_dt > 0:
        raise ValidationError("sample_dt must be positive")
    clamp_state(network.pipe_diameter_mm, params)
    transits = tuple(segment_transit(seg, omega_in, network.pipe_radius_mm, params)
                     for seg in network.segments)

    n = len(transits)
    durations = np.array([tr.duration_s for tr in transits])
    d_track = np.array([tr.delta_track_mm for tr in transits])
    d_robot = np.array([tr.delta_robot_mm for tr in transits])
    starts = np.concatenate([[0.0], np.cumsum(durations)])
    track_at_start = np.vstack([np.zeros(3), np.cumsum(d_track, axis=0)])
    robot_at_start = np.concatenate([[0.0], np.cumsum(d_robot)])
    totals = Totals(float(starts[-1]), tuple(float(x) for x in track_at_start[-1]),
                    float(robot_at_start[-1]))

    T = totals.T_total
    count = int(np.floor(T / sample_dt)) + 1
    t = np.arange(count) * sample_dt
    t = t[t < T] if T > 0 else t[:1]
    if T > 0:
        t = np.append(t, T)

    # segment containing each time; zero-length segments are never selected
    idx = np.searchsorted(starts[1:], t, side="right")
    idx = np.minimum(idx, n - 1)
    last = t == T
    idx[last] = n - 1
    v_track = np.array([tr.v_track for tr in transits])[idx]
    v_robot = np.array([tr.v_robot for tr in transits])[idx]
    elapsed = t - starts[idx]
    # clip keeps rounding from overshooting the next segment's start values
    D_track = np.minimum(track_at_start[idx] + v_track * elapsed[:, None], track_at_start[idx + 1])
    D_robot = np.minimum(robot_at_start[idx] + v_robot * elapsed, robot_at_start[idx + 1])
    # exact closed-form values at the end sample
    D_track[last] = track_at_start[-1]
    D_robot[last] = robot_at_start[-1]
    return TraversalTimeline(t, idx.astype(int), v_track, v_robot, D_track, D_robot,
                             totals, transits)
