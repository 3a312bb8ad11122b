"""Pedestrian-robot interaction classification.

The robot is modeled as moving straight ahead (north) at a constant
nominal speed; interactions are decided from the closed-form closest
point of approach of the relative motion, corridor entry geometry for
crossings, and heading gates for pass-bys.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import templates
from .errors import ValidationError
from .grounding import GroundingConfig, Heading
from .trajectory import Track, TrajectoryConfig, smooth_velocities

Vec2 = tuple[float, float]


class InteractionType(Enum):
    TRAJECTORY_CONFLICT = "trajectory_conflict"
    PATH_CROSSING_WEST_TO_EAST = "path_crossing_west_to_east"
    PATH_CROSSING_EAST_TO_WEST = "path_crossing_east_to_west"
    PASS_BY = "pass_by"
    OTHER = "other"


@dataclass(frozen=True)
class RobotMotionModel:
    """Nominal robot kinematics: constant forward (north) motion."""

    forward_speed_mps: float = 1.0
    corridor_half_width_m: float = 0.75

    def __post_init__(self):
        if not math.isfinite(self.forward_speed_mps) or self.forward_speed_mps < 0:
            raise ValidationError(
                "forward_speed_mps must be finite and >= 0",
                field="forward_speed_mps",
            )
        if self.corridor_half_width_m <= 0:
            raise ValidationError(
                "corridor_half_width_m must be positive",
                field="corridor_half_width_m",
            )


@dataclass(frozen=True)
class InteractionConfig:
    conflict_distance_m: float = 1.5
    horizon_s: float = 4.0
    passby_lateral_max_m: float = 3.0

    def __post_init__(self):
        for name in ("conflict_distance_m", "horizon_s", "passby_lateral_max_m"):
            if getattr(self, name) <= 0:
                raise ValidationError(f"{name} must be positive", field=name)


@dataclass(frozen=True)
class ClosestApproach:
    t_star_s: float
    min_distance_m: float


def closest_approach(
    rel_position_m: Vec2, rel_velocity_mps: Vec2, horizon_s: float
) -> ClosestApproach:
    """Closed-form CPA of linear relative motion, clamped to [0, horizon]."""
    if horizon_s <= 0:
        raise ValidationError("horizon_s must be positive", field="horizon_s")
    px, py = rel_position_m
    vx, vy = rel_velocity_mps
    if not all(math.isfinite(c) for c in (px, py, vx, vy)):
        raise ValidationError("CPA inputs must be finite", field="rel_position_m")
    v2 = vx * vx + vy * vy
    t_unclamped = 0.0 if v2 == 0.0 else -(px * vx + py * vy) / v2
    t_star = min(max(t_unclamped, 0.0), horizon_s)
    return ClosestApproach(
        t_star_s=t_star,
        min_distance_m=math.hypot(px + t_star * vx, py + t_star * vy),
    )


CROSSING_EASTWARD = frozenset({Heading.E, Heading.NE, Heading.SE})
CROSSING_WESTWARD = frozenset({Heading.W, Heading.NW, Heading.SW})
PASSBY_HEADINGS = frozenset({Heading.S, Heading.SE, Heading.SW})


def _corridor_interval(
    east0: float, v_east: float, half_width: float
) -> tuple[float, float] | None:
    """Time interval during which the pedestrian's east coordinate stays
    within the robot corridor, or None if it never does."""
    if v_east == 0.0:
        return (-math.inf, math.inf) if abs(east0) <= half_width else None
    t1 = (-half_width - east0) / v_east
    t2 = (half_width - east0) / v_east
    return (min(t1, t2), max(t1, t2))


def _min_lateral_separation(
    east0: float, v_east: float, horizon_s: float
) -> float:
    """min |east(t)| over t in [0, horizon] for linear motion."""
    e_end = east0 + horizon_s * v_east
    if east0 == 0.0 or e_end == 0.0 or (east0 < 0) != (e_end < 0):
        return 0.0
    return min(abs(east0), abs(e_end))


def classify_interaction(
    track: Track,
    frame_index: int,
    robot: RobotMotionModel | None = None,
    cfg: InteractionConfig | None = None,
    tcfg: TrajectoryConfig | None = None,
    grounding: GroundingConfig | None = None,
) -> InteractionType:
    """Classify the pedestrian-robot interaction at one frame.

    Priority: trajectory conflict, then path crossing, then pass-by, then
    other (no collision risk). A crossing that closes inside the conflict
    distance is reported as a conflict.
    """
    robot = robot or RobotMotionModel()
    cfg = cfg or InteractionConfig()
    tcfg = tcfg or TrajectoryConfig()
    states = smooth_velocities(track, tcfg, grounding)
    pos = track.position_of(frame_index)
    state = states[pos]
    return _interaction_from_state(
        track.detections[pos].position_m,
        state.smoothed_velocity_mps,
        state.heading,
        robot,
        cfg,
    )


def _interaction_from_state(
    position_m: Vec2,
    velocity_mps: Vec2,
    heading: Heading,
    robot: RobotMotionModel,
    cfg: InteractionConfig,
) -> InteractionType:
    pe, pn = position_m
    ve, vn = velocity_mps
    robot_v = (0.0, robot.forward_speed_mps)
    rel_v = (ve - robot_v[0], vn - robot_v[1])

    cpa = closest_approach(position_m, rel_v, cfg.horizon_s)
    if cpa.min_distance_m < cfg.conflict_distance_m:
        return InteractionType.TRAJECTORY_CONFLICT

    if heading in CROSSING_EASTWARD or heading in CROSSING_WESTWARD:
        interval = _corridor_interval(pe, ve, robot.corridor_half_width_m)
        if interval is not None:
            t_lo = max(interval[0], 0.0)
            t_hi = min(interval[1], cfg.horizon_s)
            if t_hi > 0.0 and t_lo <= t_hi:
                # Entry must happen ahead of the robot.
                north_at_entry = pn + t_lo * rel_v[1]
                if north_at_entry >= 0.0:
                    return (
                        InteractionType.PATH_CROSSING_WEST_TO_EAST
                        if ve > 0
                        else InteractionType.PATH_CROSSING_EAST_TO_WEST
                    )

    if heading in PASSBY_HEADINGS:
        if _min_lateral_separation(pe, ve, cfg.horizon_s) <= cfg.passby_lateral_max_m:
            return InteractionType.PASS_BY

    return InteractionType.OTHER


def render_interaction_phrase(itype: InteractionType) -> str:
    """Canonical phrase for an interaction, e.g. "poses no risk of collision"."""
    return templates.INTERACTION_PHRASES[itype.value]
