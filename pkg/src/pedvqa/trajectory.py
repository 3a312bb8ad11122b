"""Per-track velocity estimation, smoothing, and movement patterns.

Positions are (east, north) meters in the robot-anchored frame with the
robot's own translation compensated upstream: differencing positions
yields the pedestrian's motion over the ground, and the robot's nominal
forward motion is modeled separately (see interaction.RobotMotionModel).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from . import templates
from .errors import InsufficientHistoryError, ValidationError
from .grounding import GroundingConfig, Heading, classify_heading

Vec2 = tuple[float, float]


@dataclass(frozen=True)
class Detection:
    """One per-frame pedestrian observation."""

    track_id: str
    frame_index: int
    timestamp_s: float
    bbox_px: tuple[float, float, float, float]  # x1, y1, x2, y2
    position_m: Vec2  # (east, north), robot frame

    def __post_init__(self):
        x1, y1, x2, y2 = self.bbox_px
        if not (x1 < x2 and y1 < y2):
            raise ValidationError(
                f"track {self.track_id} frame {self.frame_index}: "
                f"degenerate bbox {self.bbox_px}",
                field="bbox_px",
            )
        if self.frame_index < 0:
            raise ValidationError(
                f"track {self.track_id}: negative frame_index", field="frame_index"
            )
        if not all(math.isfinite(c) for c in self.position_m):
            raise ValidationError(
                f"track {self.track_id} frame {self.frame_index}: "
                f"non-finite position {self.position_m}",
                field="position_m",
            )

    @property
    def bbox_center_x(self) -> float:
        return 0.5 * (self.bbox_px[0] + self.bbox_px[2])


@dataclass(frozen=True)
class Track:
    """Time-ordered detections of one pedestrian."""

    track_id: str
    detections: tuple[Detection, ...]

    def __post_init__(self):
        if not self.detections:
            raise ValidationError(
                f"track {self.track_id} has no detections", field="detections"
            )
        frames = [d.frame_index for d in self.detections]
        if len(set(frames)) != len(frames):
            raise ValidationError(
                f"track {self.track_id}: duplicate frame_index", field="frame_index"
            )
        times = [d.timestamp_s for d in self.detections]
        if any(a >= b for a, b in zip(times, times[1:])):
            raise ValidationError(
                f"track {self.track_id}: timestamps not strictly increasing",
                field="timestamp_s",
            )

    @classmethod
    def from_detections(cls, track_id: str, detections: list[Detection]) -> "Track":
        ordered = tuple(sorted(detections, key=lambda d: d.timestamp_s))
        return cls(track_id=track_id, detections=ordered)

    def position_of(self, frame_index: int) -> int:
        """Index of a frame within this track's detection list."""
        for i, d in enumerate(self.detections):
            if d.frame_index == frame_index:
                return i
        raise ValidationError(
            f"track {self.track_id} has no frame {frame_index}", field="frame_index"
        )


class MovementPattern(Enum):
    STARTED_MOTION = "started_motion"
    CONTINUED_MOTION = "continued_motion"
    LEFT_TURN = "left_turn"
    RIGHT_TURN = "right_turn"
    TRANSITION_TO_STATIONARY = "transition_to_stationary"
    REMAINED_STATIONARY = "remained_stationary"


@dataclass(frozen=True)
class TrajectoryConfig:
    """Sliding-window and threshold settings for motion analysis."""

    window_frames: int = 5
    v_stop_mps: float = 0.2
    v_move_mps: float = 0.5
    turn_threshold_deg: float = 45.0
    sustain_frames: int = 3

    def __post_init__(self):
        if self.window_frames < 2:
            raise ValidationError("window_frames must be >= 2", field="window_frames")
        if self.v_move_mps < self.v_stop_mps:
            raise ValidationError(
                "v_move_mps must be >= v_stop_mps", field="v_move_mps"
            )
        if self.sustain_frames < 1 or self.window_frames < self.sustain_frames:
            raise ValidationError(
                "need 1 <= sustain_frames <= window_frames", field="sustain_frames"
            )


@dataclass(frozen=True)
class MotionState:
    """Velocity estimates for one detection of a track."""

    frame_index: int
    raw_velocity_mps: Vec2
    smoothed_velocity_mps: Vec2
    speed_mps: float
    heading: Heading
    has_history: bool = True


def estimate_velocity(
    track: Track, frame_index: int, cfg: TrajectoryConfig | None = None
) -> Vec2:
    """Endpoint finite difference over the trailing window.

    The window spans up to cfg.window_frames most recent detections ending
    at frame_index; time deltas come from timestamps, so gaps in the frame
    sequence are handled naturally.
    """
    cfg = cfg or TrajectoryConfig()
    pos = track.position_of(frame_index)
    window = track.detections[max(0, pos - cfg.window_frames + 1): pos + 1]
    if len(window) < 2:
        raise InsufficientHistoryError(
            f"track {track.track_id}: need at least 2 detections before "
            f"frame {frame_index}"
        )
    first, last = window[0], window[-1]
    dt = last.timestamp_s - first.timestamp_s
    return (
        (last.position_m[0] - first.position_m[0]) / dt,
        (last.position_m[1] - first.position_m[1]) / dt,
    )


def smooth_velocities(
    track: Track,
    cfg: TrajectoryConfig | None = None,
    grounding: GroundingConfig | None = None,
) -> list[MotionState]:
    """Raw per-step velocities smoothed by a trailing mean.

    The raw velocity at each detection is the finite difference from the
    previous detection; the smoothed velocity averages the trailing
    cfg.window_frames raw values. The first detection has no raw velocity
    and is emitted with zero velocity and has_history=False.
    """
    cfg = cfg or TrajectoryConfig()
    grounding = grounding or GroundingConfig()
    dets = track.detections
    raws: list[Vec2] = [(0.0, 0.0)]
    for prev, cur in zip(dets, dets[1:]):
        dt = cur.timestamp_s - prev.timestamp_s
        raws.append(
            (
                (cur.position_m[0] - prev.position_m[0]) / dt,
                (cur.position_m[1] - prev.position_m[1]) / dt,
            )
        )
    states: list[MotionState] = []
    for i, det in enumerate(dets):
        if i == 0:
            states.append(
                MotionState(
                    frame_index=det.frame_index,
                    raw_velocity_mps=(0.0, 0.0),
                    smoothed_velocity_mps=(0.0, 0.0),
                    speed_mps=0.0,
                    heading=Heading.STATIONARY,
                    has_history=False,
                )
            )
            continue
        lo = max(1, i - cfg.window_frames + 1)
        vs = raws[lo: i + 1]
        sm = (
            sum(v[0] for v in vs) / len(vs),
            sum(v[1] for v in vs) / len(vs),
        )
        states.append(
            MotionState(
                frame_index=det.frame_index,
                raw_velocity_mps=raws[i],
                smoothed_velocity_mps=sm,
                speed_mps=math.hypot(*sm),
                heading=classify_heading(sm, grounding),
            )
        )
    return states


def pattern_from_states(
    states: list[MotionState], pos: int, cfg: TrajectoryConfig
) -> MovementPattern:
    """Pattern decision from precomputed MotionStates (batch-friendly)."""
    window = [
        s for s in states[max(0, pos - cfg.window_frames + 1): pos + 1]
        if s.has_history
    ]
    if len(window) < cfg.sustain_frames:
        raise InsufficientHistoryError(
            f"need {cfg.sustain_frames} velocity samples, have {len(window)}"
        )
    start, end = window[0], window[-1]
    tail = window[-cfg.sustain_frames:]

    if start.speed_mps < cfg.v_stop_mps and all(
        s.speed_mps >= cfg.v_move_mps for s in tail
    ):
        return MovementPattern.STARTED_MOTION
    if start.speed_mps >= cfg.v_move_mps and all(
        s.speed_mps < cfg.v_stop_mps for s in tail
    ):
        return MovementPattern.TRANSITION_TO_STATIONARY

    se, sn = start.smoothed_velocity_mps
    ee, en = end.smoothed_velocity_mps
    if (se, sn) != (0.0, 0.0) and (ee, en) != (0.0, 0.0):
        # Signed turn angle between start and end smoothed velocities;
        # positive cross (east x north) means counterclockwise = left.
        cross = se * en - sn * ee
        dot = se * ee + sn * en
        angle_deg = math.degrees(math.atan2(cross, dot))
        if abs(angle_deg) >= cfg.turn_threshold_deg:
            return (
                MovementPattern.LEFT_TURN
                if angle_deg > 0
                else MovementPattern.RIGHT_TURN
            )

    if all(s.speed_mps >= cfg.v_stop_mps for s in window):
        return MovementPattern.CONTINUED_MOTION
    return MovementPattern.REMAINED_STATIONARY


def classify_movement_pattern(
    track: Track,
    frame_index: int,
    cfg: TrajectoryConfig | None = None,
    grounding: GroundingConfig | None = None,
) -> MovementPattern:
    """Movement pattern at one frame.

    Rules are checked in order: started motion, transition to stationary,
    left/right turn, continued motion, remained stationary; the first
    match wins.
    """
    cfg = cfg or TrajectoryConfig()
    states = smooth_velocities(track, cfg, grounding)
    return pattern_from_states(states, track.position_of(frame_index), cfg)


@dataclass(frozen=True)
class MotionPrediction:
    predicted_heading: Heading
    pattern: MovementPattern
    phrase: str


def _prediction_phrase(pattern: MovementPattern, heading: Heading) -> str:
    word = templates.direction_word(heading)
    if pattern is MovementPattern.CONTINUED_MOTION:
        return templates.PREDICTION_CONTINUE.format(direction=word)
    if pattern is MovementPattern.STARTED_MOTION:
        return templates.PREDICTION_STARTED.format(direction=word)
    if pattern is MovementPattern.LEFT_TURN:
        return templates.PREDICTION_LEFT_TURN.format(direction=word)
    if pattern is MovementPattern.RIGHT_TURN:
        return templates.PREDICTION_RIGHT_TURN.format(direction=word)
    if pattern is MovementPattern.TRANSITION_TO_STATIONARY:
        return templates.PREDICTION_STOPPING
    return templates.PREDICTION_STATIONARY


def prediction_from_states(
    states: list[MotionState], pos: int, cfg: TrajectoryConfig
) -> MotionPrediction:
    """Prediction from precomputed MotionStates (batch-friendly)."""
    pattern = pattern_from_states(states, pos, cfg)
    current = states[pos].heading
    if pattern is MovementPattern.LEFT_TURN:
        predicted = current.rotated(-1)
    elif pattern is MovementPattern.RIGHT_TURN:
        predicted = current.rotated(+1)
    elif pattern in (
        MovementPattern.TRANSITION_TO_STATIONARY,
        MovementPattern.REMAINED_STATIONARY,
    ):
        predicted = Heading.STATIONARY
    else:
        predicted = current
    return MotionPrediction(
        predicted_heading=predicted,
        pattern=pattern,
        phrase=_prediction_phrase(pattern, predicted),
    )


def predict_motion(
    track: Track,
    frame_index: int,
    cfg: TrajectoryConfig | None = None,
    grounding: GroundingConfig | None = None,
) -> MotionPrediction:
    """Short-horizon motion prediction from the current pattern.

    Turns rotate the current heading one compass step in the turn
    direction; stops predict stationary; otherwise the heading is kept.
    """
    cfg = cfg or TrajectoryConfig()
    states = smooth_velocities(track, cfg, grounding)
    return prediction_from_states(states, track.position_of(frame_index), cfg)
