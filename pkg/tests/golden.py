"""Scripted golden trajectories and their per-frame expected labels.

Each script pairs a synthetic track with the label sequence its author
intended. Frames within the transition margin are excluded from phase
checks: the smoothing window spans `window_frames` detections and the
decision window another `window_frames`, so around a motion change at
detection c the response settles inside [c - W, c + 2W]. Event labels
(started motion, stop, turns) fire inside that margin; the checker
verifies they appear there with the right identity and never with the
wrong one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from pedvqa.config import ToolkitConfig
from pedvqa.errors import InsufficientHistoryError
from pedvqa.interaction import InteractionType, _interaction_from_state
from pedvqa.synthetic import (
    conflict_closure,
    lateral_pass_by,
    left_turn_90,
    right_turn_90,
    start_from_rest,
    stop_to_rest,
    straight_north_walk,
    west_to_east_crossing,
)
from pedvqa.trajectory import (
    Detection,
    MovementPattern,
    Track,
    pattern_from_states,
    smooth_velocities,
)

CONTINUED = MovementPattern.CONTINUED_MOTION
STATIONARY = MovementPattern.REMAINED_STATIONARY


@dataclass
class GoldenScript:
    name: str
    detections: list[Detection]
    # (first_position, scripted_pattern) phase table, in order
    pattern_phases: list[tuple[int, MovementPattern]] = field(default_factory=list)
    transitions: list[int] = field(default_factory=list)
    expected_event: MovementPattern | None = None
    forbidden_events: tuple[MovementPattern, ...] = ()
    interaction: InteractionType | None = None


def golden_scripts() -> list[GoldenScript]:
    leg = 25
    return [
        GoldenScript(
            name="straight north walk",
            detections=straight_north_walk(),
            pattern_phases=[(0, CONTINUED)],
            interaction=InteractionType.OTHER,
        ),
        GoldenScript(
            name="start from rest",
            detections=start_from_rest(rest=20, move=30),
            pattern_phases=[(0, STATIONARY), (20, CONTINUED)],
            transitions=[20],
            expected_event=MovementPattern.STARTED_MOTION,
            forbidden_events=(MovementPattern.TRANSITION_TO_STATIONARY,),
        ),
        GoldenScript(
            name="stop to rest",
            detections=stop_to_rest(move=30, rest=20),
            pattern_phases=[(0, CONTINUED), (30, STATIONARY)],
            transitions=[30],
            expected_event=MovementPattern.TRANSITION_TO_STATIONARY,
            forbidden_events=(MovementPattern.STARTED_MOTION,),
        ),
        GoldenScript(
            name="90 degree left turn",
            detections=left_turn_90(leg=leg),
            pattern_phases=[(0, CONTINUED)],
            transitions=[leg],
            expected_event=MovementPattern.LEFT_TURN,
            forbidden_events=(MovementPattern.RIGHT_TURN,),
        ),
        GoldenScript(
            name="90 degree right turn",
            detections=right_turn_90(leg=leg),
            pattern_phases=[(0, CONTINUED)],
            transitions=[leg],
            expected_event=MovementPattern.RIGHT_TURN,
            forbidden_events=(MovementPattern.LEFT_TURN,),
        ),
        GoldenScript(
            name="west to east crossing",
            detections=west_to_east_crossing(),
            pattern_phases=[(0, CONTINUED)],
            interaction=InteractionType.PATH_CROSSING_WEST_TO_EAST,
        ),
        GoldenScript(
            name="conflict closure",
            detections=conflict_closure(),
            pattern_phases=[(0, CONTINUED)],
            interaction=InteractionType.TRAJECTORY_CONFLICT,
        ),
        GoldenScript(
            name="lateral pass-by",
            detections=lateral_pass_by(),
            pattern_phases=[(0, CONTINUED)],
            interaction=InteractionType.PASS_BY,
        ),
    ]


@dataclass
class GoldenResult:
    name: str
    checked: int
    matched: int
    event_seen: bool
    forbidden_seen: bool
    interaction_checked: int
    interaction_matched: int

    @property
    def pattern_accuracy(self) -> float:
        return self.matched / self.checked if self.checked else 1.0

    @property
    def interaction_accuracy(self) -> float:
        if not self.interaction_checked:
            return 1.0
        return self.interaction_matched / self.interaction_checked


def scripted_pattern_at(script: GoldenScript, pos: int) -> MovementPattern:
    label = script.pattern_phases[0][1]
    for start, phase in script.pattern_phases:
        if pos >= start:
            label = phase
    return label


def run_script(
    script: GoldenScript, config: ToolkitConfig | None = None
) -> GoldenResult:
    config = config or ToolkitConfig()
    tcfg = config.trajectory
    track = Track.from_detections(script.detections[0].track_id, script.detections)
    states = smooth_velocities(track, tcfg, config.grounding)
    w = tcfg.window_frames

    margins = [(0 - w, 0 + 2 * w)]  # track start behaves like a transition
    margins += [(c - w, c + 2 * w) for c in script.transitions]

    def in_margin(pos: int) -> bool:
        return any(lo <= pos <= hi for lo, hi in margins)

    checked = matched = 0
    event_seen = False
    forbidden_seen = False
    interaction_checked = interaction_matched = 0

    for pos in range(len(track.detections)):
        try:
            pattern = pattern_from_states(states, pos, tcfg)
        except InsufficientHistoryError:
            continue
        if pattern is script.expected_event:
            event_seen = True
        if pattern in script.forbidden_events:
            forbidden_seen = True
        if not in_margin(pos):
            checked += 1
            if pattern is scripted_pattern_at(script, pos):
                matched += 1
        if script.interaction is not None and not in_margin(pos):
            itype = _interaction_from_state(
                track.detections[pos].position_m,
                states[pos].smoothed_velocity_mps,
                states[pos].heading,
                config.robot,
                config.interaction,
            )
            interaction_checked += 1
            if itype is script.interaction:
                interaction_matched += 1

    return GoldenResult(
        name=script.name,
        checked=checked,
        matched=matched,
        event_seen=event_seen,
        forbidden_seen=forbidden_seen,
        interaction_checked=interaction_checked,
        interaction_matched=interaction_matched,
    )
