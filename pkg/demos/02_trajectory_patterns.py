"""Velocity smoothing, movement patterns, and motion prediction on
scripted tracks.

Run:  python3 demos/02_trajectory_patterns.py
"""

from pedvqa.errors import InsufficientHistoryError
from pedvqa.synthetic import left_turn_90, start_from_rest, stop_to_rest
from pedvqa.trajectory import (
    Track,
    TrajectoryConfig,
    classify_movement_pattern,
    predict_motion,
    smooth_velocities,
)

cfg = TrajectoryConfig()


def show(name, detections, marks):
    track = Track.from_detections(detections[0].track_id, detections)
    states = smooth_velocities(track, cfg)
    print(f"== {name} ==")
    for pos in marks:
        det = track.detections[pos]
        try:
            pattern = classify_movement_pattern(track, det.frame_index, cfg)
            pred = predict_motion(track, det.frame_index, cfg)
        except InsufficientHistoryError:
            print(f"  frame {det.frame_index:>3}: (insufficient history)")
            continue
        print(
            f"  frame {det.frame_index:>3}: speed={states[pos].speed_mps:4.2f} "
            f"heading={states[pos].heading.value:<10} {pattern.value:<25} "
            f"-> {pred.phrase}"
        )
    print()


show("start from rest", start_from_rest(rest=20, move=30),
     marks=[10, 22, 24, 30, 45])
show("stop to rest", stop_to_rest(move=30, rest=20),
     marks=[10, 33, 37, 45])
show("90 degree left turn", left_turn_90(leg=25),
     marks=[10, 27, 29, 40])
