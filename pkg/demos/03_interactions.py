"""Closest point of approach and interaction classification.

Run:  python3 demos/03_interactions.py
"""

from pedvqa.interaction import (
    InteractionConfig,
    RobotMotionModel,
    classify_interaction,
    closest_approach,
    render_interaction_phrase,
)
from pedvqa.synthetic import (
    conflict_closure,
    lateral_pass_by,
    west_to_east_crossing,
)
from pedvqa.trajectory import Track, TrajectoryConfig

robot = RobotMotionModel()
icfg = InteractionConfig()
tcfg = TrajectoryConfig()

print("== closest point of approach (relative motion) ==")
for p, v in [((0, 5), (0, -1)), ((3, 0), (0, 1)), ((2, 4), (-0.5, -1))]:
    cpa = closest_approach(p, v, icfg.horizon_s)
    print(
        f"  p={p} v={v}: t*={cpa.t_star_s:4.2f}s  "
        f"min distance={cpa.min_distance_m:5.2f} m"
    )

print("\n== interaction classification on scripted walkers ==")
for name, dets in [
    ("west-to-east crossing", west_to_east_crossing()),
    ("head-on conflict", conflict_closure()),
    ("lateral pass-by", lateral_pass_by()),
]:
    track = Track.from_detections(dets[0].track_id, dets)
    frame = track.detections[len(track.detections) // 2].frame_index
    itype = classify_interaction(track, frame, robot, icfg, tcfg)
    print(f"  {name:<24} -> {itype.value:<28} "
          f'("{render_interaction_phrase(itype)}")')
