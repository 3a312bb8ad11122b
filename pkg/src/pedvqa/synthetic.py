"""Synthetic tracks and manifests for tests and demos.

The data frame is the robot-anchored (east, north) plane with the robot
at the origin; the robot's nominal forward motion is modeled by the
interaction classifier, not baked into positions. Bounding boxes come
from a crude forward-camera projection, good enough to exercise the
angular-zone rules deterministically.
"""

from __future__ import annotations

import math
import random
from typing import Sequence

from .manifest import FrameManifest, FrameRecord
from .trajectory import Detection

IMAGE_WIDTH = 640
IMAGE_HEIGHT = 480
HALF_FOV_RAD = math.radians(60.0)


def project_bbox(
    position_m: tuple[float, float],
    width: int = IMAGE_WIDTH,
    height: int = IMAGE_HEIGHT,
) -> tuple[float, float, float, float]:
    """Place a pedestrian-sized box at the bearing of a robot-frame point.

    Pedestrians behind the robot are pinned to the image edge on their
    side; box size shrinks with range.
    """
    east, north = position_m
    bearing = math.atan2(east, max(north, 0.2))
    u = 0.5 + bearing / (2.0 * HALF_FOV_RAD)
    u = min(max(u, 0.02), 0.98)
    rng_m = max(math.hypot(east, north), 0.5)
    box_h = min(360.0, 220.0 / rng_m * 4.0)
    box_w = box_h * 0.4
    cx = u * width
    cy = height * 0.55
    x1 = min(max(cx - box_w / 2, 0.0), width - box_w - 1.0)
    y1 = min(max(cy - box_h / 2, 0.0), height - box_h - 1.0)
    return (x1, y1, x1 + box_w, y1 + box_h)


def piecewise_track(
    track_id: str,
    start: tuple[float, float],
    segments: Sequence[tuple[int, tuple[float, float]]],
    dt: float = 0.1,
    first_frame: int = 0,
) -> list[Detection]:
    """Integrate piecewise-constant velocities into detections.

    segments: list of (n_steps, (v_east, v_north)). The track has
    1 + sum(n_steps) detections; velocity v applies between consecutive
    detections of its segment.
    """
    positions = [start]
    for n_steps, (ve, vn) in segments:
        for _ in range(n_steps):
            e, n = positions[-1]
            positions.append((e + ve * dt, n + vn * dt))
    detections = []
    for i, pos in enumerate(positions):
        frame_index = first_frame + i
        detections.append(
            Detection(
                track_id=track_id,
                frame_index=frame_index,
                timestamp_s=frame_index * dt,
                bbox_px=project_bbox(pos),
                position_m=pos,
            )
        )
    return detections


def manifest_from_detections(
    detections: Sequence[Detection],
    fps: float = 10.0,
    dataset_root: str = "synthetic",
) -> FrameManifest:
    """Bundle detections into a frame manifest keyed by frame index."""
    by_frame: dict[int, list[Detection]] = {}
    for det in detections:
        by_frame.setdefault(det.frame_index, []).append(det)
    frames = []
    for frame_index in sorted(by_frame):
        dets = sorted(by_frame[frame_index], key=lambda d: d.track_id)
        frames.append(
            FrameRecord(
                frame_id=f"f{frame_index:06d}",
                image=f"images/f{frame_index:06d}.png",
                timestamp_s=dets[0].timestamp_s,
                detections=tuple(dets),
                width=IMAGE_WIDTH,
                height=IMAGE_HEIGHT,
            )
        )
    return FrameManifest(dataset_root=dataset_root, fps=fps, frames=tuple(frames))


# --- scripted golden trajectories -------------------------------------------
#
# Each script returns (detections, expectations) where expectations maps a
# checkable label kind to a per-frame expected phase value; event labels
# that only occur inside the transition window are listed separately.

WALK_SPEED = 1.6  # fast walk; lets start/stop events clear the thresholds


def straight_north_walk(n: int = 40, dt: float = 0.1):
    dets = piecewise_track("s1", (1.0, 4.0), [(n, (0.0, WALK_SPEED))], dt)
    return dets


def start_from_rest(rest: int = 20, move: int = 30, dt: float = 0.1):
    return piecewise_track(
        "s2", (4.0, 8.0), [(rest, (0.0, 0.0)), (move, (0.0, WALK_SPEED))], dt
    )


def stop_to_rest(move: int = 30, rest: int = 20, dt: float = 0.1):
    return piecewise_track(
        "s3", (-4.0, 20.0), [(move, (0.0, -WALK_SPEED)), (rest, (0.0, 0.0))], dt
    )


def left_turn_90(leg: int = 25, dt: float = 0.1):
    # north then west: +90 degrees counterclockwise
    return piecewise_track(
        "s4",
        (8.0, 25.0),
        [(leg, (0.0, WALK_SPEED)), (leg, (-WALK_SPEED, 0.0))],
        dt,
    )


def right_turn_90(leg: int = 25, dt: float = 0.1):
    # north then east: -90 degrees (clockwise)
    return piecewise_track(
        "s5",
        (-8.0, 25.0),
        [(leg, (0.0, WALK_SPEED)), (leg, (WALK_SPEED, 0.0))],
        dt,
    )


def west_to_east_crossing(n: int = 30, dt: float = 0.1):
    # starts west of the corridor, walks east across the robot's path ahead
    return piecewise_track("s6", (-3.5, 9.0), [(n, (1.2, 0.0))], dt)


def conflict_closure(n: int = 40, dt: float = 0.1):
    # head-on approach ending before reaching the robot
    return piecewise_track("s7", (0.0, 9.0), [(n, (0.0, -1.2))], dt)


def lateral_pass_by(n: int = 40, dt: float = 0.1):
    return piecewise_track("s8", (2.5, 10.0), [(n, (0.0, -1.2))], dt)


def random_walkers_manifest(
    n_frames: int,
    n_walkers: int = 2,
    seed: int = 0,
    dt: float = 0.1,
) -> FrameManifest:
    """A large seeded manifest of meandering walkers for pipeline tests.

    Walkers hold a heading for a few seconds, then turn or idle; every
    frame contains all walkers so tracks span the whole manifest.
    """
    rng = random.Random(seed)
    all_detections: list[Detection] = []
    for w in range(n_walkers):
        pos = (rng.uniform(-10, 10), rng.uniform(2, 18))
        segments = []
        remaining = n_frames
        while remaining > 0:
            steps = min(remaining, rng.randint(15, 50))
            if rng.random() < 0.15:
                vel = (0.0, 0.0)
            else:
                theta = rng.uniform(0, 2 * math.pi)
                speed = rng.uniform(0.8, 1.8)
                vel = (speed * math.sin(theta), speed * math.cos(theta))
            segments.append((steps, vel))
            remaining -= steps
        track = piecewise_track(f"w{w:03d}", pos, segments, dt)
        # keep walkers inside a sane arena by reflecting overflow positions
        bounded = []
        for det in track[:n_frames]:
            e, n = det.position_m
            e = max(min(e, 30.0), -30.0)
            n = max(min(n, 40.0), 0.5)
            bounded.append(
                Detection(
                    track_id=det.track_id,
                    frame_index=det.frame_index,
                    timestamp_s=det.timestamp_s,
                    bbox_px=project_bbox((e, n)),
                    position_m=(e, n),
                )
            )
        all_detections.extend(bounded)
    return manifest_from_detections(all_detections)
