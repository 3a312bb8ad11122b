"""Frame manifest ingestion and validation.

The manifest is line-delimited JSON. The first line is a header object
{"dataset_root": ..., "fps": ...}; each following line is one frame:

    {"frame_id": "f000123", "image": "images/000123.png",
     "timestamp_s": 12.3, "width": 640, "height": 480,
     "detections": [{"track_id": "7", "bbox_px": [x1, y1, x2, y2],
                     "position_m": [east, north]}]}

width/height are optional; when present, bboxes are checked against them
(and labeling requires width for angular-zone assignment). Positions are
(east, north) meters in the robot frame, ego-compensated upstream.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import ManifestError, ValidationError
from .trajectory import Detection, Track


@dataclass(frozen=True)
class FrameRecord:
    frame_id: str
    image: str
    timestamp_s: float
    detections: tuple[Detection, ...]
    width: int | None = None
    height: int | None = None


@dataclass(frozen=True)
class FrameManifest:
    dataset_root: str
    fps: float
    frames: tuple[FrameRecord, ...]


def _detection_from_payload(
    payload: dict, frame: "dict", frame_index: int
) -> Detection:
    try:
        track_id = str(payload["track_id"])
        bbox = tuple(float(v) for v in payload["bbox_px"])
        position = tuple(float(v) for v in payload["position_m"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(
            f"frame {frame.get('frame_id')!r}: malformed detection ({exc})",
            field="detections",
        )
    if len(bbox) != 4:
        raise ValidationError(
            f"frame {frame.get('frame_id')!r}: bbox_px must have 4 values",
            field="bbox_px",
        )
    if len(position) != 2:
        raise ValidationError(
            f"frame {frame.get('frame_id')!r}: position_m must have 2 values",
            field="position_m",
        )
    try:
        return Detection(
            track_id=track_id,
            frame_index=frame_index,
            timestamp_s=float(frame["timestamp_s"]),
            bbox_px=bbox,  # type: ignore[arg-type]
            position_m=position,  # type: ignore[arg-type]
        )
    except ValidationError as exc:
        raise ValidationError(
            f"frame {frame.get('frame_id')!r}: {exc}", field=exc.field
        )


def ingest_manifest(path: str | Path, *, fail_fast: bool = True) -> FrameManifest:
    """Parse and validate a manifest file.

    Violations name the frame and field concerned. With fail_fast the
    first violation raises immediately; otherwise all violations are
    collected into one ManifestError.
    """
    p = Path(path)
    try:
        lines = p.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ManifestError(f"cannot read manifest {p}: {exc}")

    if not lines:
        raise ManifestError(f"manifest {p} is empty", line=1)

    violations: list[str] = []

    def report(message: str, line: int | None = None):
        if fail_fast:
            raise ManifestError(message, line=line)
        violations.append(message)

    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise ManifestError(f"manifest line 1: invalid JSON ({exc.msg})", line=1)
    fps = header.get("fps")
    if not isinstance(fps, (int, float)) or fps <= 0:
        raise ManifestError("manifest header: fps must be positive", line=1)
    dataset_root = str(header.get("dataset_root", ""))

    frames: list[FrameRecord] = []
    seen_ids: set[str] = set()
    last_ts = -math.inf

    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            payload = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ManifestError(
                f"manifest line {lineno}: invalid JSON ({exc.msg})", line=lineno
            )
        frame_id = str(payload.get("frame_id", ""))
        if not frame_id:
            report(f"manifest line {lineno}: missing frame_id", lineno)
            continue
        if frame_id in seen_ids:
            report(f"frame {frame_id!r}: duplicate frame_id", lineno)
            continue
        seen_ids.add(frame_id)

        ts = payload.get("timestamp_s")
        if not isinstance(ts, (int, float)) or not math.isfinite(ts):
            report(f"frame {frame_id!r}: bad timestamp_s", lineno)
            continue
        if ts < last_ts:
            report(
                f"frame {frame_id!r}: timestamp_s decreases "
                f"({ts} after {last_ts})",
                lineno,
            )
            continue
        last_ts = ts

        width = payload.get("width")
        height = payload.get("height")
        frame_index = len(frames)

        detections: list[Detection] = []
        ok = True
        for det_payload in payload.get("detections", []):
            try:
                det = _detection_from_payload(det_payload, payload, frame_index)
            except ValidationError as exc:
                report(str(exc), lineno)
                ok = False
                continue
            if width is not None and height is not None:
                x1, y1, x2, y2 = det.bbox_px
                if x1 < 0 or y1 < 0 or x2 > width or y2 > height:
                    report(
                        f"frame {frame_id!r} track {det.track_id!r}: "
                        f"bbox {det.bbox_px} outside {width}x{height} image",
                        lineno,
                    )
                    ok = False
                    continue
            detections.append(det)
        if not ok and fail_fast:
            # unreachable: report() raised already
            continue

        frames.append(
            FrameRecord(
                frame_id=frame_id,
                image=str(payload.get("image", "")),
                timestamp_s=float(ts),
                detections=tuple(detections),
                width=width,
                height=height,
            )
        )

    if violations:
        raise ManifestError(
            f"manifest {p}: {len(violations)} validation error(s)",
            violations=violations,
        )
    return FrameManifest(dataset_root=dataset_root, fps=float(fps), frames=tuple(frames))


def tracks_from_manifest(manifest: FrameManifest) -> dict[str, Track]:
    """Group detections into per-pedestrian tracks, ordered by time."""
    by_track: dict[str, list[Detection]] = {}
    for frame in manifest.frames:
        for det in frame.detections:
            by_track.setdefault(det.track_id, []).append(det)
    tracks: dict[str, Track] = {}
    for track_id in sorted(by_track):
        try:
            tracks[track_id] = Track.from_detections(track_id, by_track[track_id])
        except ValidationError as exc:
            raise ManifestError(f"track {track_id!r}: {exc}")
    return tracks


def write_manifest(manifest: FrameManifest, path: str | Path) -> None:
    """Serialize a manifest back to its line-delimited form."""
    lines = [
        json.dumps(
            {"dataset_root": manifest.dataset_root, "fps": manifest.fps},
            sort_keys=True,
        )
    ]
    for frame in manifest.frames:
        payload = {
            "frame_id": frame.frame_id,
            "image": frame.image,
            "timestamp_s": frame.timestamp_s,
            "detections": [
                {
                    "track_id": d.track_id,
                    "bbox_px": list(d.bbox_px),
                    "position_m": list(d.position_m),
                }
                for d in frame.detections
            ],
        }
        if frame.width is not None:
            payload["width"] = frame.width
        if frame.height is not None:
            payload["height"] = frame.height
        lines.append(json.dumps(payload, sort_keys=True))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
