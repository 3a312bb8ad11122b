"""Corpus pipeline: label, balance, split, downsample, emit.

Every stage is deterministic given its seed, so a full run from the same
manifest, config, and seeds is byte-identical. Frames are the unit of
balancing and splitting; conversation records are generated after the
split so no image leaks across it.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from . import templates
from .config import ToolkitConfig, config_hash
from .errors import (
    InsufficientHistoryError,
    ManifestError,
    ValidationError,
)
from .grounding import (
    COMPASS_ORDER,
    Heading,
    classify_angular_zone,
    classify_distance_band,
)
from .interaction import _interaction_from_state
from .manifest import FrameManifest, FrameRecord, ingest_manifest, tracks_from_manifest
from .trajectory import (
    MovementPattern,
    pattern_from_states,
    prediction_from_states,
    smooth_velocities,
)
from .version import __version__
from .vqa import (
    ConversationRecord,
    ManualAnnotation,
    PedestrianFacts,
    RecordMode,
    assign_colors,
    assemble_record,
    record_from_json_line,
    record_to_json_line,
    render_system_prompt,
    round1_from_facts,
)

HEADING_CLASS_ORDER: tuple[Heading, ...] = COMPASS_ORDER + (Heading.STATIONARY,)


@dataclass(frozen=True)
class BalanceSpec:
    max_min_ratio: float = 3.0
    seed: int = 0

    def __post_init__(self):
        if self.max_min_ratio < 1.0:
            raise ValidationError("max_min_ratio must be >= 1", field="max_min_ratio")


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.9
    seed: int = 0

    def __post_init__(self):
        if not (0.0 < self.train_fraction < 1.0):
            raise ValidationError(
                "train_fraction must be in (0, 1)", field="train_fraction"
            )


@dataclass(frozen=True)
class LabeledFrame:
    """One frame with per-pedestrian classifier outputs attached."""

    frame_id: str
    image: str
    timestamp_s: float
    width: int
    height: int
    dominant_heading: Heading
    pedestrians: tuple[PedestrianFacts, ...]
    colors: dict[str, str] = field(default_factory=dict)


@dataclass
class DatasetStats:
    train_frames: int = 0
    test_frames: int = 0
    train_instances: int = 0
    test_instances: int = 0
    heading_histogram: dict[Heading, int] = field(default_factory=dict)
    skipped_frames: int = 0

    def to_dict(self) -> dict:
        return {
            "train_frames": self.train_frames,
            "test_frames": self.test_frames,
            "train_instances": self.train_instances,
            "test_instances": self.test_instances,
            "heading_histogram": {
                h.value: self.heading_histogram.get(h, 0)
                for h in HEADING_CLASS_ORDER
                if self.heading_histogram.get(h, 0)
            },
            "skipped_frames": self.skipped_frames,
        }


def dominant_heading(facts: Sequence[PedestrianFacts]) -> Heading:
    """Most frequent non-stationary pedestrian heading in a frame.

    Ties break clockwise-first (N before NE before E ...). Frames whose
    pedestrians are all stationary or absent fall into the STATIONARY
    class so they form their own balancing stratum.
    """
    counts: dict[Heading, int] = {}
    for f in facts:
        if f.heading.is_compass:
            counts[f.heading] = counts.get(f.heading, 0) + 1
    if not counts:
        return Heading.STATIONARY
    best = max(counts.values())
    for h in COMPASS_ORDER:
        if counts.get(h) == best:
            return h
    raise AssertionError("unreachable")


def label_frames(
    manifest: FrameManifest, config: ToolkitConfig | None = None
) -> tuple[list[LabeledFrame], int]:
    """Run all classifiers over a manifest.

    Returns (labeled frames, skipped frame count). A frame is skipped when
    any of its pedestrians lacks the velocity history needed for pattern
    classification; empty frames are kept and labeled as such.
    """
    config = config or ToolkitConfig()
    tracks = tracks_from_manifest(manifest)
    states = {
        tid: smooth_velocities(t, config.trajectory, config.grounding)
        for tid, t in tracks.items()
    }
    positions = {
        tid: {d.frame_index: i for i, d in enumerate(t.detections)}
        for tid, t in tracks.items()
    }

    labeled: list[LabeledFrame] = []
    skipped = 0
    for frame_pos, frame in enumerate(manifest.frames):
        if frame.detections and frame.width is None:
            raise ValidationError(
                f"frame {frame.frame_id!r}: width required to assign "
                f"angular zones",
                field="width",
            )
        facts: list[PedestrianFacts] = []
        ok = True
        for det in frame.detections:
            track_states = states[det.track_id]
            pos = positions[det.track_id][det.frame_index]
            try:
                pattern = pattern_from_states(track_states, pos, config.trajectory)
            except InsufficientHistoryError:
                ok = False
                break
            prediction = prediction_from_states(track_states, pos, config.trajectory)
            state = track_states[pos]
            facts.append(
                PedestrianFacts(
                    track_id=det.track_id,
                    bbox_px=det.bbox_px,
                    zone=classify_angular_zone(
                        det.bbox_center_x, float(frame.width), config.grounding
                    ),
                    band=classify_distance_band(
                        math.hypot(*det.position_m), config.grounding
                    ),
                    heading=state.heading,
                    pattern=pattern,
                    predicted_heading=prediction.predicted_heading,
                    prediction_phrase=prediction.phrase,
                    interaction=_interaction_from_state(
                        det.position_m,
                        state.smoothed_velocity_mps,
                        state.heading,
                        config.robot,
                        config.interaction,
                    ),
                )
            )
        if not ok:
            skipped += 1
            continue
        facts.sort(key=lambda f: f.track_id)
        labeled.append(
            LabeledFrame(
                frame_id=frame.frame_id,
                image=frame.image,
                timestamp_s=frame.timestamp_s,
                width=frame.width or 0,
                height=frame.height or 0,
                dominant_heading=dominant_heading(facts),
                pedestrians=tuple(facts),
                colors=assign_colors([f.track_id for f in facts]),
            )
        )
    return labeled, skipped


def balance(
    frames: Sequence[LabeledFrame], spec: BalanceSpec | None = None
) -> list[LabeledFrame]:
    """Cap each dominant-heading class at ratio x the smallest class.

    Stratified random downsampling, deterministic under the seed; the
    smallest class is never reduced and classes already under the cap are
    untouched. Empty input returns empty output.
    """
    spec = spec or BalanceSpec()
    if not frames:
        return []
    groups: dict[Heading, list[int]] = {}
    for i, f in enumerate(frames):
        groups.setdefault(f.dominant_heading, []).append(i)
    min_count = min(len(v) for v in groups.values())
    cap = math.floor(spec.max_min_ratio * min_count)
    rng = random.Random(spec.seed)
    keep: list[int] = []
    for heading in HEADING_CLASS_ORDER:
        idxs = groups.get(heading)
        if not idxs:
            continue
        if len(idxs) <= cap:
            keep.extend(idxs)
        else:
            keep.extend(rng.sample(idxs, cap))
    return [frames[i] for i in sorted(keep)]


def split(
    frames: Sequence[LabeledFrame], spec: SplitSpec | None = None
) -> tuple[list[LabeledFrame], list[LabeledFrame]]:
    """Seeded shuffle, then prefix split at round(N * train_fraction).

    Both sides come back in the original frame order; the split is
    disjoint and exhaustive.
    """
    spec = spec or SplitSpec()
    if len(frames) < 2:
        raise ValidationError("need at least 2 frames to split", field="frames")
    indices = list(range(len(frames)))
    rng = random.Random(spec.seed)
    rng.shuffle(indices)
    n_train = math.floor(len(frames) * spec.train_fraction + 0.5)
    train_idx = sorted(indices[:n_train])
    test_idx = sorted(indices[n_train:])
    return [frames[i] for i in train_idx], [frames[i] for i in test_idx]


def downsample(records: Sequence, ratio: int, seed: int = 0) -> list:
    """Keep ceil(N / ratio) items by seeded uniform sampling.

    Ratio 1 is the identity. Order of survivors follows the input.
    """
    if not isinstance(ratio, int) or ratio < 1:
        raise ValidationError("ratio must be an integer >= 1", field="ratio")
    items = list(records)
    if ratio == 1 or not items:
        return items
    k = math.ceil(len(items) / ratio)
    rng = random.Random(seed)
    keep = sorted(rng.sample(range(len(items)), k))
    return [items[i] for i in keep]


def build_records(
    frames: Sequence[LabeledFrame],
    config: ToolkitConfig | None = None,
    mode: RecordMode = RecordMode.FULL,
    annotations: Mapping[str, ManualAnnotation] | None = None,
    *,
    include_overlays: bool = True,
) -> list[ConversationRecord]:
    """Render conversation records for labeled frames, in frame order.

    A frame whose id has a manual annotation becomes a two-round record;
    overlays (bbox + color per track) are attached only for training data.
    """
    config = config or ToolkitConfig()
    annotations = annotations or {}
    system_prompt = render_system_prompt(config.grounding)
    records = []
    for frame in frames:
        ordered = [(f, frame.colors[f.track_id]) for f in frame.pedestrians]
        turns = round1_from_facts(ordered, mode)
        overlays = None
        if include_overlays:
            overlays = [
                {
                    "track_id": f.track_id,
                    "bbox": list(f.bbox_px),
                    "color": frame.colors[f.track_id],
                }
                for f in frame.pedestrians
            ]
        records.append(
            assemble_record(
                record_id=frame.frame_id,
                image_ref=frame.image,
                round1=turns,
                manual=annotations.get(frame.frame_id),
                mode=mode,
                system_prompt=system_prompt,
                overlays=overlays,
            )
        )
    return records


# --- annotation file I/O -----------------------------------------------------

ANNOTATION_FIELDS = (
    "scene_id", "perception", "prediction", "cot_reasoning",
    "final_action", "explanation", "annotator_id", "created_at",
)


def annotation_to_json_line(ann: ManualAnnotation) -> str:
    payload = {name: getattr(ann, name) for name in ANNOTATION_FIELDS}
    return json.dumps(payload, sort_keys=True, ensure_ascii=False)


def load_manual_annotations(path: str | Path) -> list[ManualAnnotation]:
    """Load and validate an annotation file (one JSON object per line).

    Duplicated scene_ids are rejected; a missing or empty task field is
    rejected naming the scene and field. Each annotation comes back with
    its vocabulary lint report attached.
    """
    p = Path(path)
    try:
        lines = p.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ManifestError(f"cannot read annotations {p}: {exc}")
    annotations: list[ManualAnnotation] = []
    seen: set[str] = set()
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            payload = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ManifestError(
                f"annotations line {lineno}: invalid JSON ({exc.msg})", line=lineno
            )
        scene_id = str(payload.get("scene_id", ""))
        if not scene_id:
            raise ManifestError(
                f"annotations line {lineno}: missing scene_id", line=lineno
            )
        if scene_id in seen:
            raise ManifestError(
                f"annotations line {lineno}: duplicate scene_id {scene_id!r}",
                line=lineno,
            )
        seen.add(scene_id)
        for name in ManualAnnotation.TASK_FIELDS:
            if not str(payload.get(name, "")).strip():
                raise ManifestError(
                    f"annotation for scene {scene_id!r}: missing task "
                    f"field {name!r}",
                    line=lineno,
                )
        annotations.append(
            ManualAnnotation(
                scene_id=scene_id,
                perception=payload["perception"],
                prediction=payload["prediction"],
                cot_reasoning=payload["cot_reasoning"],
                final_action=payload["final_action"],
                explanation=payload["explanation"],
                annotator_id=str(payload.get("annotator_id", "")),
                created_at=str(payload.get("created_at", "")),
            ).with_lint()
        )
    return annotations


# --- labeled-frame file I/O ---------------------------------------------------

def labeled_frame_to_dict(frame: LabeledFrame) -> dict:
    return {
        "frame_id": frame.frame_id,
        "image": frame.image,
        "timestamp_s": frame.timestamp_s,
        "width": frame.width,
        "height": frame.height,
        "dominant_heading": frame.dominant_heading.value,
        "pedestrians": [
            {
                "track_id": f.track_id,
                "bbox_px": list(f.bbox_px),
                "color": frame.colors[f.track_id],
                "zone": f.zone.value,
                "band": f.band.value,
                "heading": f.heading.value,
                "pattern": f.pattern.value,
                "predicted_heading": f.predicted_heading.value,
                "prediction_phrase": f.prediction_phrase,
                "interaction": f.interaction.value,
            }
            for f in frame.pedestrians
        ],
    }


def labeled_frame_from_dict(payload: Mapping) -> LabeledFrame:
    from .grounding import AngularZone, DistanceBand
    from .interaction import InteractionType

    facts = tuple(
        PedestrianFacts(
            track_id=p["track_id"],
            bbox_px=tuple(p["bbox_px"]),
            zone=AngularZone(p["zone"]),
            band=DistanceBand(p["band"]),
            heading=Heading(p["heading"]),
            pattern=MovementPattern(p["pattern"]),
            predicted_heading=Heading(p["predicted_heading"]),
            prediction_phrase=p["prediction_phrase"],
            interaction=InteractionType(p["interaction"]),
        )
        for p in payload["pedestrians"]
    )
    return LabeledFrame(
        frame_id=payload["frame_id"],
        image=payload["image"],
        timestamp_s=payload["timestamp_s"],
        width=payload["width"],
        height=payload["height"],
        dominant_heading=Heading(payload["dominant_heading"]),
        pedestrians=facts,
        colors={p["track_id"]: p["color"] for p in payload["pedestrians"]},
    )


def write_labeled_frames(frames: Sequence[LabeledFrame], path: str | Path) -> None:
    text = "".join(
        json.dumps(labeled_frame_to_dict(f), sort_keys=True, ensure_ascii=False) + "\n"
        for f in frames
    )
    Path(path).write_text(text, encoding="utf-8")


def read_labeled_frames(path: str | Path) -> list[LabeledFrame]:
    frames = []
    for lineno, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip():
            continue
        try:
            frames.append(labeled_frame_from_dict(json.loads(line)))
        except (json.JSONDecodeError, KeyError, ValueError) as exc:
            raise ManifestError(
                f"labeled frames line {lineno}: {exc}", line=lineno
            )
    return frames


# --- emission ------------------------------------------------------------------

def _strip_overlays(record: ConversationRecord) -> ConversationRecord:
    if record.overlays is None:
        return record
    return ConversationRecord(
        id=record.id,
        image_ref=record.image_ref,
        system_prompt=record.system_prompt,
        turns=record.turns,
        mode=record.mode,
        overlays=None,
    )


def write_records(records: Sequence[ConversationRecord], path: str | Path) -> None:
    text = "".join(record_to_json_line(r) + "\n" for r in records)
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def read_records(path: str | Path) -> list[ConversationRecord]:
    return [
        record_from_json_line(line)
        for line in Path(path).read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]


def emit_dataset(
    train_records: Sequence[ConversationRecord],
    test_records: Sequence[ConversationRecord],
    out_dir: str | Path,
    *,
    stats: DatasetStats,
    config: ToolkitConfig | None = None,
    seeds: Mapping[str, int] | None = None,
) -> DatasetStats:
    """Write train/test corpora, stats, and the reproducibility manifest.

    Overlays are kept on training records and stripped from test records.
    Outputs are byte-identical across re-runs with the same inputs.
    """
    config = config or ToolkitConfig()
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        write_records(train_records, out / "train.jsonl")
        write_records(
            [_strip_overlays(r) for r in test_records], out / "test.jsonl"
        )
        (out / "stats.json").write_text(
            json.dumps(stats.to_dict(), indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        run_manifest = {
            "config_hash": config_hash(config),
            "seeds": dict(sorted((seeds or {}).items())),
            "tool_version": __version__,
            "template_version": templates.TEMPLATE_VERSION,
            "train_records": len(train_records),
            "test_records": len(test_records),
        }
        (out / "run_manifest.json").write_text(
            json.dumps(run_manifest, indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
    except OSError as exc:
        raise OSError(f"failed writing dataset to {out}: {exc}") from exc
    return stats


def _heading_histogram(frames: Sequence[LabeledFrame]) -> dict[Heading, int]:
    hist: dict[Heading, int] = {}
    for frame in frames:
        for f in frame.pedestrians:
            hist[f.heading] = hist.get(f.heading, 0) + 1
    return hist


@dataclass(frozen=True)
class PipelineSeeds:
    balance: int = 0
    split: int = 1
    downsample: int = 2

    def as_dict(self) -> dict[str, int]:
        return {
            "balance": self.balance,
            "split": self.split,
            "downsample": self.downsample,
        }


def run_pipeline(
    manifest: FrameManifest | str | Path,
    out_dir: str | Path,
    *,
    config: ToolkitConfig | None = None,
    mode: RecordMode = RecordMode.FULL,
    seeds: PipelineSeeds | None = None,
    downsample_ratio: int = 1,
    annotations: Sequence[ManualAnnotation] | None = None,
) -> DatasetStats:
    """Full corpus run: ingest, label, balance, split, downsample, emit.

    Downsampling applies to auto-only training records; records carrying a
    manual annotation are always kept. Annotations attach to training-side
    frames by scene_id == frame_id.
    """
    config = config or ToolkitConfig()
    seeds = seeds or PipelineSeeds()
    if not isinstance(manifest, FrameManifest):
        manifest = ingest_manifest(manifest)

    labeled, skipped = label_frames(manifest, config)
    balanced = balance(
        labeled, BalanceSpec(config.balance_max_min_ratio, seeds.balance)
    )
    train_frames, test_frames = split(
        balanced, SplitSpec(config.train_fraction, seeds.split)
    )

    by_scene = {a.scene_id: a for a in (annotations or [])}
    train_records = build_records(
        train_frames, config, mode, by_scene, include_overlays=True
    )
    test_records = build_records(
        test_frames, config, mode, include_overlays=False
    )

    auto = [r for r in train_records if len(r.turns) == 1]
    annotated = [r for r in train_records if len(r.turns) > 1]
    kept = downsample(auto, downsample_ratio, seeds.downsample)
    kept_ids = {r.id for r in kept} | {r.id for r in annotated}
    train_final = [r for r in train_records if r.id in kept_ids]

    stats = DatasetStats(
        train_frames=len(train_final),
        test_frames=len(test_records),
        train_instances=sum(
            len(f.pedestrians)
            for f in train_frames
            if f.frame_id in kept_ids
        ),
        test_instances=sum(len(f.pedestrians) for f in test_frames),
        heading_histogram=_heading_histogram(
            [f for f in train_frames if f.frame_id in kept_ids] + list(test_frames)
        ),
        skipped_frames=skipped,
    )
    return emit_dataset(
        train_final,
        test_records,
        out_dir,
        stats=stats,
        config=config,
        seeds=dict(seeds.as_dict(), downsample_ratio=downsample_ratio),
    )
