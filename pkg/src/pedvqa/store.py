"""File-backed, append-only store for round-2 manual annotations.

Layout: one directory per scene under the store root, one JSON file per
revision (rev-00001.json, rev-00002.json, ...). Revisions are never
overwritten; the latest revision per scene wins at export. All mutations
go through a single lock, so a single service process serializes writers.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .errors import ValidationError
from .linting import LintReport, lint_annotation
from .pipeline import annotation_to_json_line
from .vqa import ConversationRecord, ManualAnnotation, QaTurn


class AnnotationStatus(Enum):
    PENDING = "pending"
    DRAFT = "draft"
    SUBMITTED = "submitted"


@dataclass(frozen=True)
class SceneBundle:
    """Everything the workbench needs to show one scene."""

    scene_id: str
    image_ref: str
    round1_turns: tuple[QaTurn, ...]
    overlays: tuple[dict, ...]
    status: AnnotationStatus


class SceneNotFound(ValidationError):
    def __init__(self, scene_id: str):
        super().__init__(f"unknown scene {scene_id!r}", field="scene_id")
        self.scene_id = scene_id


class AnnotationStore:
    """Scenes plus their append-only annotation revisions."""

    def __init__(self, root: str | Path, records: list[ConversationRecord]):
        self._root = Path(root)
        self._root.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._scenes: dict[str, ConversationRecord] = {}
        for record in records:
            if record.id in self._scenes:
                raise ValidationError(
                    f"duplicate scene id {record.id!r} in scene records",
                    field="scene_id",
                )
            self._scenes[record.id] = record

    # -- reads ---------------------------------------------------------------

    def scene_ids(self) -> list[str]:
        return sorted(self._scenes)

    def _scene_dir(self, scene_id: str) -> Path:
        return self._root / scene_id

    def _revision_files(self, scene_id: str) -> list[Path]:
        d = self._scene_dir(scene_id)
        if not d.is_dir():
            return []
        return sorted(d.glob("rev-*.json"))

    def status(self, scene_id: str) -> AnnotationStatus:
        if scene_id not in self._scenes:
            raise SceneNotFound(scene_id)
        return (
            AnnotationStatus.SUBMITTED
            if self._revision_files(scene_id)
            else AnnotationStatus.PENDING
        )

    def list_scenes(
        self, status: AnnotationStatus | None = None
    ) -> list[dict]:
        """Stable scene summaries, ordered by scene_id."""
        summaries = []
        for scene_id in self.scene_ids():
            record = self._scenes[scene_id]
            scene_status = self.status(scene_id)
            if status is not None and scene_status is not status:
                continue
            summaries.append(
                {
                    "scene_id": scene_id,
                    "image": record.image_ref,
                    "status": scene_status.value,
                    "pedestrian_count": len(record.overlays or ()),
                }
            )
        return summaries

    def get_scene(self, scene_id: str) -> SceneBundle:
        if scene_id not in self._scenes:
            raise SceneNotFound(scene_id)
        record = self._scenes[scene_id]
        return SceneBundle(
            scene_id=scene_id,
            image_ref=record.image_ref,
            round1_turns=tuple(t for t in record.turns if t.round == 1),
            overlays=tuple(record.overlays or ()),
            status=self.status(scene_id),
        )

    def latest_annotation(self, scene_id: str) -> ManualAnnotation | None:
        files = self._revision_files(scene_id)
        if not files:
            return None
        payload = json.loads(files[-1].read_text(encoding="utf-8"))
        ann = payload["annotation"]
        return ManualAnnotation(
            scene_id=ann["scene_id"],
            perception=ann["perception"],
            prediction=ann["prediction"],
            cot_reasoning=ann["cot_reasoning"],
            final_action=ann["final_action"],
            explanation=ann["explanation"],
            annotator_id=ann.get("annotator_id", ""),
            created_at=ann.get("created_at", ""),
            lint=LintReport.from_dict(payload.get("lint", {})),
        )

    # -- writes --------------------------------------------------------------

    def submit_annotation(self, scene_id: str, annotation: ManualAnnotation) -> int:
        """Persist a new revision; returns the revision id (1-based).

        Lint warnings are stored alongside but never block submission.
        """
        if scene_id not in self._scenes:
            raise SceneNotFound(scene_id)
        if annotation.scene_id != scene_id:
            annotation = ManualAnnotation(
                scene_id=scene_id,
                perception=annotation.perception,
                prediction=annotation.prediction,
                cot_reasoning=annotation.cot_reasoning,
                final_action=annotation.final_action,
                explanation=annotation.explanation,
                annotator_id=annotation.annotator_id,
                created_at=annotation.created_at,
            )
        report = lint_annotation(
            {name: getattr(annotation, name) for name in ManualAnnotation.TASK_FIELDS}
        )
        with self._lock:
            revision = len(self._revision_files(scene_id)) + 1
            scene_dir = self._scene_dir(scene_id)
            scene_dir.mkdir(parents=True, exist_ok=True)
            path = scene_dir / f"rev-{revision:05d}.json"
            payload = {
                "revision": revision,
                "annotation": {
                    name: getattr(annotation, name)
                    for name in (
                        "scene_id", "perception", "prediction", "cot_reasoning",
                        "final_action", "explanation", "annotator_id", "created_at",
                    )
                },
                "lint": report.to_dict(),
            }
            tmp = path.with_suffix(".tmp")
            tmp.write_text(
                json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False),
                encoding="utf-8",
            )
            tmp.rename(path)
        return revision

    # -- export --------------------------------------------------------------

    def export_annotations(self) -> str:
        """Latest revision per submitted scene, one JSON object per line.

        The output round-trips losslessly through
        pipeline.load_manual_annotations.
        """
        lines = []
        for scene_id in self.scene_ids():
            ann = self.latest_annotation(scene_id)
            if ann is not None:
                lines.append(annotation_to_json_line(ann))
        return "".join(line + "\n" for line in lines)
