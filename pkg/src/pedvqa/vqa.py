"""Round-1 VQA rendering and conversation record assembly.

Records follow the line-delimited wire format with fields id, image,
system, conversations (list of {role, text, round}), overlays, mode;
serialization is byte-stable (sorted keys, \\n line endings).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence

from . import templates
from .errors import ValidationError
from .grounding import (
    AngularZone,
    DistanceBand,
    GroundingConfig,
    Heading,
    render_heading_phrase,
    render_position_phrase,
)
from .interaction import InteractionType, render_interaction_phrase
from .linting import LintReport, lint_annotation
from .trajectory import Detection, MovementPattern

# Overlay tint palette, assigned in this order by ascending track id.
COLOR_PALETTE = (
    "red", "blue", "green", "yellow", "orange",
    "purple", "cyan", "magenta", "brown", "pink",
)


class RecordMode(Enum):
    """Which round-1 content a corpus carries.

    FULL: perception + prediction + interaction reasoning.
    PP_ONLY: perception + prediction only.
    R_ONLY_NO_GT: reasoning question alone, no grounded facts.
    R_ONLY_WITH_GT: reasoning question with the grounded perception and
    prediction facts embedded in the question text.
    """

    FULL = "full"
    PP_ONLY = "pp"
    R_ONLY_NO_GT = "r1"
    R_ONLY_WITH_GT = "r2"


@dataclass(frozen=True)
class QaTurn:
    question: str
    answer: str
    round: int = 1

    def __post_init__(self):
        if not self.question or not self.answer:
            raise ValidationError("question and answer must be non-empty")
        if self.round not in (1, 2):
            raise ValidationError("round must be 1 or 2", field="round")


@dataclass(frozen=True)
class PedestrianFacts:
    """Per-pedestrian classifier outputs for one frame."""

    track_id: str
    bbox_px: tuple[float, float, float, float]
    zone: AngularZone
    band: DistanceBand
    heading: Heading
    pattern: MovementPattern
    predicted_heading: Heading
    prediction_phrase: str
    interaction: InteractionType


@dataclass(frozen=True)
class ManualAnnotation:
    """The human-authored five-task round-2 payload."""

    scene_id: str
    perception: str
    prediction: str
    cot_reasoning: str
    final_action: str
    explanation: str
    annotator_id: str = ""
    created_at: str = ""
    lint: LintReport | None = None

    TASK_FIELDS = ("perception", "prediction", "cot_reasoning",
                   "final_action", "explanation")

    def __post_init__(self):
        for name in self.TASK_FIELDS:
            if not getattr(self, name).strip():
                raise ValidationError(
                    f"annotation for scene {self.scene_id!r}: "
                    f"empty task field {name!r}",
                    field=name,
                )

    def with_lint(self) -> "ManualAnnotation":
        report = lint_annotation(
            {name: getattr(self, name) for name in self.TASK_FIELDS}
        )
        return ManualAnnotation(
            scene_id=self.scene_id,
            perception=self.perception,
            prediction=self.prediction,
            cot_reasoning=self.cot_reasoning,
            final_action=self.final_action,
            explanation=self.explanation,
            annotator_id=self.annotator_id,
            created_at=self.created_at,
            lint=report,
        )


@dataclass(frozen=True)
class ConversationRecord:
    id: str
    image_ref: str
    system_prompt: str
    turns: tuple[QaTurn, ...]
    mode: RecordMode
    overlays: tuple[dict, ...] | None = None

    def __post_init__(self):
        rounds = [t.round for t in self.turns]
        if not rounds or rounds[0] != 1:
            raise ValidationError("records start with a round-1 turn")
        if rounds.count(2) > 1:
            raise ValidationError("at most one round-2 turn per record")


def assign_colors(track_ids: Sequence[str]) -> dict[str, str]:
    """Deterministic, injective overlay labels for one frame.

    Colors are assigned in palette order by ascending track id; beyond the
    palette, numbered labels (#11, #12, ...) keep injectivity.
    """
    labels: dict[str, str] = {}
    for i, tid in enumerate(sorted(track_ids)):
        if i < len(COLOR_PALETTE):
            labels[tid] = COLOR_PALETTE[i]
        else:
            labels[tid] = f"#{i + 1}"
    return labels


def render_system_prompt(cfg: GroundingConfig | None = None) -> str:
    """System prompt enumerating the full canonical vocabulary."""
    return templates.render_system_prompt(cfg)


def _fact_sentences(facts: PedestrianFacts, color: str) -> tuple[str, str, str, str]:
    """The four canonical sentences for one pedestrian: position, motion,
    prediction, interaction."""
    ref = templates.reference_phrase(color)
    position = templates.POSITION_SENTENCE.format(
        subject=ref,
        position_phrase=render_position_phrase(facts.zone, facts.band),
    )
    motion = templates.MOTION_SENTENCE.format(
        heading_phrase=render_heading_phrase(facts.heading)
    )
    prediction = templates.PREDICTION_SENTENCE.format(
        prediction_phrase=facts.prediction_phrase
    )
    interaction = templates.INTERACTION_SENTENCE.format(
        interaction_phrase=render_interaction_phrase(facts.interaction)
    )
    return position, motion, prediction, interaction


def _ordered_facts(
    detections: Sequence[Detection],
    facts: Mapping[str, PedestrianFacts],
    colors: Mapping[str, str],
) -> list[tuple[PedestrianFacts, str]]:
    ordered = []
    for tid in sorted({d.track_id for d in detections}):
        if tid not in facts:
            raise ValidationError(
                f"no classification results for track {tid!r}", field="track_id"
            )
        ordered.append((facts[tid], colors[tid]))
    return ordered


def build_round1(
    detections: Sequence[Detection],
    facts: Mapping[str, PedestrianFacts],
    colors: Mapping[str, str],
    mode: RecordMode = RecordMode.FULL,
) -> list[QaTurn]:
    """Render the auto-labeled round-1 turn for one frame.

    Every detected track must have classification results; a missing one
    raises a ValidationError naming the track.
    """
    return round1_from_facts(_ordered_facts(detections, facts, colors), mode)


def round1_from_facts(
    ordered: Sequence[tuple[PedestrianFacts, str]],
    mode: RecordMode = RecordMode.FULL,
) -> list[QaTurn]:
    """Round-1 turn from (facts, color) pairs already in output order."""
    if not ordered:
        question = {
            RecordMode.FULL: templates.QUESTION_FULL,
            RecordMode.PP_ONLY: templates.QUESTION_PERCEPTION_PREDICTION,
            RecordMode.R_ONLY_NO_GT: templates.QUESTION_REASONING,
            RecordMode.R_ONLY_WITH_GT: templates.QUESTION_REASONING,
        }[mode]
        return [QaTurn(question, templates.NO_PEDESTRIANS_ANSWER, 1)]

    sentence_rows = [_fact_sentences(f, c) for f, c in ordered]

    if mode is RecordMode.FULL:
        answer = " ".join(" ".join(row) for row in sentence_rows)
        return [QaTurn(templates.QUESTION_FULL, answer, 1)]

    if mode is RecordMode.PP_ONLY:
        answer = " ".join(" ".join(row[:3]) for row in sentence_rows)
        return [QaTurn(templates.QUESTION_PERCEPTION_PREDICTION, answer, 1)]

    reasoning_answer = " ".join(
        f"{templates.reference_phrase(color)} "
        f"{render_interaction_phrase(f.interaction)}."
        for f, color in ordered
    )

    if mode is RecordMode.R_ONLY_NO_GT:
        return [QaTurn(templates.QUESTION_REASONING, reasoning_answer, 1)]

    # R_ONLY_WITH_GT: the perception/prediction facts ride in the question,
    # verbatim as they would appear in the FULL-mode answer.
    facts_text = " ".join(" ".join(row[:3]) for row in sentence_rows)
    question = templates.QUESTION_REASONING_WITH_FACTS.format(facts=facts_text)
    return [QaTurn(question, reasoning_answer, 1)]


def render_round2_answer(manual: ManualAnnotation) -> str:
    """Serialize the five tasks under their fixed headers."""
    sections = (
        manual.perception,
        manual.prediction,
        manual.cot_reasoning,
        manual.final_action,
        manual.explanation,
    )
    return "\n".join(
        f"{header} {text.strip()}"
        for header, text in zip(templates.ROUND2_SECTION_HEADERS, sections)
    )


def assemble_record(
    record_id: str,
    image_ref: str,
    round1: Sequence[QaTurn],
    manual: ManualAnnotation | None = None,
    *,
    mode: RecordMode = RecordMode.FULL,
    system_prompt: str | None = None,
    overlays: Sequence[dict] | None = None,
) -> ConversationRecord:
    """Assemble a single-round or two-round conversation record."""
    if not round1:
        raise ValidationError("round1 must be non-empty", field="round1")
    if any(t.round != 1 for t in round1):
        raise ValidationError("round1 turns must have round == 1", field="round1")
    turns = tuple(round1)
    if manual is not None:
        turns = turns + (
            QaTurn(templates.QUESTION_ROUND2, render_round2_answer(manual), 2),
        )
    return ConversationRecord(
        id=record_id,
        image_ref=image_ref,
        system_prompt=(
            system_prompt if system_prompt is not None else render_system_prompt()
        ),
        turns=turns,
        mode=mode,
        overlays=tuple(overlays) if overlays is not None else None,
    )


def record_to_dict(record: ConversationRecord) -> dict:
    conversations = []
    for t in record.turns:
        conversations.append({"role": "user", "text": t.question, "round": t.round})
        conversations.append({"role": "assistant", "text": t.answer, "round": t.round})
    return {
        "id": record.id,
        "image": record.image_ref,
        "system": record.system_prompt,
        "conversations": conversations,
        "overlays": list(record.overlays) if record.overlays is not None else None,
        "mode": record.mode.value,
    }


def record_to_json_line(record: ConversationRecord) -> str:
    return json.dumps(record_to_dict(record), sort_keys=True, ensure_ascii=False)


def record_from_dict(payload: Mapping) -> ConversationRecord:
    convs = payload["conversations"]
    if len(convs) % 2 != 0:
        raise ValidationError("conversations must alternate user/assistant")
    turns = []
    for q, a in zip(convs[::2], convs[1::2]):
        if q["role"] != "user" or a["role"] != "assistant" or q["round"] != a["round"]:
            raise ValidationError("malformed conversation pairing")
        turns.append(QaTurn(q["text"], a["text"], q["round"]))
    overlays = payload.get("overlays")
    return ConversationRecord(
        id=payload["id"],
        image_ref=payload["image"],
        system_prompt=payload["system"],
        turns=tuple(turns),
        mode=RecordMode(payload["mode"]),
        overlays=tuple(overlays) if overlays is not None else None,
    )


def record_from_json_line(line: str) -> ConversationRecord:
    return record_from_dict(json.loads(line))
