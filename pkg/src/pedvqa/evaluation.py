"""Keyword-based scoring of model text against canonical labels.

Extraction is a case-insensitive longest-match search over the canonical
vocabulary (compass abbreviations match uppercase-only so possessive
"'s" and ordinary prose never read as headings). Scoring awards 1.0 for
the exact label, 0.5 for an adjacent one, else 0.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import ValidationError
from .grounding import (
    BAND_ORDER,
    COMPASS_ORDER,
    ZONE_ORDER,
    AngularZone,
    DistanceBand,
    Heading,
    SpatialDescription,
    canonical_vocabulary,
)

CATEGORIES = ("direction", "zone", "distance")

Label = AngularZone | DistanceBand | Heading


@dataclass(frozen=True)
class Match:
    category: str
    label: Label
    text: str
    start: int
    end: int


@dataclass(frozen=True)
class ParsedAnswer:
    heading: Heading | None = None
    zone: AngularZone | None = None
    band: DistanceBand | None = None
    matches: tuple[Match, ...] = ()
    ambiguous: bool = False


def _is_abbreviation(keyword: str) -> bool:
    return keyword.isupper() and len(keyword) <= 2


def _compiled_keywords():
    compiled = []
    for category, terms in canonical_vocabulary().items():
        for term in terms:
            for kw in term.keywords:
                flags = 0 if _is_abbreviation(kw) else re.IGNORECASE
                pattern = re.compile(rf"\b{re.escape(kw)}\b", flags)
                compiled.append((pattern, len(kw), category, term.label, kw))
    # longest keywords first so they claim their span before substrings
    compiled.sort(key=lambda item: -item[1])
    return compiled


_KEYWORDS = _compiled_keywords()


def extract_labels(text: str) -> ParsedAnswer:
    """Find canonical labels in free text.

    Longer keywords suppress overlapping shorter ones ("northeast" never
    also yields "north"). Per category: no match leaves the field absent;
    two or more distinct labels set the ambiguous flag and leave the
    field absent.
    """
    claimed: list[tuple[int, int]] = []
    matches: list[Match] = []
    for pattern, _, category, label, kw in _KEYWORDS:
        for m in pattern.finditer(text):
            span = (m.start(), m.end())
            if any(span[0] < c[1] and c[0] < span[1] for c in claimed):
                continue
            claimed.append(span)
            matches.append(Match(category, label, m.group(0), span[0], span[1]))
    matches.sort(key=lambda m: m.start)

    resolved: dict[str, Label | None] = {}
    ambiguous = False
    for category in CATEGORIES:
        labels = {m.label for m in matches if m.category == category}
        if len(labels) == 1:
            resolved[category] = labels.pop()
        else:
            resolved[category] = None
            if len(labels) >= 2:
                ambiguous = True

    return ParsedAnswer(
        heading=resolved["direction"],  # type: ignore[arg-type]
        zone=resolved["zone"],  # type: ignore[arg-type]
        band=resolved["distance"],  # type: ignore[arg-type]
        matches=tuple(matches),
        ambiguous=ambiguous,
    )


@dataclass(frozen=True)
class ScoreRubric:
    """Points and adjacency for the keyword metric.

    Headings are adjacent to their 45 degree neighbours (stationary to
    nothing); zones and bands to their order neighbours. Partial credit
    for zones and bands can be disabled, restricting the 0.5 rule to
    directions.
    """

    exact_points: float = 1.0
    adjacent_points: float = 0.5
    direction_only_partial_credit: bool = False

    def adjacent(self, category: str, a: Label, b: Label) -> bool:
        if a == b:
            return False
        if category == "direction":
            if not (isinstance(a, Heading) and isinstance(b, Heading)):
                return False
            if not (a.is_compass and b.is_compass):
                return False
            diff = (a.compass_index - b.compass_index) % 8
            return diff in (1, 7)
        if self.direction_only_partial_credit:
            return False
        if category == "zone":
            order = ZONE_ORDER
        elif category == "distance":
            order = BAND_ORDER
        else:
            raise ValidationError(f"unknown category {category!r}", field="category")
        return abs(order.index(a) - order.index(b)) == 1  # type: ignore[arg-type]


def _truth_label(truth: SpatialDescription, category: str) -> Label:
    if category == "direction":
        return truth.heading
    if category == "zone":
        return truth.zone
    if category == "distance":
        return truth.band
    raise ValidationError(f"unknown category {category!r}", field="category")


def _predicted_label(parsed: ParsedAnswer, category: str) -> Label | None:
    return {
        "direction": parsed.heading,
        "zone": parsed.zone,
        "distance": parsed.band,
    }[category]


def score_label(
    prediction_text: str,
    truth_label: Label,
    rubric: ScoreRubric,
    category: str,
) -> float:
    """Points for one prediction: exact 1.0, adjacent 0.5, else 0.

    Absent or ambiguous predictions score 0.
    """
    parsed = extract_labels(prediction_text)
    predicted = _predicted_label(parsed, category)
    if predicted is None:
        return 0.0
    if predicted == truth_label:
        return rubric.exact_points
    if rubric.adjacent(category, predicted, truth_label):
        return rubric.adjacent_points
    return 0.0


def score_instance(
    prediction_text: str,
    truth: SpatialDescription,
    rubric: ScoreRubric,
    category: str,
) -> float:
    """Score one prediction against the grounded truth for a category."""
    return score_label(prediction_text, _truth_label(truth, category), rubric, category)


@dataclass
class BenchmarkReport:
    per_instance: list[dict] = field(default_factory=list)
    per_category_mean: dict[str, float] = field(default_factory=dict)
    overall_mean: float = 0.0

    def to_dict(self) -> dict:
        return {
            "per_instance": self.per_instance,
            "per_category_mean": self.per_category_mean,
            "overall_mean": self.overall_mean,
        }


def _load_labeled_lines(path: str | Path) -> list[dict]:
    entries = []
    for lineno, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip():
            continue
        try:
            payload = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path} line {lineno}: invalid JSON ({exc.msg})")
        for key in ("id", "category", "text"):
            if key not in payload:
                raise ValidationError(f"{path} line {lineno}: missing {key!r}")
        if payload["category"] not in CATEGORIES:
            raise ValidationError(
                f"{path} line {lineno}: unknown category {payload['category']!r}"
            )
        entries.append(payload)
    return entries


def run_coda_benchmark(
    predictions_file: str | Path,
    ground_truth_file: str | Path,
    rubric: ScoreRubric | None = None,
) -> BenchmarkReport:
    """Score a predictions file against ground truth.

    Both files hold one {id, category, text} object per line. Missing
    predictions score 0 and still count; prediction ids absent from the
    ground truth are an error.
    """
    rubric = rubric or ScoreRubric()
    truths = _load_labeled_lines(ground_truth_file)
    preds = _load_labeled_lines(predictions_file)

    truth_by_id: dict[str, dict] = {}
    for t in truths:
        if t["id"] in truth_by_id:
            raise ValidationError(f"duplicate ground-truth id {t['id']!r}")
        truth_by_id[t["id"]] = t

    unknown = sorted({p["id"] for p in preds} - set(truth_by_id))
    if unknown:
        raise ValidationError(
            f"predictions reference unknown ids: {', '.join(unknown)}"
        )

    pred_by_id = {p["id"]: p for p in preds}
    report = BenchmarkReport()
    totals: dict[str, list[float]] = {}
    for tid in sorted(truth_by_id):
        truth = truth_by_id[tid]
        category = truth["category"]
        truth_parsed = extract_labels(truth["text"])
        truth_label = _predicted_label(truth_parsed, category)
        if truth_label is None:
            raise ValidationError(
                f"ground truth {tid!r} does not contain exactly one "
                f"{category} label"
            )
        pred = pred_by_id.get(tid)
        points = (
            score_label(pred["text"], truth_label, rubric, category)
            if pred is not None
            else 0.0
        )
        report.per_instance.append(
            {"id": tid, "category": category, "points": points}
        )
        totals.setdefault(category, []).append(points)

    for category, points in sorted(totals.items()):
        report.per_category_mean[category] = sum(points) / len(points)
    all_points = [e["points"] for e in report.per_instance]
    report.overall_mean = sum(all_points) / len(all_points) if all_points else 0.0
    return report


def render_report_table(report: BenchmarkReport) -> str:
    """Human-readable summary table."""
    lines = [f"{'category':<12} {'instances':>9} {'mean':>7}"]
    for category, mean in sorted(report.per_category_mean.items()):
        n = sum(1 for e in report.per_instance if e["category"] == category)
        lines.append(f"{category:<12} {n:>9} {mean:>7.3f}")
    lines.append(
        f"{'overall':<12} {len(report.per_instance):>9} "
        f"{report.overall_mean:>7.3f}"
    )
    return "\n".join(lines)
