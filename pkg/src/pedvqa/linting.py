"""Vocabulary linting for manual annotations.

Pure functions: the linter flags camera-relative motion descriptions,
known non-canonical spatial wording, and missing task sections, and where
possible suggests the canonical phrase. Warnings never block submission.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

TASK_SECTIONS = (
    "perception",
    "prediction",
    "cot_reasoning",
    "final_action",
    "explanation",
)


class LintIssueKind(Enum):
    NON_CANONICAL_SPATIAL_TERM = "non_canonical_spatial_term"
    CAMERA_RELATIVE_DESCRIPTION = "camera_relative_description"
    MISSING_TASK_SECTION = "missing_task_section"


@dataclass(frozen=True)
class LintIssue:
    span: str
    issue: LintIssueKind
    suggestion: str | None = None
    section: str | None = None


@dataclass(frozen=True)
class LintReport:
    issues: tuple[LintIssue, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.issues

    def to_dict(self) -> dict:
        return {
            "issues": [
                {
                    "span": i.span,
                    "issue": i.issue.value,
                    "suggestion": i.suggestion,
                    "section": i.section,
                }
                for i in self.issues
            ]
        }

    @classmethod
    def from_dict(cls, payload: Mapping) -> "LintReport":
        return cls(
            issues=tuple(
                LintIssue(
                    span=i["span"],
                    issue=LintIssueKind(i["issue"]),
                    suggestion=i.get("suggestion"),
                    section=i.get("section"),
                )
                for i in payload.get("issues", [])
            )
        )


# Camera-relative phrasings are ambiguous in the robot frame; a pedestrian
# approaching the camera is simply moving towards south.
_CAMERA_RELATIVE = (
    (re.compile(r"\btowards?\s+the\s+camera\b", re.I), "moving towards south"),
    (re.compile(r"\baway\s+from\s+the\s+camera\b", re.I), "moving towards north"),
    (re.compile(r"\btowards?\s+the\s+viewer\b", re.I), "moving towards south"),
    (re.compile(r"\binto\s+the\s+camera\b", re.I), "moving towards south"),
)

# Screen-space or bare-relative motion words; canonical text names a
# compass direction instead. Image-left is the robot's west.
_NON_CANONICAL = (
    (
        re.compile(
            r"\b(?:moving|walking|heading|going|running)\s+"
            r"(?:left|right|up|down|upwards?|downwards?|leftwards?|rightwards?)\b",
            re.I,
        ),
        "moving towards a compass direction, e.g. moving towards west",
    ),
    (
        re.compile(
            r"\b(?:left|right)\s+side\s+of\s+the\s+(?:image|frame|picture|screen)\b",
            re.I,
        ),
        "on the left / on the right",
    ),
    (
        re.compile(
            r"\b(?:top|bottom)\s+of\s+the\s+(?:image|frame|picture|screen)\b", re.I
        ),
        None,
    ),
    (
        re.compile(r"\bin\s+the\s+(?:foreground|background)\b", re.I),
        "a distance band, e.g. at a very close distance",
    ),
)


def lint_text(text: str, section: str | None = None) -> list[LintIssue]:
    """Lint one free-text section; returns flagged spans in order."""
    issues: list[LintIssue] = []
    for pattern, suggestion in _CAMERA_RELATIVE:
        for m in pattern.finditer(text):
            issues.append(
                LintIssue(
                    span=m.group(0),
                    issue=LintIssueKind.CAMERA_RELATIVE_DESCRIPTION,
                    suggestion=suggestion,
                    section=section,
                )
            )
    for pattern, suggestion in _NON_CANONICAL:
        for m in pattern.finditer(text):
            issues.append(
                LintIssue(
                    span=m.group(0),
                    issue=LintIssueKind.NON_CANONICAL_SPATIAL_TERM,
                    suggestion=suggestion,
                    section=section,
                )
            )
    issues.sort(key=lambda i: text.find(i.span))
    return issues


def lint_annotation(payload: Mapping[str, str]) -> LintReport:
    """Lint a five-task annotation draft.

    The report is empty exactly when all five sections are present,
    non-empty, and free of flagged spatial wording.
    """
    issues: list[LintIssue] = []
    for section in TASK_SECTIONS:
        text = payload.get(section, "")
        if not isinstance(text, str) or not text.strip():
            issues.append(
                LintIssue(
                    span="",
                    issue=LintIssueKind.MISSING_TASK_SECTION,
                    suggestion=None,
                    section=section,
                )
            )
            continue
        issues.extend(lint_text(text, section))
    return LintReport(issues=tuple(issues))
