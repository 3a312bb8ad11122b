"""Tests for the annotation vocabulary linter."""

from __future__ import annotations

from pedvqa.linting import (
    LintIssueKind,
    LintReport,
    lint_annotation,
    lint_text,
)


def full_draft(**overrides):
    draft = {
        "perception": "The pedestrian in the red bounding box is directly in "
                      "front of the robot at a close distance.",
        "prediction": "They will continue moving towards west.",
        "cot_reasoning": "Their path stays clear of the robot's corridor.",
        "final_action": "Proceed at the current speed.",
        "explanation": "No pedestrian poses a risk of collision.",
    }
    draft.update(overrides)
    return draft


class TestLintAnnotation:
    def test_canonical_draft_is_clean(self):
        report = lint_annotation(full_draft())
        assert report.ok
        assert report.issues == ()

    def test_camera_relative_flagged(self):
        report = lint_annotation(
            full_draft(prediction="A person is walking towards the camera.")
        )
        kinds = {i.issue for i in report.issues}
        assert LintIssueKind.CAMERA_RELATIVE_DESCRIPTION in kinds
        flagged = [
            i for i in report.issues
            if i.issue is LintIssueKind.CAMERA_RELATIVE_DESCRIPTION
        ]
        assert flagged[0].span == "towards the camera"
        assert flagged[0].suggestion == "moving towards south"
        assert flagged[0].section == "prediction"

    def test_away_from_camera_suggests_north(self):
        issues = lint_text("he is moving away from the camera")
        assert issues[0].issue is LintIssueKind.CAMERA_RELATIVE_DESCRIPTION
        assert issues[0].suggestion == "moving towards north"

    def test_missing_section_flagged(self):
        draft = full_draft()
        del draft["explanation"]
        report = lint_annotation(draft)
        missing = [
            i for i in report.issues
            if i.issue is LintIssueKind.MISSING_TASK_SECTION
        ]
        assert len(missing) == 1
        assert missing[0].section == "explanation"

    def test_empty_section_flagged(self):
        report = lint_annotation(full_draft(final_action="   "))
        missing = [
            i for i in report.issues
            if i.issue is LintIssueKind.MISSING_TASK_SECTION
        ]
        assert missing and missing[0].section == "final_action"

    def test_screen_space_motion_flagged(self):
        report = lint_annotation(
            full_draft(perception="Someone is moving left quickly.")
        )
        kinds = {i.issue for i in report.issues}
        assert LintIssueKind.NON_CANONICAL_SPATIAL_TERM in kinds

    def test_image_side_reference_flagged(self):
        issues = lint_text("a runner on the left side of the image")
        assert issues
        assert issues[0].issue is LintIssueKind.NON_CANONICAL_SPATIAL_TERM

    def test_foreground_flagged(self):
        issues = lint_text("a group in the foreground")
        assert issues[0].issue is LintIssueKind.NON_CANONICAL_SPATIAL_TERM

    def test_turning_left_is_not_flagged(self):
        # canonical movement-pattern wording stays clean
        assert lint_text("this pedestrian is turning left") == []
        assert lint_text("they are turning right and will move towards east") == []

    def test_purity_and_determinism(self):
        draft = full_draft(prediction="walking towards the camera")
        a = lint_annotation(draft)
        b = lint_annotation(draft)
        assert a == b

    def test_report_round_trip(self):
        report = lint_annotation(full_draft(prediction="towards the camera"))
        back = LintReport.from_dict(report.to_dict())
        assert back == report
