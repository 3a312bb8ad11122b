"""Tests for the plain-text configuration file."""

from __future__ import annotations

import pytest

from pedvqa.config import (
    ToolkitConfig,
    config_hash,
    dump_config,
    load_config,
    parse_config_text,
)
from pedvqa.errors import ValidationError


class TestParsing:
    def test_empty_text_gives_defaults(self):
        assert parse_config_text("") == ToolkitConfig()

    def test_missing_file_gives_defaults(self, tmp_path):
        assert load_config(tmp_path / "absent.cfg") == ToolkitConfig()

    def test_none_gives_defaults(self):
        assert load_config(None) == ToolkitConfig()

    def test_comments_and_blanks_ignored(self):
        cfg = parse_config_text(
            "# a comment\n\ntrajectory.window_frames = 7\n"
        )
        assert cfg.trajectory.window_frames == 7

    def test_lists_parsed(self):
        cfg = parse_config_text("grounding.band_edges_m = 2, 4, 8, 16\n")
        assert cfg.grounding.band_edges_m == (2.0, 4.0, 8.0, 16.0)

    def test_unknown_key_rejected(self):
        with pytest.raises(ValidationError) as ei:
            parse_config_text("typo.key = 3\n")
        assert "typo.key" in str(ei.value)

    def test_bad_value_rejected(self):
        with pytest.raises(ValidationError):
            parse_config_text("trajectory.window_frames = many\n")

    def test_invalid_combination_rejected(self):
        with pytest.raises(ValidationError):
            parse_config_text(
                "trajectory.v_stop_mps = 0.9\ntrajectory.v_move_mps = 0.2\n"
            )

    def test_bool_values(self):
        cfg = parse_config_text("scoring.direction_only_partial_credit = yes\n")
        assert cfg.scoring.direction_only_partial_credit is True


class TestRoundTrip:
    def test_dump_then_parse_is_identity(self):
        cfg = parse_config_text(
            "grounding.stationary_speed_mps = 0.25\n"
            "robot.forward_speed_mps = 1.2\n"
            "balance.max_min_ratio = 2.5\n"
        )
        assert parse_config_text(dump_config(cfg)) == cfg

    def test_hash_stable_and_sensitive(self):
        a = ToolkitConfig()
        b = parse_config_text("robot.forward_speed_mps = 1.5\n")
        assert config_hash(a) == config_hash(ToolkitConfig())
        assert config_hash(a) != config_hash(b)
