"""End-to-end tests of the command-line interface."""

from __future__ import annotations

import json

import pytest

from pedvqa.cli import EXIT_IO, EXIT_OK, EXIT_VALIDATION, main
from pedvqa.manifest import write_manifest
from pedvqa.pipeline import annotation_to_json_line, read_records
from pedvqa.synthetic import random_walkers_manifest
from pedvqa.vqa import ManualAnnotation


@pytest.fixture()
def manifest_path(tmp_path):
    manifest = random_walkers_manifest(120, n_walkers=2, seed=5)
    path = tmp_path / "manifest.jsonl"
    write_manifest(manifest, path)
    return path


def run(*argv):
    return main([str(a) for a in argv])


class TestLabelCommand:
    def test_label_writes_frames(self, manifest_path, tmp_path, capsys):
        out = tmp_path / "labeled.jsonl"
        assert run("label", "--manifest", manifest_path, "--out", out) == EXIT_OK
        assert out.exists()
        assert "labeled" in capsys.readouterr().out

    def test_bad_manifest_exits_1(self, tmp_path, capsys):
        bad = tmp_path / "bad.jsonl"
        bad.write_text('{"dataset_root": "x", "fps": 0}\n', encoding="utf-8")
        assert run("label", "--manifest", bad, "--out", tmp_path / "o") == (
            EXIT_VALIDATION
        )
        assert "error" in capsys.readouterr().err

    def test_missing_manifest_exits_1(self, tmp_path):
        missing = tmp_path / "none.jsonl"
        code = run("label", "--manifest", missing, "--out", tmp_path / "o")
        assert code == EXIT_VALIDATION


class TestChainedPipeline:
    def test_label_balance_split_downsample_emit(
        self, manifest_path, tmp_path, capsys
    ):
        labeled = tmp_path / "labeled.jsonl"
        balanced = tmp_path / "balanced.jsonl"
        train = tmp_path / "train_frames.jsonl"
        test = tmp_path / "test_frames.jsonl"
        sampled = tmp_path / "train_sampled.jsonl"
        out_dir = tmp_path / "corpus"

        assert run("label", "--manifest", manifest_path, "--out", labeled) == 0
        assert run("balance", "--in", labeled, "--out", balanced,
                   "--seed", 1) == 0
        assert run("split", "--in", balanced, "--train-out", train,
                   "--test-out", test, "--seed", 2) == 0
        assert run("downsample", "--in", train, "--out", sampled,
                   "--ratio", 2, "--seed", 3) == 0
        assert run("emit", "--train", sampled, "--test", test,
                   "--out", out_dir, "--mode", "full") == 0

        assert (out_dir / "train.jsonl").exists()
        assert (out_dir / "test.jsonl").exists()
        assert (out_dir / "stats.json").exists()
        assert (out_dir / "run_manifest.json").exists()

        assert run("stats", "--dir", out_dir) == 0
        printed = capsys.readouterr().out
        assert "train_frames" in printed

    def test_emit_with_annotations_and_modes(self, manifest_path, tmp_path):
        labeled = tmp_path / "labeled.jsonl"
        run("label", "--manifest", manifest_path, "--out", labeled)
        first_id = json.loads(
            labeled.read_text(encoding="utf-8").splitlines()[0]
        )["frame_id"]
        ann = ManualAnnotation(
            scene_id=first_id,
            perception="A pedestrian is directly in front of the robot at a "
                       "far distance.",
            prediction="They will continue moving towards north.",
            cot_reasoning="Their course stays out of the corridor.",
            final_action="Proceed.",
            explanation="No pedestrian poses a risk of collision.",
        )
        ann_path = tmp_path / "ann.jsonl"
        ann_path.write_text(
            annotation_to_json_line(ann) + "\n", encoding="utf-8"
        )
        for mode in ("full", "pp", "r1", "r2"):
            out_dir = tmp_path / f"corpus-{mode}"
            assert run(
                "emit", "--train", labeled, "--out", out_dir,
                "--mode", mode, "--annotations", ann_path,
            ) == 0
            records = read_records(out_dir / "train.jsonl")
            by_id = {r.id: r for r in records}
            assert len(by_id[first_id].turns) == 2

    def test_downsample_bad_ratio_exits_1(self, manifest_path, tmp_path):
        labeled = tmp_path / "labeled.jsonl"
        run("label", "--manifest", manifest_path, "--out", labeled)
        code = run("downsample", "--in", labeled, "--out", tmp_path / "o",
                   "--ratio", 0)
        assert code == EXIT_VALIDATION


class TestScoreCommand:
    def test_score_prints_table(self, tmp_path, capsys):
        truth = tmp_path / "truth.jsonl"
        preds = tmp_path / "preds.jsonl"
        truth.write_text(
            json.dumps({"id": "a", "category": "direction", "text": "north"})
            + "\n",
            encoding="utf-8",
        )
        preds.write_text(
            json.dumps({"id": "a", "category": "direction", "text": "northeast"})
            + "\n",
            encoding="utf-8",
        )
        report_path = tmp_path / "report.json"
        assert run("score", "--predictions", preds, "--truth", truth,
                   "--out", report_path) == EXIT_OK
        out = capsys.readouterr().out
        assert "overall" in out
        payload = json.loads(report_path.read_text(encoding="utf-8"))
        assert payload["overall_mean"] == 0.5

    def test_config_flag_direction_only(self, tmp_path):
        cfg = tmp_path / "toolkit.cfg"
        cfg.write_text(
            "scoring.direction_only_partial_credit = true\n", encoding="utf-8"
        )
        truth = tmp_path / "truth.jsonl"
        preds = tmp_path / "preds.jsonl"
        truth.write_text(
            json.dumps({"id": "a", "category": "zone", "text": "on the left"})
            + "\n",
            encoding="utf-8",
        )
        preds.write_text(
            json.dumps(
                {"id": "a", "category": "zone", "text": "slightly to the left"}
            )
            + "\n",
            encoding="utf-8",
        )
        report_path = tmp_path / "report.json"
        assert run("score", "--predictions", preds, "--truth", truth,
                   "--config", cfg, "--out", report_path) == EXIT_OK
        payload = json.loads(report_path.read_text(encoding="utf-8"))
        assert payload["overall_mean"] == 0.0


class TestConfigFile:
    def test_custom_config_respected(self, manifest_path, tmp_path):
        cfg = tmp_path / "toolkit.cfg"
        cfg.write_text(
            "balance.max_min_ratio = 1.0\n"
            "trajectory.window_frames = 4\n",
            encoding="utf-8",
        )
        labeled = tmp_path / "labeled.jsonl"
        balanced = tmp_path / "balanced.jsonl"
        assert run("label", "--manifest", manifest_path, "--out", labeled,
                   "--config", cfg) == 0
        assert run("balance", "--in", labeled, "--out", balanced,
                   "--seed", 0, "--config", cfg) == 0
        from collections import Counter

        from pedvqa.pipeline import read_labeled_frames

        counts = Counter(
            f.dominant_heading for f in read_labeled_frames(balanced)
        )
        assert max(counts.values()) == min(counts.values())

    def test_unknown_config_key_exits_1(self, manifest_path, tmp_path):
        cfg = tmp_path / "toolkit.cfg"
        cfg.write_text("nonsense.key = 1\n", encoding="utf-8")
        code = run("label", "--manifest", manifest_path,
                   "--out", tmp_path / "o", "--config", cfg)
        assert code == EXIT_VALIDATION
