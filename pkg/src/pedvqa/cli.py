"""Command-line interface.

Subcommands: label, balance, split, downsample, emit, stats, score,
serve. Exit codes: 0 success, 1 validation failure, 2 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .config import load_config
from .errors import ValidationError
from .evaluation import ScoreRubric, render_report_table, run_coda_benchmark
from .manifest import ingest_manifest
from .pipeline import (
    BalanceSpec,
    DatasetStats,
    SplitSpec,
    balance,
    build_records,
    downsample,
    emit_dataset,
    label_frames,
    load_manual_annotations,
    read_labeled_frames,
    split as split_frames,
    write_labeled_frames,
)
from .version import __version__
from .vqa import RecordMode

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2


def _add_config_flag(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--config", type=Path, default=None,
        help="plain-text key=value config file (defaults apply when absent)",
    )


def _mode(value: str) -> RecordMode:
    return RecordMode(value)


def cmd_label(args) -> int:
    config = load_config(args.config)
    manifest = ingest_manifest(args.manifest, fail_fast=not args.collect_errors)
    labeled, skipped = label_frames(manifest, config)
    write_labeled_frames(labeled, args.out)
    print(f"labeled {len(labeled)} frames ({skipped} skipped) -> {args.out}")
    return EXIT_OK


def cmd_balance(args) -> int:
    config = load_config(args.config)
    frames = read_labeled_frames(args.input)
    ratio = args.max_min_ratio if args.max_min_ratio else config.balance_max_min_ratio
    out = balance(frames, BalanceSpec(max_min_ratio=ratio, seed=args.seed))
    write_labeled_frames(out, args.out)
    print(f"balanced {len(frames)} -> {len(out)} frames -> {args.out}")
    return EXIT_OK


def cmd_split(args) -> int:
    config = load_config(args.config)
    frames = read_labeled_frames(args.input)
    fraction = args.train_fraction if args.train_fraction else config.train_fraction
    train, test = split_frames(
        frames, SplitSpec(train_fraction=fraction, seed=args.seed)
    )
    write_labeled_frames(train, args.train_out)
    write_labeled_frames(test, args.test_out)
    print(f"split {len(frames)} frames -> {len(train)} train / {len(test)} test")
    return EXIT_OK


def cmd_downsample(args) -> int:
    frames = read_labeled_frames(args.input)
    out = downsample(frames, args.ratio, args.seed)
    write_labeled_frames(out, args.out)
    print(f"downsampled {len(frames)} -> {len(out)} frames (ratio {args.ratio})")
    return EXIT_OK


def cmd_emit(args) -> int:
    config = load_config(args.config)
    train_frames = read_labeled_frames(args.train)
    test_frames = read_labeled_frames(args.test) if args.test else []
    annotations = {}
    if args.annotations:
        annotations = {
            a.scene_id: a for a in load_manual_annotations(args.annotations)
        }
    mode = _mode(args.mode)
    train_records = build_records(
        train_frames, config, mode, annotations, include_overlays=True
    )
    test_records = build_records(test_frames, config, mode, include_overlays=False)

    hist: dict = {}
    for frame in list(train_frames) + list(test_frames):
        for f in frame.pedestrians:
            hist[f.heading] = hist.get(f.heading, 0) + 1
    stats = DatasetStats(
        train_frames=len(train_records),
        test_frames=len(test_records),
        train_instances=sum(len(f.pedestrians) for f in train_frames),
        test_instances=sum(len(f.pedestrians) for f in test_frames),
        heading_histogram=hist,
    )
    emit_dataset(
        train_records, test_records, args.out,
        stats=stats, config=config, seeds={"seed": args.seed},
    )
    print(
        f"emitted {len(train_records)} train / {len(test_records)} test "
        f"records -> {args.out}"
    )
    return EXIT_OK


def cmd_stats(args) -> int:
    stats_path = Path(args.dir) / "stats.json"
    payload = json.loads(stats_path.read_text(encoding="utf-8"))
    width = max(len(k) for k in payload)
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, dict):
            print(f"{key:<{width}}")
            for sub, count in value.items():
                print(f"  {sub:<12} {count}")
        else:
            print(f"{key:<{width}} {value}")
    return EXIT_OK


def cmd_score(args) -> int:
    config = load_config(args.config)
    rubric = ScoreRubric(
        direction_only_partial_credit=(
            args.direction_only or config.scoring.direction_only_partial_credit
        )
    )
    report = run_coda_benchmark(args.predictions, args.truth, rubric)
    print(render_report_table(report))
    if args.out:
        Path(args.out).write_text(
            json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        print(f"report -> {args.out}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import build_store, create_app

    if args.store is None:
        raise ValidationError(
            "store path required (--store or PEDVQA_STORE)", field="store"
        )
    store = build_store(args.scenes, args.store)
    app = create_app(store, images_root=args.images_root)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pedvqa",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("label", help="classify every frame of a manifest")
    p.add_argument("--manifest", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument(
        "--collect-errors", action="store_true",
        help="report all manifest violations instead of failing fast",
    )
    _add_config_flag(p)
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("balance", help="cap dominant-heading class sizes")
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-min-ratio", type=float, default=None)
    _add_config_flag(p)
    p.set_defaults(func=cmd_balance)

    p = sub.add_parser("split", help="shuffle and split frames train/test")
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--train-out", type=Path, required=True)
    p.add_argument("--test-out", type=Path, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--train-fraction", type=float, default=None)
    _add_config_flag(p)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("downsample", help="keep ceil(N/ratio) frames")
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--ratio", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_downsample)

    p = sub.add_parser("emit", help="render conversation records and stats")
    p.add_argument("--train", type=Path, required=True)
    p.add_argument("--test", type=Path, default=None)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument(
        "--mode", choices=[m.value for m in RecordMode], default="full",
    )
    p.add_argument("--annotations", type=Path, default=None)
    p.add_argument("--seed", type=int, default=0)
    _add_config_flag(p)
    p.set_defaults(func=cmd_emit)

    p = sub.add_parser("stats", help="print stats for an emitted corpus")
    p.add_argument("--dir", type=Path, required=True)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("score", help="keyword-metric benchmark")
    p.add_argument("--predictions", type=Path, required=True)
    p.add_argument("--truth", type=Path, required=True)
    p.add_argument("--out", type=Path, default=None)
    p.add_argument(
        "--direction-only", action="store_true",
        help="partial credit for directions only",
    )
    _add_config_flag(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("serve", help="run the annotation service")
    p.add_argument("--scenes", type=Path, required=True,
                   help="corpus file of round-1 records to annotate")
    p.add_argument(
        "--store", type=Path,
        default=os.environ.get("PEDVQA_STORE"),
        help="directory for annotation revisions (or PEDVQA_STORE)",
    )
    p.add_argument("--host", default=os.environ.get("PEDVQA_HOST", "127.0.0.1"))
    p.add_argument(
        "--port", type=int, default=int(os.environ.get("PEDVQA_PORT", "8777"))
    )
    p.add_argument("--images-root", type=Path, default=None)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if getattr(exc, "violations", None):
            for violation in exc.violations:
                print(f"  - {violation}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
