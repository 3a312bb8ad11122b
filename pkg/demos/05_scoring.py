"""Keyword-metric scoring of model answers, including partial credit.

Run:  python3 demos/05_scoring.py
"""

import json
from pathlib import Path
from tempfile import TemporaryDirectory

from pedvqa.evaluation import (
    ScoreRubric,
    extract_labels,
    render_report_table,
    run_coda_benchmark,
)

print("== label extraction from free text ==")
for text in [
    "The pedestrian is moving towards northeast.",
    "slightly to the right of the robot at a very close distance",
    "it could be north or maybe south",
]:
    parsed = extract_labels(text)
    print(f"  {text!r}")
    print(
        f"    heading={parsed.heading} zone={parsed.zone} "
        f"band={parsed.band} ambiguous={parsed.ambiguous}"
    )

print("\n== benchmark on a small prediction file ==")
truth = [
    {"id": "i0", "category": "direction", "text": "north"},
    {"id": "i1", "category": "direction", "text": "west"},
    {"id": "i2", "category": "zone", "text": "slightly to the left"},
    {"id": "i3", "category": "distance", "text": "close"},
]
preds = [
    {"id": "i0", "category": "direction", "text": "moving towards northeast"},
    {"id": "i1", "category": "direction", "text": "moving towards west"},
    {"id": "i2", "category": "zone", "text": "on the left"},
    {"id": "i3", "category": "distance", "text": "very far"},
]

with TemporaryDirectory() as tmp:
    t = Path(tmp) / "truth.jsonl"
    p = Path(tmp) / "preds.jsonl"
    t.write_text("".join(json.dumps(e) + "\n" for e in truth))
    p.write_text("".join(json.dumps(e) + "\n" for e in preds))
    report = run_coda_benchmark(p, t, ScoreRubric())

print(render_report_table(report))
print("\nper instance:")
for entry in report.per_instance:
    print(f"  {entry['id']}  {entry['category']:<9} {entry['points']}")
