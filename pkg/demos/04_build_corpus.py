"""Full corpus run: ingest, label, balance, split, downsample, emit.

Writes a small corpus under ./demo_corpus and prints its stats, then
shows one auto-labeled record and one two-round record.

Run:  python3 demos/04_build_corpus.py
"""

import json
from pathlib import Path

from pedvqa.config import ToolkitConfig
from pedvqa.pipeline import (
    PipelineSeeds,
    label_frames,
    read_records,
    run_pipeline,
)
from pedvqa.synthetic import random_walkers_manifest
from pedvqa.vqa import ManualAnnotation

out_dir = Path("demo_corpus")
manifest = random_walkers_manifest(400, n_walkers=3, seed=8)
config = ToolkitConfig()

# annotate a couple of scenes the way a human round-2 pass would
labeled, _ = label_frames(manifest, config)
annotations = [
    ManualAnnotation(
        scene_id=frame.frame_id,
        perception="Several pedestrians share the space directly in front "
                   "of the robot at a moderate distance.",
        prediction="The group will continue moving towards south as one.",
        cot_reasoning="Their paths stay parallel, so treating them as a "
                      "single moving group keeps the plan simple.",
        final_action="Slow down and keep to the right of the group.",
        explanation="A wider margin around the group respects their shared "
                    "course while keeping progress.",
    )
    for frame in labeled[:2]
]

stats = run_pipeline(
    manifest,
    out_dir,
    config=config,
    seeds=PipelineSeeds(balance=1, split=2, downsample=3),
    downsample_ratio=2,
    annotations=annotations,
)

print("== stats ==")
print(json.dumps(stats.to_dict(), indent=2, sort_keys=True))

train = read_records(out_dir / "train.jsonl")
auto = next(r for r in train if len(r.turns) == 1)
print("\n== one auto-labeled record ==")
print("Q:", auto.turns[0].question)
print("A:", auto.turns[0].answer)

two_round = [r for r in train if len(r.turns) == 2]
if two_round:
    print("\n== round 2 of an annotated record ==")
    print(two_round[0].turns[1].answer)
