"""Annotation service round trip, driven in-process.

Builds a few scenes, lints a camera-relative draft, submits a clean
annotation, and exports the file the pipeline consumes.

Run:  python3 demos/06_annotation_service.py
"""

import json
from pathlib import Path
from tempfile import TemporaryDirectory

from fastapi.testclient import TestClient

from pedvqa.pipeline import build_records, label_frames, load_manual_annotations
from pedvqa.service import create_app
from pedvqa.store import AnnotationStore
from pedvqa.synthetic import random_walkers_manifest

manifest = random_walkers_manifest(40, n_walkers=2, seed=4)
frames, _ = label_frames(manifest)
records = build_records(frames[:5], include_overlays=True)

with TemporaryDirectory() as tmp:
    store = AnnotationStore(Path(tmp) / "store", records)
    client = TestClient(create_app(store))

    scenes = client.get("/scenes").json()["scenes"]
    print(f"== {len(scenes)} scenes, all {scenes[0]['status']} ==")
    scene_id = scenes[0]["scene_id"]

    draft = {
        "perception": "One pedestrian walks towards the camera.",
        "prediction": "They will reach the robot soon.",
        "cot_reasoning": "Their path meets the robot's corridor.",
        "final_action": "Stop and wait.",
        "explanation": "Waiting avoids the conflict.",
    }
    print("\n== lint of a camera-relative draft ==")
    for issue in client.post(f"/scenes/{scene_id}/lint", json=draft).json()["issues"]:
        print(f"  [{issue['issue']}] {issue['span']!r} -> {issue['suggestion']}")

    draft["perception"] = (
        "One pedestrian is directly in front of the robot at a close "
        "distance, moving towards south."
    )
    reply = client.post(f"/scenes/{scene_id}/annotation", json=draft).json()
    print(f"\nsubmitted revision {reply['revision']} for scene {scene_id}")

    export_text = client.get("/export").text
    export_path = Path(tmp) / "annotations.jsonl"
    export_path.write_text(export_text, encoding="utf-8")
    loaded = load_manual_annotations(export_path)
    print(f"export -> load round trip: {len(loaded)} annotation(s)")
    print(json.dumps(export_text.splitlines()[0] and json.loads(
        export_text.splitlines()[0]), indent=2)[:400])
