"""Test fixture: serve a few synthetic scenes on a free port.

Prints "PORT <n>" once the port is chosen; the node test waits for that
line, drives the HTTP API, and kills the process when done.
"""

import socket
import sys

import uvicorn

from pedvqa.pipeline import build_records, label_frames
from pedvqa.service import create_app
from pedvqa.store import AnnotationStore
from pedvqa.synthetic import random_walkers_manifest


def free_port() -> int:
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


def main() -> None:
    store_dir = sys.argv[1]
    manifest = random_walkers_manifest(64, n_walkers=3, seed=12)
    frames, _ = label_frames(manifest)
    records = build_records(frames[:8], include_overlays=True)
    store = AnnotationStore(store_dir, records)
    app = create_app(store)
    port = free_port()
    print(f"PORT {port}", flush=True)
    uvicorn.run(app, host="127.0.0.1", port=port, log_level="warning")


if __name__ == "__main__":
    main()
