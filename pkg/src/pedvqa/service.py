"""HTTP API for the annotation workbench.

Endpoints:
    GET  /scenes?status=pending|draft|submitted
    GET  /scenes/{scene_id}
    POST /scenes/{scene_id}/lint
    POST /scenes/{scene_id}/annotation
    GET  /export

Errors use standard status codes with a machine-readable body
{code, field, message}. Reads are concurrent; writes serialize through
the store's single lock.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import Body, FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles

from .errors import ValidationError
from .linting import lint_annotation
from .pipeline import read_records
from .store import AnnotationStatus, AnnotationStore, SceneNotFound
from .vqa import ManualAnnotation


def _error_body(code: str, message: str, field: str | None = None) -> dict:
    return {"code": code, "field": field, "message": message}


def create_app(store: AnnotationStore, images_root: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="pedvqa annotation service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(SceneNotFound)
    async def _not_found(_: Request, exc: SceneNotFound):
        return JSONResponse(
            status_code=404,
            content=_error_body("not_found", str(exc), exc.field),
        )

    @app.exception_handler(ValidationError)
    async def _bad_request(_: Request, exc: ValidationError):
        return JSONResponse(
            status_code=400,
            content=_error_body("validation_error", str(exc), exc.field),
        )

    @app.get("/scenes")
    def list_scenes(status: str | None = None):
        parsed = None
        if status is not None:
            try:
                parsed = AnnotationStatus(status)
            except ValueError:
                raise ValidationError(
                    f"unknown status {status!r}", field="status"
                )
        return {"scenes": store.list_scenes(parsed)}

    @app.get("/scenes/{scene_id}")
    def get_scene(scene_id: str):
        bundle = store.get_scene(scene_id)
        latest = store.latest_annotation(scene_id)
        return {
            "scene_id": bundle.scene_id,
            "image": bundle.image_ref,
            "status": bundle.status.value,
            "round1": [
                {"question": t.question, "answer": t.answer, "round": t.round}
                for t in bundle.round1_turns
            ],
            "overlays": list(bundle.overlays),
            "annotation": (
                None
                if latest is None
                else {
                    "perception": latest.perception,
                    "prediction": latest.prediction,
                    "cot_reasoning": latest.cot_reasoning,
                    "final_action": latest.final_action,
                    "explanation": latest.explanation,
                    "annotator_id": latest.annotator_id,
                    "created_at": latest.created_at,
                }
            ),
        }

    @app.post("/scenes/{scene_id}/lint")
    def lint_scene(scene_id: str, payload: dict = Body(...)):
        # lint is pure; the scene is only checked for existence
        store.get_scene(scene_id)
        report = lint_annotation(payload)
        return report.to_dict()

    @app.post("/scenes/{scene_id}/annotation")
    def submit(scene_id: str, payload: dict = Body(...)):
        annotation = ManualAnnotation(
            scene_id=scene_id,
            perception=str(payload.get("perception", "")),
            prediction=str(payload.get("prediction", "")),
            cot_reasoning=str(payload.get("cot_reasoning", "")),
            final_action=str(payload.get("final_action", "")),
            explanation=str(payload.get("explanation", "")),
            annotator_id=str(payload.get("annotator_id", "")),
            created_at=str(payload.get("created_at", "")),
        )
        revision = store.submit_annotation(scene_id, annotation)
        stored = store.latest_annotation(scene_id)
        return {
            "scene_id": scene_id,
            "revision": revision,
            "status": AnnotationStatus.SUBMITTED.value,
            "lint": stored.lint.to_dict() if stored and stored.lint else {"issues": []},
        }

    @app.get("/export")
    def export():
        return PlainTextResponse(
            store.export_annotations(), media_type="application/x-ndjson"
        )

    if images_root is not None:
        app.mount("/images", StaticFiles(directory=str(images_root)), name="images")

    return app


def build_store(scenes_path: str | Path, store_dir: str | Path) -> AnnotationStore:
    """Load scene records from a corpus file and open the store."""
    records = read_records(scenes_path)
    return AnnotationStore(store_dir, records)
