"""HTTP API for the review workflow.

JSON over HTTP, UTF-8. Mutations go through the single-writer ReviewStore;
concurrent readers are lock-free. The A/B endpoints never expose system names
to the client, which keeps the annotator blind; verdicts are stated in the
item's true (system_a, system_b) frame and mapped back server-side.
"""

import mimetypes
import os
from dataclasses import replace

from fastapi import FastAPI
from fastapi.responses import FileResponse, JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .evaluation import MalformedJudgmentError, VERDICTS
from .normalizer import POLICIES, SENSE_WORDS, is_complex, normalize
from .review import (
    AbItem,
    DuplicateIdError,
    DuplicateJudgmentError,
    NotFoundError,
    NotPendingError,
    ReviewStore,
    ValidationFailedError,
)


class ResolveBody(BaseModel):
    corrected_text: str
    annotator_id: str


class SkipBody(BaseModel):
    annotator_id: str


class PreviewBody(BaseModel):
    text: str
    numeric_policy: str | None = None
    symbol_sense: str | None = None


class JudgmentBody(BaseModel):
    annotator_id: str
    verdict: str


class AbItemBody(BaseModel):
    item_id: str
    system_a: str
    system_b: str
    text_a: str
    text_b: str
    audio_filepath: str | None = None


def _error(status, code, detail, **extra):
    return JSONResponse(status_code=status, content={"error": code, "detail": detail, **extra})


def create_app(store: ReviewStore, audio_root=None, ui_dir=None) -> FastAPI:
    app = FastAPI(title="thaicurate review service")
    config = store.config

    @app.get("/api/tasks")
    def list_tasks(status: str | None = None, limit: int | None = None,
                   cursor: str | None = None):
        page = store.list_tasks(status=status, limit=limit, cursor=cursor)
        return {
            "tasks": [t.to_dict() for t in page.tasks],
            "next_cursor": page.next_cursor,
        }

    @app.get("/api/tasks/{task_id}")
    def get_task(task_id: str):
        try:
            return store.get(task_id).to_dict()
        except NotFoundError:
            return _error(404, "not_found", task_id)

    @app.post("/api/tasks/{task_id}/resolve")
    def resolve_task(task_id: str, body: ResolveBody):
        try:
            store.resolve(task_id, body.corrected_text, body.annotator_id)
        except NotFoundError:
            return _error(404, "not_found", task_id)
        except NotPendingError as exc:
            return _error(409, "not_pending", str(exc))
        except ValidationFailedError as exc:
            return _error(422, "validation_failed", "correction is not canonical",
                          reasons=exc.reasons)
        return store.get(task_id).to_dict()

    @app.post("/api/tasks/{task_id}/skip")
    def skip_task(task_id: str, body: SkipBody):
        try:
            store.skip(task_id, body.annotator_id)
        except NotFoundError:
            return _error(404, "not_found", task_id)
        except NotPendingError as exc:
            return _error(409, "not_pending", str(exc))
        return store.get(task_id).to_dict()

    @app.post("/api/normalize/preview")
    def preview(body: PreviewBody):
        cfg = config
        if body.numeric_policy is not None:
            if body.numeric_policy not in POLICIES:
                return _error(400, "bad_request", f"bad policy {body.numeric_policy!r}")
            cfg = replace(cfg, numeric_policy=body.numeric_policy)
        if body.symbol_sense is not None:
            if body.symbol_sense not in SENSE_WORDS:
                return _error(400, "bad_request", f"bad sense {body.symbol_sense!r}")
            cfg = replace(cfg, symbol_default=body.symbol_sense)
        normalized = normalize(body.text, cfg)
        draft_report = is_complex(body.text, cfg.whitelist)
        submittable = not draft_report.complex and not normalized.flags
        return {
            **normalized.to_dict(),
            "draft_complex": draft_report.complex,
            "draft_reasons": [r.to_dict() for r in draft_report.reasons],
            "submittable": submittable,
        }

    @app.get("/api/abtests/next")
    def next_ab(annotator_id: str):
        item = store.next_unjudged(annotator_id)
        if item is None:
            return {"item": None}
        # no system names: the annotator stays blind
        return {
            "item": {
                "item_id": item.item_id,
                "text_a": item.text_a,
                "text_b": item.text_b,
                "has_audio": bool(item.audio_filepath),
            }
        }

    @app.post("/api/abtests/items")
    def add_ab_item(body: AbItemBody):
        try:
            store.add_ab_item(AbItem(**body.model_dump()))
        except DuplicateIdError as exc:
            return _error(409, "duplicate_id", str(exc))
        except MalformedJudgmentError as exc:
            return _error(400, "malformed", str(exc))
        return {"item_id": body.item_id}

    @app.post("/api/abtests/{item_id}/judgment")
    def judge(item_id: str, body: JudgmentBody):
        if body.verdict not in VERDICTS:
            return _error(400, "malformed", f"bad verdict {body.verdict!r}")
        try:
            count = store.judge_item(item_id, body.annotator_id, body.verdict)
        except NotFoundError:
            return _error(404, "not_found", item_id)
        except DuplicateJudgmentError as exc:
            return _error(409, "duplicate_judgment", str(exc))
        except MalformedJudgmentError as exc:
            return _error(400, "malformed", str(exc))
        return {"recorded": count}

    @app.get("/api/abtests/aggregate")
    def ab_aggregate(reference: str):
        counts = store.ab_aggregate(reference)
        return {
            "reference": reference,
            "competitors": {name: c.to_dict() for name, c in sorted(counts.items())},
        }

    @app.get("/api/audio/{any_id}")
    def audio(any_id: str):
        path = None
        try:
            path = store.get(any_id).entry.audio_filepath
        except NotFoundError:
            try:
                path = store.get_ab_item(any_id).audio_filepath
            except NotFoundError:
                pass
        if not path:
            return _error(404, "not_found", any_id)
        if audio_root is None:
            return _error(404, "no_audio_root", "service started without --audio-root")
        root = os.path.realpath(audio_root)
        full = os.path.realpath(os.path.join(root, path))
        if not full.startswith(root + os.sep):
            return _error(404, "not_found", any_id)
        if not os.path.isfile(full):
            return _error(404, "not_found", path)
        media_type = mimetypes.guess_type(full)[0] or "application/octet-stream"
        return FileResponse(full, media_type=media_type)

    if ui_dir and os.path.isdir(ui_dir):
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
