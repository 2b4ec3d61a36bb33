"""HTTP service that serves mapping candidates for human review.

Candidates come from a probabilistic mapping table and are served
highest-weight first. Each accept/reject is appended to a JSON-lines
decision log through a single writer lock; restarting the service and
replaying the log reproduces the exact decision state.
"""

from __future__ import annotations

import logging
import threading
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import HTMLResponse, JSONResponse
from fastapi.staticfiles import StaticFiles

from .decisions import VALID_DECISIONS, append_decision, load_decisions
from .tables import EdgeTable

log = logging.getLogger(__name__)

_STATES = ("pending", "accepted", "rejected")

_PLACEHOLDER = """<!doctype html>
<html><head><meta charset="utf-8"><title>mapping review</title></head>
<body><p>No review UI is installed. The JSON API lives under /api/.</p></body></html>
"""


class ReviewState:
    """In-memory candidate states, rebuilt from the log on startup."""

    def __init__(self, mappings: EdgeTable, metadata: dict | None, log_path):
        self.log_path = Path(log_path)
        self.metadata = metadata or {}
        self.lock = threading.Lock()
        self.candidates: dict[tuple[str, str], dict] = {}
        for row in mappings:
            key = (row.subject, row.object)
            if key in self.candidates:
                continue
            similarity = (row.other or {}).get("similarity")
            self.candidates[key] = {
                "subject": row.subject,
                "object": row.object,
                "weight": 1.0 if row.weight is None else row.weight,
                "similarity": similarity,
                "decision": "pending",
                "annotator": "",
            }
        for key, decision in load_decisions(self.log_path).items():
            if key in self.candidates:
                self.candidates[key]["decision"] = decision
            else:
                log.warning("decision for unknown candidate %s ignored", key)

    def describe(self, item: dict) -> dict:
        """Attach label/description metadata for both endpoints."""
        out = dict(item)
        for side in ("subject", "object"):
            meta = self.metadata.get(item[side], {})
            out[f"{side}_label"] = meta.get("label", "")
            out[f"{side}_description"] = meta.get("description", "")
        return out

    def page(self, status: str, offset: int, limit: int) -> dict:
        items = [
            c
            for c in self.candidates.values()
            if status == "all" or c["decision"] == status
        ]
        items.sort(key=lambda c: (-c["weight"], c["subject"], c["object"]))
        return {
            "total": len(items),
            "offset": offset,
            "limit": limit,
            "items": [self.describe(c) for c in items[offset : offset + limit]],
        }

    def decide(self, key: tuple[str, str], decision: str, annotator: str):
        """Apply one decision; returns (item, error-status or None)."""
        with self.lock:
            item = self.candidates.get(key)
            if item is None:
                return None, 404
            if item["decision"] == decision:
                return self.describe(item), None
            if item["decision"] != "pending":
                return self.describe(item), 409
            append_decision(self.log_path, key[0], key[1], decision, annotator)
            item["decision"] = decision
            item["annotator"] = annotator
            return self.describe(item), None

    def progress(self) -> dict:
        counts = {state: 0 for state in _STATES}
        for item in self.candidates.values():
            counts[item["decision"]] += 1
        counts["total"] = len(self.candidates)
        return counts


def create_app(
    mappings: EdgeTable,
    metadata: dict | None = None,
    log_path="decisions.jsonl",
    ui_dir=None,
) -> FastAPI:
    """Build the review application around one mapping table."""
    state = ReviewState(mappings, metadata, log_path)
    app = FastAPI(title="mapping review")
    app.state.review = state

    @app.get("/api/candidates")
    def candidates(status: str = "pending", offset: int = 0, limit: int = 50):
        if status not in (*_STATES, "all"):
            return JSONResponse({"detail": f"unknown status {status!r}"}, status_code=400)
        if offset < 0 or limit < 1:
            return JSONResponse({"detail": "offset must be >= 0 and limit >= 1"}, status_code=400)
        return state.page(status, offset, limit)

    @app.post("/api/candidates/decision")
    async def decide(request: Request):
        try:
            body = await request.json()
        except Exception:
            return JSONResponse({"detail": "body is not valid JSON"}, status_code=400)
        if not isinstance(body, dict):
            return JSONResponse({"detail": "body must be a JSON object"}, status_code=400)
        missing = [k for k in ("subject", "object", "decision") if not isinstance(body.get(k), str)]
        if missing:
            return JSONResponse(
                {"detail": f"missing or non-string fields: {', '.join(missing)}"},
                status_code=400,
            )
        decision = body["decision"]
        if decision not in VALID_DECISIONS:
            return JSONResponse(
                {"detail": f"decision must be one of {sorted(VALID_DECISIONS)}"},
                status_code=422,
            )
        annotator = body.get("annotator", "")
        if not isinstance(annotator, str):
            return JSONResponse({"detail": "annotator must be a string"}, status_code=400)
        item, error = state.decide((body["subject"], body["object"]), decision, annotator)
        if error == 404:
            return JSONResponse({"detail": "unknown candidate key"}, status_code=404)
        if error == 409:
            return JSONResponse(
                {"detail": "candidate already decided", "item": item}, status_code=409
            )
        return item

    @app.get("/api/progress")
    def progress():
        return state.progress()

    if ui_dir and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")
    else:

        @app.get("/")
        def root():
            return HTMLResponse(_PLACEHOLDER)

    return app


def serve_review(
    mappings: EdgeTable,
    metadata: dict | None = None,
    log_path="decisions.jsonl",
    ui_dir=None,
    host: str = "127.0.0.1",
    port: int = 8000,
):
    """Run the review service until interrupted."""
    import uvicorn

    app = create_app(mappings, metadata, log_path, ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")
