"""Append-only log of human accept/reject decisions on mapping candidates.

Events are JSON lines keyed by (subject, object) so the log survives
re-ranking of candidates; replaying applies last-writer-wins per key.
The filter gates probabilistic identity edges before merging.
"""

from __future__ import annotations

import json
import logging
from datetime import datetime, timezone
from pathlib import Path

from .tables import EdgeTable

log = logging.getLogger(__name__)

VALID_DECISIONS = frozenset({"accepted", "rejected"})


def append_decision(
    path,
    subject: str,
    object: str,
    decision: str,
    annotator: str = "",
    timestamp: str | None = None,
) -> dict:
    """Append one decision event; returns the written record."""
    if decision not in VALID_DECISIONS:
        raise ValueError(f"decision must be one of {sorted(VALID_DECISIONS)}, got {decision!r}")
    record = {
        "subject": subject,
        "object": object,
        "decision": decision,
        "timestamp": timestamp or datetime.now(timezone.utc).isoformat(),
        "annotator": annotator,
    }
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with target.open("a", encoding="utf-8") as handle:
        handle.write(json.dumps(record, sort_keys=True) + "\n")
    return record


def load_decisions(path) -> dict[tuple[str, str], str]:
    """Replay a decision log; last writer wins per (subject, object) key.

    A missing file is an empty log. Malformed or unknown-decision lines
    are skipped and counted.
    """
    target = Path(path)
    state: dict[tuple[str, str], str] = {}
    if not target.exists():
        return state
    skipped = 0
    with target.open("r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                event = json.loads(line)
                key = (event["subject"], event["object"])
                decision = event["decision"]
            except (json.JSONDecodeError, KeyError, TypeError):
                skipped += 1
                log.warning("skipping malformed decision event at line %d", number)
                continue
            if decision not in VALID_DECISIONS:
                skipped += 1
                log.warning("skipping unknown decision %r at line %d", decision, number)
                continue
            state[key] = decision
    if skipped:
        log.warning("decision log: skipped %d events", skipped)
    return state


def filter_by_decisions(
    mappings: EdgeTable,
    decisions: dict[tuple[str, str], str],
    strict: bool = True,
) -> EdgeTable:
    """Gate mapping edges on human decisions.

    Accepted edges pass, rejected edges drop; undecided edges drop in
    strict mode and pass in permissive mode. Decisions that reference no
    mapping edge are counted and warned about.
    """
    keys = {(row.subject, row.object) for row in mappings}
    unknown = sum(1 for key in decisions if key not in keys)
    if unknown:
        log.warning("%d decisions reference no known mapping edge", unknown)
    rows = []
    for row in mappings:
        decision = decisions.get((row.subject, row.object))
        if decision == "accepted" or (decision is None and not strict):
            rows.append(row)
    return EdgeTable(rows=rows, source=mappings.source)
