"""Event/attribute importer.

The whole graph is kept with its nine original relations. Labels are
normalized for lexical matching: lowercased, participant placeholders
(PersonX, PersonY, ... with optional possessive) removed, and rows whose
label reduces to "none" or nothing are excluded.
"""

from __future__ import annotations

import logging
import re
from pathlib import Path

from ..tables import EdgeRecord, EdgeTable, NodeRecord, NodeTable, dedup_edges, dedup_nodes
from ..textnorm import label_to_id_fragment
from ..vocab import ATOMIC_RELATIONS

log = logging.getLogger(__name__)

_PERSON_RE = re.compile(r"\bperson[a-z](?:'s|’s)?\b")
_WS_RE = re.compile(r"\s+")


class _Excluded:
    def __repr__(self) -> str:
        return "EXCLUDED"


EXCLUDED = _Excluded()


def normalize_atomic_label(text: str) -> str | _Excluded:
    """Lowercase, strip Person* placeholders, collapse whitespace.

    Returns the EXCLUDED sentinel when nothing remains or the value is "none".
    """
    cleaned = _PERSON_RE.sub(" ", text.lower())
    cleaned = _WS_RE.sub(" ", cleaned).strip()
    if not cleaned or cleaned == "none":
        return EXCLUDED
    return cleaned


def import_atomic(path: str | Path) -> tuple[NodeTable, EdgeTable]:
    """Import TSV rows of (event, relation, attribute)."""
    relations = set(ATOMIC_RELATIONS)
    nodes: dict[str, NodeRecord] = {}
    edges: list[EdgeRecord] = []
    dropped = 0
    skipped = 0

    def ensure(label: str) -> str:
        node_id = f"at:{label_to_id_fragment(label)}"
        if node_id not in nodes:
            nodes[node_id] = NodeRecord(id=node_id, label=label, datasource="at")
        return node_id

    with Path(path).open("r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 3 or fields[1] not in relations:
                skipped += 1
                log.warning("skipping malformed event row at line %d", number)
                continue
            event = normalize_atomic_label(fields[0])
            attribute = normalize_atomic_label(fields[2])
            if isinstance(event, _Excluded) or isinstance(attribute, _Excluded):
                dropped += 1
                continue
            edges.append(
                EdgeRecord(ensure(event), f"at:{fields[1]}", ensure(attribute), datasource="at")
            )

    if skipped or dropped:
        log.warning("atomic import skipped %d rows, excluded %d rows", skipped, dropped)

    return (
        dedup_nodes(NodeTable(rows=list(nodes.values()), source="at")),
        dedup_edges(EdgeTable(rows=edges, source="at")),
    )
