"""Roget importer: synonym/antonym word pairs, reusing the shared relations."""

from __future__ import annotations

import logging
from pathlib import Path

from ..tables import EdgeRecord, EdgeTable, NodeRecord, NodeTable, dedup_edges, dedup_nodes
from ..textnorm import label_to_id_fragment, normalize_label
from ..vocab import ANTONYM, SYNONYM

log = logging.getLogger(__name__)

_RELATIONS = {"synonym": SYNONYM, "antonym": ANTONYM}


def import_roget(path: str | Path) -> tuple[NodeTable, EdgeTable]:
    """Import TSV rows of (word, synonym|antonym, word); links are symmetric."""
    nodes: dict[str, NodeRecord] = {}
    edges: list[EdgeRecord] = []
    skipped = 0

    def ensure(word: str) -> str | None:
        fragment = label_to_id_fragment(word)
        if not fragment:
            return None
        node_id = f"rg:{fragment}"
        if node_id not in nodes:
            nodes[node_id] = NodeRecord(id=node_id, label=normalize_label(word), datasource="rg")
        return node_id

    with Path(path).open("r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 3 or fields[1].lower() not in _RELATIONS:
                skipped += 1
                log.warning("skipping malformed word pair at line %d", number)
                continue
            if label_to_id_fragment(fields[0]) == label_to_id_fragment(fields[2]):
                skipped += 1  # degenerate pair: word paired with itself
                continue
            left, right = ensure(fields[0]), ensure(fields[2])
            if left is None or right is None:
                skipped += 1
                continue
            predicate = _RELATIONS[fields[1].lower()]
            edges.append(EdgeRecord(left, predicate, right, datasource="rg"))
            edges.append(EdgeRecord(right, predicate, left, datasource="rg"))

    if skipped:
        log.warning("roget import skipped %d rows", skipped)

    return (
        dedup_nodes(NodeTable(rows=list(nodes.values()), source="rg")),
        dedup_edges(EdgeTable(rows=edges, source="rg")),
    )
