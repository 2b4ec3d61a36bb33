"""Wikidata importer: the subclass taxonomy plus item labels/aliases."""

from __future__ import annotations

import logging
import re
from pathlib import Path

from ..tables import EdgeRecord, EdgeTable, NodeRecord, NodeTable, dedup_edges, dedup_nodes
from ..vocab import SUBCLASS_OF

log = logging.getLogger(__name__)

_QID_RE = re.compile(r"^Q\d+$")


def import_wikidata(path: str | Path) -> tuple[NodeTable, EdgeTable]:
    """Import a typed TSV pre-extraction of the taxonomy.

    Row layouts:
      item<TAB>Q144<TAB>dog<TAB>alias|alias<TAB>description
      subclass<TAB>Q144<TAB>Q39201
    """
    # Duplicate/bare rows are reconciled by the standard id aggregation:
    # item metadata fills in around bare references regardless of row order.
    node_rows: list[NodeRecord] = []
    edges: list[EdgeRecord] = []
    skipped = 0

    def reference(qid: str) -> str:
        node_id = f"wd:{qid}"
        node_rows.append(NodeRecord(id=node_id, datasource="wd"))
        return node_id

    with Path(path).open("r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            kind = fields[0]
            if kind == "item" and len(fields) == 5 and _QID_RE.match(fields[1]):
                _, qid, label, aliases, description = fields
                node_rows.append(
                    NodeRecord(
                        id=f"wd:{qid}",
                        label=label,
                        aliases=[a for a in aliases.split("|") if a],
                        datasource="wd",
                        other={"description": description} if description else None,
                    )
                )
            elif kind == "subclass" and len(fields) == 3 and _QID_RE.match(fields[1]) and _QID_RE.match(fields[2]):
                child, parent = reference(fields[1]), reference(fields[2])
                edges.append(EdgeRecord(child, SUBCLASS_OF, parent, datasource="wd"))
            else:
                skipped += 1
                log.warning("skipping malformed taxonomy row at line %d", number)

    if skipped:
        log.warning("wikidata import skipped %d rows", skipped)

    return (
        dedup_nodes(NodeTable(rows=node_rows, source="wd")),
        dedup_edges(EdgeTable(rows=edges, source="wd")),
    )
