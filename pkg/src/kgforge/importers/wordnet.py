"""WordNet importer: hypernymy pairs become subclass edges between synsets."""

from __future__ import annotations

import logging
import re
from pathlib import Path

from ..tables import EdgeRecord, EdgeTable, NodeRecord, NodeTable, dedup_edges, dedup_nodes
from ..vocab import SUBCLASS_OF

log = logging.getLogger(__name__)

_SYNSET_RE = re.compile(r"^(.+)\.([nvasr])\.(\d{2})$")


def parse_synset_name(name: str) -> tuple[str, str, str] | None:
    """Split 'dog.n.01' into (lemma, pos, sense); None when malformed."""
    match = _SYNSET_RE.match(name)
    if not match:
        return None
    return match.group(1), match.group(2), match.group(3)


def import_wordnet(path: str | Path) -> tuple[NodeTable, EdgeTable]:
    """Import TSV rows of (hyponym synset, hypernym synset)."""
    nodes: dict[str, NodeRecord] = {}
    edges: list[EdgeRecord] = []
    skipped = 0

    def ensure(name: str) -> str | None:
        parsed = parse_synset_name(name)
        if parsed is None:
            return None
        node_id = f"wn:{name}"
        if node_id not in nodes:
            lemma, pos, _ = parsed
            nodes[node_id] = NodeRecord(
                id=node_id, label=lemma.replace("_", " "), pos=pos, datasource="wn"
            )
        return node_id

    with Path(path).open("r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                skipped += 1
                log.warning("skipping malformed hypernym pair at line %d", number)
                continue
            if parse_synset_name(fields[0]) is None or parse_synset_name(fields[1]) is None:
                skipped += 1
                log.warning("skipping pair with malformed synset name at line %d", number)
                continue
            hyponym, hypernym = ensure(fields[0]), ensure(fields[1])
            edges.append(EdgeRecord(hyponym, SUBCLASS_OF, hypernym, datasource="wn"))

    if skipped:
        log.warning("wordnet import skipped %d rows", skipped)

    return (
        dedup_nodes(NodeTable(rows=list(nodes.values()), source="wn")),
        dedup_edges(EdgeTable(rows=edges, source="wn")),
    )
