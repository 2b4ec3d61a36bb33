"""ConceptNet importer.

Keeps the original assertions and increases their consistency in two ways:
closure over the symmetric relations (the dumps do not reflect symmetry
consistently), and explicit links between the forms of a concept. A lemma is
linked to each of its part-of-speech nodes with a mutually inverse relation
pair, POS nodes are typed under a dedicated class node, and lemmas are linked
to their WordNet v3.1 offset forms when the dump references one.
"""

from __future__ import annotations

import json
import logging
import re
from collections import Counter
from pathlib import Path

from ..tables import EdgeRecord, EdgeTable, NodeRecord, NodeTable, dedup_edges, dedup_nodes
from ..vocab import (
    IS_POS_FORM_OF,
    OM_WORDNET_OFFSET,
    PART_OF_SPEECH_CLASS,
    POS_FORM,
    SUBCLASS_OF,
    SYMMETRIC_RELATIONS,
)
from . import NegativeWeightError

log = logging.getLogger(__name__)

_POS_TAGS = frozenset("nvasr")
_OFFSET_RE = re.compile(r"wn31[:/](\d{8,9})-([nvasr])\b")


def load_symmetric_relations(path: str | Path) -> frozenset[str]:
    """Read one relation id per line; the set must have exactly 7 members."""
    relations = set()
    with Path(path).open("r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if line and not line.startswith("#"):
                relations.add(line)
    if len(relations) != 7:
        raise ValueError(f"symmetric relation set must have 7 members, got {len(relations)}")
    return frozenset(relations)


def symmetric_closure(edges: EdgeTable, symmetric: frozenset[str] = SYMMETRIC_RELATIONS) -> EdgeTable:
    """Add the reverse of every edge whose predicate is symmetric, then dedup."""
    rows = list(edges.rows)
    for edge in edges.rows:
        if edge.predicate in symmetric:
            rows.append(
                EdgeRecord(
                    subject=edge.object,
                    predicate=edge.predicate,
                    object=edge.subject,
                    datasource=edge.datasource,
                    weight=edge.weight,
                    other=edge.other,
                )
            )
    return dedup_edges(EdgeTable(rows=rows, source=edges.source))


def _uri_parts(uri: str) -> list[str] | None:
    if not uri.startswith("/c/"):
        return None
    parts = uri.split("/")
    if len(parts) < 4 or not parts[3]:
        return None
    return parts


def _node_from_uri(uri: str) -> NodeRecord:
    parts = _uri_parts(uri)
    assert parts is not None
    label = parts[3].replace("_", " ")
    pos = parts[4] if len(parts) > 4 and parts[4] in _POS_TAGS else None
    return NodeRecord(id=uri, label=label, pos=pos, datasource="cn")


def _lemma_uri(uri: str) -> str:
    parts = _uri_parts(uri)
    assert parts is not None
    return "/".join(parts[:4])


def _parse_assertion(line: str) -> tuple[str, str, str, dict] | None:
    fields = line.rstrip("\n").split("\t")
    if len(fields) == 5:  # official dump layout: assertion uri comes first
        fields = fields[1:]
    if len(fields) != 4:
        return None
    rel, start, end, meta_text = fields
    if not rel.startswith("/r/"):
        return None
    if meta_text.strip():
        try:
            meta = json.loads(meta_text)
        except json.JSONDecodeError:
            return None
        if not isinstance(meta, dict):
            return None
    else:
        meta = {}
    return rel, start, end, meta


def import_conceptnet(
    path: str | Path,
    symmetric: frozenset[str] = SYMMETRIC_RELATIONS,
) -> tuple[NodeTable, EdgeTable]:
    """Import assertion rows (relation, start, end, JSON metadata) as tables."""
    nodes: dict[str, NodeRecord] = {}
    edges: list[EdgeRecord] = []
    skipped: Counter[str] = Counter()

    def ensure_node(uri: str) -> None:
        if uri not in nodes:
            nodes[uri] = _node_from_uri(uri)

    def ensure_lemma_links(uri: str) -> None:
        """Lemma <-> POS-form links plus the POS class membership."""
        parts = _uri_parts(uri)
        if parts is None or len(parts) < 5 or parts[4] not in _POS_TAGS:
            return
        lemma = "/".join(parts[:4])
        pos_form = "/".join(parts[:5])
        ensure_node(lemma)
        ensure_node(pos_form)
        if PART_OF_SPEECH_CLASS not in nodes:
            nodes[PART_OF_SPEECH_CLASS] = NodeRecord(
                id=PART_OF_SPEECH_CLASS, label="part of speech", datasource="mowgli"
            )
        edges.append(EdgeRecord(lemma, POS_FORM, pos_form, datasource="cn"))
        edges.append(EdgeRecord(pos_form, IS_POS_FORM_OF, lemma, datasource="cn"))
        edges.append(EdgeRecord(pos_form, SUBCLASS_OF, PART_OF_SPEECH_CLASS, datasource="cn"))

    with Path(path).open("r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            parsed = _parse_assertion(line)
            if parsed is None:
                skipped["unparseable"] += 1
                log.warning("skipping unparseable assertion at line %d", number)
                continue
            rel, start, end, meta = parsed

            if _uri_parts(start) is None:
                skipped["non_concept_subject"] += 1
                continue

            offset_match = _OFFSET_RE.search(end)
            if offset_match:
                digits, pos = offset_match.groups()
                offset_id = f"wn31:{digits[-8:]}-{pos}"
                ensure_node(start)
                ensure_lemma_links(start)
                if offset_id not in nodes:
                    nodes[offset_id] = NodeRecord(id=offset_id, pos=pos, datasource="wn")
                edges.append(
                    EdgeRecord(_lemma_uri(start), OM_WORDNET_OFFSET, offset_id, datasource="cn")
                )
                continue

            if _uri_parts(end) is None:
                skipped["non_concept_object"] += 1
                continue

            weight = meta.get("weight")
            if weight is not None:
                weight = float(weight)
                if weight < 0:
                    raise NegativeWeightError(f"negative weight at line {number}: {weight}")
                if weight > 1.0:
                    skipped["weight_clamped"] += 1
                    weight = 1.0
            other = {"surfaceText": meta["surfaceText"]} if meta.get("surfaceText") else None

            ensure_node(start)
            ensure_node(end)
            ensure_lemma_links(start)
            ensure_lemma_links(end)
            edges.append(
                EdgeRecord(start, rel, end, datasource="cn", weight=weight, other=other)
            )

    if skipped:
        log.warning("conceptnet import skipped rows: %s", dict(skipped))

    node_table = dedup_nodes(NodeTable(rows=list(nodes.values()), source="cn"))
    edge_table = symmetric_closure(EdgeTable(rows=edges, source="cn"), symmetric)
    return node_table, edge_table
