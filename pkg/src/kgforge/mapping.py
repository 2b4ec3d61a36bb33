"""Deterministic cross-source identity and instance links.

Four link generators: exact label matching between two node tables,
interlingual-index alignment between the two WordNet versions in play,
predicate-matrix ingestion tying lexical units to lexical-entry nodes,
and frame-element grounding over an annotated span corpus.

Every identity edge emitted here carries weight 1.0; probabilistic links
are the linker module's business.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from pathlib import Path

from .ground import build_label_index
from .importers.framenet import split_lexical_unit
from .tables import EdgeRecord, EdgeTable, NodeTable, dedup_edges
from .textnorm import LemmaDict, label_key, label_to_id_fragment, match_ngrams, tokenize
from .vocab import HAS_INSTANCE, SAMEAS

log = logging.getLogger(__name__)

_OFFSET_RE = re.compile(r"^\d{8}-[nvasr]$")


def _node_keys(row, include_aliases: bool) -> set[str]:
    keys = {label_key(row.label)}
    if include_aliases:
        keys.update(label_key(a) for a in row.aliases)
    keys.discard("")
    return keys


def exact_label_match(
    left: NodeTable, right: NodeTable, include_aliases: bool = False
) -> EdgeTable:
    """Identity edges between nodes whose normalized labels coincide.

    Comparison key is the case-folded, whitespace-collapsed label
    (aliases join in only when include_aliases is set). Many-to-many
    matches are allowed; output is sorted by (subject, object).
    """
    by_key: dict[str, set[str]] = {}
    for row in right:
        for key in _node_keys(row, include_aliases):
            by_key.setdefault(key, set()).add(row.id)

    pairs: set[tuple[str, str]] = set()
    for row in left:
        for key in _node_keys(row, include_aliases):
            for right_id in by_key.get(key, ()):
                if right_id != row.id:
                    pairs.add((row.id, right_id))

    rows = [
        EdgeRecord(s, SAMEAS, o, datasource="mowgli", weight=1.0)
        for s, o in sorted(pairs)
    ]
    return EdgeTable(rows=rows, source="mapping")


@dataclass
class IliRow:
    """Interlingual-index row tying a v3.0 synset name to a v3.1 offset."""

    ili: str
    synset: str
    offset: str


def load_ili(path) -> list[IliRow]:
    """Read interlingual-index rows (ili id, synset name, 8-digit offset-pos)."""
    rows: list[IliRow] = []
    skipped = 0
    with Path(path).open("r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) == 3 and fields[1] and _OFFSET_RE.match(fields[2]):
                rows.append(IliRow(ili=fields[0], synset=fields[1], offset=fields[2]))
            else:
                skipped += 1
                log.warning("skipping malformed interlingual row at line %d", number)
    if skipped:
        log.warning("interlingual index: skipped %d rows", skipped)
    return rows


def ili_align(
    ili: list[IliRow], cn_offsets: NodeTable, vg_synsets: NodeTable
) -> EdgeTable:
    """Align v3.0 synset nodes with v3.1 offset nodes through the index.

    Rows referencing a node absent from either side are skipped and
    counted.
    """
    offset_ids = {row.id for row in cn_offsets}
    synset_ids = {row.id for row in vg_synsets}
    rows: list[EdgeRecord] = []
    skipped = 0
    for entry in ili:
        synset_id = f"wn:{entry.synset}"
        offset_id = f"wn31:{entry.offset}"
        if synset_id in synset_ids and offset_id in offset_ids:
            rows.append(
                EdgeRecord(synset_id, SAMEAS, offset_id, datasource="mowgli", weight=1.0)
            )
        else:
            skipped += 1
    if skipped:
        log.warning("interlingual alignment: %d rows referenced absent nodes", skipped)
    return dedup_edges(EdgeTable(rows=rows, source="mapping"))


def load_predicate_matrix(path) -> list[tuple[str, str, str]]:
    """Read predicate-matrix rows: (frame, lexical unit, target lemma)."""
    rows: list[tuple[str, str, str]] = []
    skipped = 0
    with Path(path).open("r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) == 3 and all(fields):
                rows.append((fields[0], fields[1], fields[2]))
            else:
                skipped += 1
                log.warning("skipping malformed predicate-matrix row at line %d", number)
    if skipped:
        log.warning("predicate matrix: skipped %d rows", skipped)
    return rows


def ingest_predicate_matrix(
    pm: list[tuple[str, str, str]], lu_nodes: NodeTable, cn_nodes: NodeTable
) -> EdgeTable:
    """Identity edges from lexical units to /c/en lexical entries.

    The target lemma undergoes a whitespace-cleaning pass before id
    construction; rows whose endpoints are not both present are skipped
    and counted.
    """
    lu_ids = {row.id for row in lu_nodes}
    cn_ids = {row.id for row in cn_nodes}
    rows: list[EdgeRecord] = []
    skipped = 0
    for _frame, unit, lemma in pm:
        parts = split_lexical_unit(unit)
        if parts is None:
            skipped += 1
            continue
        head, pos = parts
        lu_id = f"fn:lu:{label_to_id_fragment(head)}.{pos}"
        target_id = f"/c/en/{label_to_id_fragment(lemma)}/{pos}"
        if lu_id in lu_ids and target_id in cn_ids:
            rows.append(EdgeRecord(lu_id, SAMEAS, target_id, datasource="mowgli", weight=1.0))
        else:
            skipped += 1
    if skipped:
        log.warning("predicate matrix: %d rows without both endpoints", skipped)
    return dedup_edges(EdgeTable(rows=rows, source="mapping"))


def load_fe_corpus(path) -> list[tuple[str, str, str]]:
    """Read annotated spans: (frame, frame element, word span)."""
    records: list[tuple[str, str, str]] = []
    skipped = 0
    with Path(path).open("r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) == 3 and fields[1] and fields[2]:
                records.append((fields[0], fields[1], fields[2]))
            else:
                skipped += 1
                log.warning("skipping malformed span row at line %d", number)
    if skipped:
        log.warning("span corpus: skipped %d rows", skipped)
    return records


def ground_frame_elements(
    corpus: list[tuple[str, str, str]],
    cn_nodes: NodeTable,
    lemmas: LemmaDict | None = None,
) -> EdgeTable:
    """Instance edges from frame elements to lexically matched nodes.

    Each span is lemmatized and matched longest-first, non-overlapping,
    n-grams up to length 3, against the node label index; every hit
    yields one mw:HasInstance edge. Spans with zero matches are counted.
    """
    lemmas = lemmas or LemmaDict()
    index = build_label_index(cn_nodes)
    rows: list[EdgeRecord] = []
    unmatched = 0
    for _frame, element, span in corpus:
        fe_id = f"fn:fe:{label_to_id_fragment(element)}"
        tokens = [lemmas.lemma(t) for t in tokenize(span)]
        grams = match_ngrams(tokens, index.lookup)
        if not grams:
            unmatched += 1
            continue
        for gram in grams:
            for node_id in sorted(index.entries[gram]):
                rows.append(
                    EdgeRecord(fe_id, HAS_INSTANCE, node_id, datasource="mowgli", weight=1.0)
                )
    if unmatched:
        log.warning("frame-element grounding: %d spans had no match", unmatched)
    return dedup_edges(EdgeTable(rows=rows, source="mapping"))
