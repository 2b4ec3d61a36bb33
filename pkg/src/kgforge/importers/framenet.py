"""Importer for frame-semantic lexicon exports.

Input is a JSON document with two top-level lists::

    {
      "frames": [
        {
          "name": "Motion",
          "frame_elements": [{"name": "Theme", "semantic_types": ["Sentient"]}],
          "lexical_units": ["move.v", "motion.n"],
          "frame_relations": [{"type": "Inherits from", "target": "Event"}]
        }
      ],
      "semantic_types": [
        {"name": "Sentient", "relations": [{"type": "HasSuperType", "target": "Animate_being"}]}
      ]
    }

Frames, frame elements, lexical units, and semantic types each become
nodes in their own id namespace.  Edges are restricted to five
categories: frame-to-frame relations, frame membership of elements and
lexical units, semantic typing of elements, and the type hierarchy.
"""

import json
import logging
from pathlib import Path

from ..tables import EdgeRecord, EdgeTable, NodeRecord, NodeTable, dedup_edges, dedup_nodes
from ..textnorm import label_to_id_fragment
from ..vocab import (
    FE_HAS_SEMANTIC_TYPE,
    FRAME_FRAME_RELATIONS,
    FRAME_HAS_ELEMENT,
    FRAME_HAS_LEXICAL_UNIT,
    ST_ST_RELATIONS,
)
from . import ImporterError, VocabularyError

log = logging.getLogger(__name__)

# Lexical unit names carry a trailing part-of-speech tag, e.g. "move.v"
# or "due to.prep".  Tags are short alphabetic strings.
_LU_POS_MIN, _LU_POS_MAX = 1, 4


def _frame_id(name: str) -> str:
    return f"fn:frame:{label_to_id_fragment(name)}"


def _fe_id(name: str) -> str:
    return f"fn:fe:{label_to_id_fragment(name)}"


def _st_id(name: str) -> str:
    return f"fn:st:{label_to_id_fragment(name)}"


def split_lexical_unit(name: str):
    """Split "move.v" into ("move", "v"); return None if no usable tag."""
    head, sep, tail = name.rpartition(".")
    if sep and head and tail.isalpha() and _LU_POS_MIN <= len(tail) <= _LU_POS_MAX:
        return head, tail.lower()
    return None


def import_framenet(path):
    """Import a frame lexicon JSON file into node and edge tables."""
    with Path(path).open("r", encoding="utf-8") as handle:
        document = json.load(handle)
    if not isinstance(document, dict):
        raise ImporterError("frame lexicon must be a JSON object")

    node_rows: list[NodeRecord] = []
    edges: list[EdgeRecord] = []
    skipped = 0

    def add_node(node_id: str, label: str, pos=None) -> str:
        node_rows.append(NodeRecord(id=node_id, label=label, pos=pos, datasource="fn"))
        return node_id

    def add_name_node(make_id, name: str) -> str:
        return add_node(make_id(name), label_to_id_fragment(name).replace("_", " "))

    for frame in document.get("frames", []):
        name = frame.get("name", "")
        if not name:
            skipped += 1
            log.warning("skipping frame without a name")
            continue
        frame_id = add_name_node(_frame_id, name)

        for element in frame.get("frame_elements", []):
            fe_name = element.get("name", "")
            if not fe_name:
                skipped += 1
                continue
            fe_id = add_name_node(_fe_id, fe_name)
            edges.append(EdgeRecord(frame_id, FRAME_HAS_ELEMENT, fe_id, datasource="fn"))
            for st_name in element.get("semantic_types", []):
                st_full = add_name_node(_st_id, st_name)
                edges.append(EdgeRecord(fe_id, FE_HAS_SEMANTIC_TYPE, st_full, datasource="fn"))

        for unit in frame.get("lexical_units", []):
            parts = split_lexical_unit(unit)
            if parts is None:
                skipped += 1
                log.warning("skipping lexical unit without a part-of-speech tag: %r", unit)
                continue
            lemma, pos = parts
            fragment = label_to_id_fragment(lemma)
            lu_id = add_node(f"fn:lu:{fragment}.{pos}", fragment.replace("_", " "), pos=pos)
            edges.append(EdgeRecord(frame_id, FRAME_HAS_LEXICAL_UNIT, lu_id, datasource="fn"))

        for relation in frame.get("frame_relations", []):
            rel_type = relation.get("type", "")
            target = relation.get("target", "")
            if rel_type not in FRAME_FRAME_RELATIONS:
                raise VocabularyError(f"unknown frame relation {rel_type!r}")
            if not target:
                skipped += 1
                continue
            target_id = add_name_node(_frame_id, target)
            edges.append(
                EdgeRecord(frame_id, FRAME_FRAME_RELATIONS[rel_type], target_id, datasource="fn")
            )

    for semtype in document.get("semantic_types", []):
        name = semtype.get("name", "")
        if not name:
            skipped += 1
            continue
        st_full = add_name_node(_st_id, name)
        for relation in semtype.get("relations", []):
            rel_type = relation.get("type", "")
            target = relation.get("target", "")
            if rel_type not in ST_ST_RELATIONS:
                raise VocabularyError(f"unknown semantic type relation {rel_type!r}")
            if not target:
                skipped += 1
                continue
            target_id = add_name_node(_st_id, target)
            edges.append(EdgeRecord(st_full, ST_ST_RELATIONS[rel_type], target_id, datasource="fn"))

    if skipped:
        log.warning("frame lexicon import skipped %d entries", skipped)

    return (
        dedup_nodes(NodeTable(rows=node_rows, source="fn")),
        dedup_edges(EdgeTable(rows=edges, source="fn")),
    )
