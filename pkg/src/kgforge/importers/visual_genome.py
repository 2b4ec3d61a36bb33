"""Visual Genome importer.

Scene graphs arrive as JSON per image. The label of each object, relation,
and attribute becomes a node; relation nodes point at their participants via
a subject/object relation pair, subject and object are additionally linked
both ways with the reused relatedness relation (as are objects and their
attributes), nodes are contextualized in their image, and objects carrying a
WordNet v3.0 synset are linked to the synset node.
"""

from __future__ import annotations

import json
import logging
from collections import Counter
from pathlib import Path

from ..tables import EdgeRecord, EdgeTable, NodeRecord, NodeTable, dedup_edges, dedup_nodes
from ..textnorm import label_to_id_fragment, normalize_label
from ..vocab import P_WORDNET_SYNSET, RELATED_TO, VG_IN_IMAGE, VG_OBJECT, VG_SUBJECT
from .wordnet import parse_synset_name

log = logging.getLogger(__name__)


def import_visual_genome(path: str | Path) -> tuple[NodeTable, EdgeTable]:
    """Import a scene-graph JSON file (list of images) as tables."""
    with Path(path).open("r", encoding="utf-8") as handle:
        images = json.load(handle)

    nodes: dict[str, NodeRecord] = {}
    edges: list[EdgeRecord] = []
    skipped: Counter[str] = Counter()

    def label_node(raw: str) -> str | None:
        fragment = label_to_id_fragment(raw)
        if not fragment:
            return None
        node_id = f"vg:{fragment}"
        if node_id not in nodes:
            nodes[node_id] = NodeRecord(id=node_id, label=normalize_label(raw), datasource="vg")
        return node_id

    def synset_node(name: str) -> str | None:
        parsed = parse_synset_name(name)
        if parsed is None:
            skipped["bad_synset"] += 1
            return None
        lemma, pos, _ = parsed
        node_id = f"wn:{name}"
        if node_id not in nodes:
            nodes[node_id] = NodeRecord(
                id=node_id, label=lemma.replace("_", " "), pos=pos, datasource="wn"
            )
        return node_id

    def related_both_ways(a: str, b: str) -> None:
        edges.append(EdgeRecord(a, RELATED_TO, b, datasource="vg"))
        edges.append(EdgeRecord(b, RELATED_TO, a, datasource="vg"))

    for image in images:
        image_id = image.get("image_id")
        image_node = f"vg:I{image_id}" if image_id is not None else None
        if image_node and image_node not in nodes:
            nodes[image_node] = NodeRecord(id=image_node, label=f"I{image_id}", datasource="vg")

        object_labels: dict[int, str] = {}
        for obj in image.get("objects", []):
            names = obj.get("names") or []
            if not names or not names[0].strip():
                skipped["unnamed_object"] += 1
                continue
            node_id = label_node(names[0])
            if node_id is None:
                skipped["unnamed_object"] += 1
                continue
            if obj.get("object_id") is not None:
                object_labels[obj["object_id"]] = node_id
            if image_node:
                edges.append(EdgeRecord(node_id, VG_IN_IMAGE, image_node, datasource="vg"))
            for attribute in obj.get("attributes", []):
                attr_id = label_node(attribute)
                if attr_id and attr_id != node_id:
                    related_both_ways(node_id, attr_id)
            for synset in obj.get("synsets", []):
                syn_id = synset_node(synset)
                if syn_id:
                    edges.append(EdgeRecord(node_id, P_WORDNET_SYNSET, syn_id, datasource="vg"))

        for rel in image.get("relationships", []):
            subject_id = object_labels.get(rel.get("subject_id"))
            object_id = object_labels.get(rel.get("object_id"))
            if subject_id is None or object_id is None:
                skipped["dangling_relationship"] += 1
                log.warning(
                    "relationship %s references a missing object id", rel.get("relationship_id")
                )
                continue
            predicate_raw = rel.get("predicate") or ""
            rel_node = label_node(predicate_raw)
            if rel_node is None:
                skipped["unnamed_relationship"] += 1
                continue
            provenance = (
                {"relationship_id": str(rel["relationship_id"])}
                if rel.get("relationship_id") is not None
                else None
            )
            edges.append(
                EdgeRecord(rel_node, VG_SUBJECT, subject_id, datasource="vg", other=provenance)
            )
            edges.append(
                EdgeRecord(rel_node, VG_OBJECT, object_id, datasource="vg", other=provenance)
            )
            if subject_id != object_id:
                related_both_ways(subject_id, object_id)
            if image_node:
                edges.append(EdgeRecord(rel_node, VG_IN_IMAGE, image_node, datasource="vg"))
            for synset in rel.get("synsets", []):
                syn_id = synset_node(synset)
                if syn_id:
                    edges.append(EdgeRecord(rel_node, P_WORDNET_SYNSET, syn_id, datasource="vg"))

    if skipped:
        log.warning("visual genome import skipped rows: %s", dict(skipped))

    return (
        dedup_nodes(NodeTable(rows=list(nodes.values()), source="vg")),
        dedup_edges(EdgeTable(rows=edges, source="vg")),
    )
