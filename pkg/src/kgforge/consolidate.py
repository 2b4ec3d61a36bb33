"""Merge identity-connected nodes into single nodes and rewrite edges.

Connected components of the mw:SameAs graph become one node each; the
merged id concatenates the member ids with '+', ordered by a configurable
datasource priority so output is deterministic. Edge endpoints are
rewritten through the plan, consumed identity links disappear, and
contraction self-loops are dropped before a final deduplication pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .decisions import filter_by_decisions
from .tables import (
    EdgeRecord,
    EdgeTable,
    NodeTable,
    SchemaError,
    dedup_edges,
    dedup_nodes,
)
from .vocab import DATASOURCES, SAMEAS, id_datasource

DEFAULT_PRIORITY = ("vg", "wn", "cn", "rg", "at", "fn", "wd", "mowgli")


def parse_priority(text: str) -> tuple[str, ...]:
    """Parse a comma-separated priority; must be a permutation of the codes."""
    codes = tuple(part.strip() for part in text.split(","))
    if sorted(codes) != sorted(DATASOURCES):
        raise ValueError(
            f"priority must be a permutation of {','.join(sorted(DATASOURCES))}"
        )
    return codes


def concatenate(tables):
    """Row-wise concatenation of same-schema tables, in input order."""
    if not tables:
        raise SchemaError("nothing to concatenate")
    kinds = {type(table) for table in tables}
    if len(kinds) != 1:
        raise SchemaError("cannot concatenate node and edge tables together")
    kind = kinds.pop()
    if kind not in (NodeTable, EdgeTable):
        raise SchemaError(f"not a table type: {kind.__name__}")
    rows = [row for table in tables for row in table.rows]
    return kind(rows=rows, source="concat")


class _UnionFind:
    def __init__(self):
        self.parent: dict[str, str] = {}

    def find(self, item: str) -> str:
        root = self.parent.setdefault(item, item)
        while root != self.parent[root]:
            root = self.parent[root]
        while self.parent[item] != root:
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, a: str, b: str) -> None:
        self.parent[self.find(a)] = self.find(b)


@dataclass
class MergePlan:
    """Partition of identity-linked node ids with their merged ids.

    components holds each component's members in merged-id order;
    merged maps every covered member to its merged id. Ids outside the
    plan resolve to themselves.
    """

    components: list[list[str]] = field(default_factory=list)
    merged: dict[str, str] = field(default_factory=dict)

    def resolve(self, node_id: str) -> str:
        return self.merged.get(node_id, node_id)

    def member_rank(self, node_id: str) -> int:
        """Position of a member inside its component (0 for uncovered ids)."""
        return self._positions.get(node_id, 0)

    def __post_init__(self):
        self._positions = {
            member: position
            for component in self.components
            for position, member in enumerate(component)
        }


def build_merge_plan(
    edges: EdgeTable, priority: tuple[str, ...] = DEFAULT_PRIORITY
) -> MergePlan:
    """Union identity-linked ids; order members by (datasource priority, id).

    Only mw:SameAs rows contribute; edge direction is ignored. Input
    order never affects the result: components and merged ids are
    canonical.
    """
    rank = {code: position for position, code in enumerate(priority)}
    uf = _UnionFind()
    for row in edges:
        if row.predicate == SAMEAS:
            uf.union(row.subject, row.object)

    groups: dict[str, list[str]] = {}
    for node_id in uf.parent:
        groups.setdefault(uf.find(node_id), []).append(node_id)

    components = []
    merged: dict[str, str] = {}
    for members in groups.values():
        members.sort(key=lambda m: (rank.get(id_datasource(m), len(rank)), m))
        merged_id = "+".join(members) if len(members) > 1 else members[0]
        components.append(members)
        for member in members:
            merged[member] = merged_id
    components.sort(key=lambda members: merged[members[0]])
    return MergePlan(components=components, merged=merged)


def apply_merge(
    nodes: NodeTable, edges: EdgeTable, plan: MergePlan
) -> tuple[NodeTable, EdgeTable]:
    """Rewrite both tables through a merge plan and deduplicate.

    The merged node's primary label comes from the highest-priority
    member with one; remaining labels become aliases. Identity edges
    internal to a component are consumed; self-loops created by
    contraction (distinct endpoints collapsing together) are dropped,
    while pre-existing self-loops survive.
    """
    rewritten: list[tuple[int, int, int, object]] = []
    first_seen: dict[str, int] = {}
    for position, row in enumerate(nodes):
        merged_id = plan.resolve(row.id)
        group = first_seen.setdefault(merged_id, len(first_seen))
        if merged_id != row.id:
            member_rank = plan.member_rank(row.id)
            row = replace(row, id=merged_id)
        else:
            member_rank = 0
        rewritten.append((group, member_rank, position, row))
    rewritten.sort(key=lambda item: item[:3])
    node_table = dedup_nodes(
        NodeTable(rows=[row for *_key, row in rewritten], source="merged")
    )

    edge_rows: list[EdgeRecord] = []
    for row in edges:
        subject = plan.resolve(row.subject)
        object_ = plan.resolve(row.object)
        if subject == object_:
            if row.predicate == SAMEAS:
                continue
            if row.subject != row.object:
                continue
        if subject != row.subject or object_ != row.object:
            row = replace(row, subject=subject, object=object_)
        edge_rows.append(row)
    edge_table = dedup_edges(EdgeTable(rows=edge_rows, source="merged"))
    return node_table, edge_table


def consolidate(
    node_tables,
    edge_tables,
    mapping_tables=(),
    decisions=None,
    strict: bool = True,
    priority: tuple[str, ...] = DEFAULT_PRIORITY,
) -> tuple[NodeTable, EdgeTable, MergePlan]:
    """Concatenate sources, gate mappings on decisions, merge, deduplicate.

    Mapping edges that survive the decision filter join the graph:
    identity rows are consumed by the merge they cause, instance rows
    stay as ordinary edges.
    """
    nodes = concatenate(list(node_tables))
    edges = concatenate(list(edge_tables))
    if mapping_tables:
        mappings = dedup_edges(concatenate(list(mapping_tables)))
    else:
        mappings = EdgeTable(rows=[], source="mapping")
    if decisions is not None:
        mappings = filter_by_decisions(mappings, decisions, strict=strict)
    plan = build_merge_plan(mappings, priority)
    if mappings.rows:
        edges = concatenate([edges, mappings])
    merged_nodes, merged_edges = apply_merge(nodes, edges, plan)
    return merged_nodes, merged_edges, plan
