"""Node and edge tables: six-column TSV rows, parsing, and aggregation.

Tables are the single data model everything else consumes. Both tables are
plain TSV with a fixed header; the ``aliases`` field joins entries with '|',
``other`` holds a JSON object with provenance, and a missing edge weight is
read as 1.0 downstream but serialized back as an empty field so the
distinction survives a round trip. All operations are pure and keep row
order deterministic (order of first key appearance), so two runs over the
same input produce byte-identical files.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .vocab import DATASOURCES

NODE_COLUMNS = ("id", "label", "aliases", "pos", "datasource", "other")
EDGE_COLUMNS = ("subject", "predicate", "object", "datasource", "weight", "other")

NODE_HEADER = "\t".join(NODE_COLUMNS)
EDGE_HEADER = "\t".join(EDGE_COLUMNS)


class TableError(Exception):
    """Base class for table parsing/serialization failures."""


class MalformedRowError(TableError):
    """A row does not have exactly six tab-separated fields."""


class InvalidDatasourceError(TableError):
    """A datasource field contains a code outside the registered set."""


class ProvenanceParseError(TableError):
    """The 'other' field is not a JSON object."""


class WeightRangeError(TableError):
    """An edge weight is not a decimal in [0, 1]."""


class UnserializableError(TableError):
    """A record violates its invariants and cannot be written as a TSV row."""


class SchemaError(TableError):
    """A file header or table schema does not match the expected columns."""


@dataclass
class NodeRecord:
    id: str
    label: str = ""
    aliases: list[str] = field(default_factory=list)
    pos: str | None = None
    datasource: str = "mowgli"
    other: dict | None = None


@dataclass
class EdgeRecord:
    subject: str
    predicate: str
    object: str
    datasource: str = "mowgli"
    weight: float | None = None  # absent means 1.0 to consumers
    other: dict | None = None

    def key(self) -> tuple[str, str, str]:
        return (self.subject, self.predicate, self.object)


@dataclass
class NodeTable:
    rows: list[NodeRecord] = field(default_factory=list)
    source: str = ""

    def __iter__(self) -> Iterator[NodeRecord]:
        return iter(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def ids(self) -> set[str]:
        return {r.id for r in self.rows}


@dataclass
class EdgeTable:
    rows: list[EdgeRecord] = field(default_factory=list)
    source: str = ""

    def __iter__(self) -> Iterator[EdgeRecord]:
        return iter(self.rows)

    def __len__(self) -> int:
        return len(self.rows)


def validate_datasource(value: str, line_number: int | None = None) -> None:
    """Check a datasource field: one code or a '|'-join of codes."""
    parts = value.split("|") if value else [""]
    for part in parts:
        if part not in DATASOURCES:
            raise InvalidDatasourceError(
                f"unknown datasource code {part!r}"
                + (f" at line {line_number}" if line_number is not None else "")
            )


def _parse_other(text: str, line_number: int | None = None) -> dict | None:
    if text == "":
        return None
    try:
        value = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProvenanceParseError(
            f"malformed JSON in 'other' field"
            + (f" at line {line_number}" if line_number is not None else "")
            + f": {exc}"
        ) from None
    if not isinstance(value, dict):
        raise ProvenanceParseError("'other' field must be a JSON object")
    return value


def _serialize_other(other: dict | None) -> str:
    if other is None:
        return ""
    return json.dumps(other, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _parse_weight(text: str, line_number: int | None = None) -> float | None:
    if text == "":
        return None
    try:
        value = float(text)
    except ValueError:
        raise WeightRangeError(f"weight {text!r} is not a decimal") from None
    if math.isnan(value) or not 0.0 <= value <= 1.0:
        raise WeightRangeError(
            f"weight {value} outside [0, 1]"
            + (f" at line {line_number}" if line_number is not None else "")
        )
    return value


def _serialize_weight(weight: float | None) -> str:
    if weight is None:
        return ""
    value = float(weight)
    if math.isnan(value) or not 0.0 <= value <= 1.0:
        raise UnserializableError(f"weight {value} outside [0, 1]")
    return repr(value)


def _check_field(value: str, what: str) -> str:
    if "\t" in value or "\n" in value or "\r" in value:
        raise UnserializableError(f"{what} contains a tab or newline: {value!r}")
    return value


def _split_fields(line: str, line_number: int | None = None) -> list[str]:
    fields = line.rstrip("\n").split("\t")
    if len(fields) != 6:
        raise MalformedRowError(
            f"expected 6 tab-separated fields, got {len(fields)}"
            + (f" at line {line_number}" if line_number is not None else "")
        )
    return fields


def parse_node_row(line: str, line_number: int | None = None) -> NodeRecord:
    """Parse one node TSV row: id, label, aliases, pos, datasource, other."""
    fields = _split_fields(line, line_number)
    node_id, label, aliases, pos, datasource, other = fields
    if not node_id:
        raise MalformedRowError(
            "empty node id" + (f" at line {line_number}" if line_number is not None else "")
        )
    validate_datasource(datasource, line_number)
    return NodeRecord(
        id=node_id,
        label=label,
        aliases=aliases.split("|") if aliases else [],
        pos=pos or None,
        datasource=datasource,
        other=_parse_other(other, line_number),
    )


def serialize_node_row(node: NodeRecord) -> str:
    """Inverse of parse_node_row; JSON keys are emitted in sorted order."""
    _check_field(node.id, "node id")
    if not node.id:
        raise UnserializableError("empty node id")
    _check_field(node.label, "label")
    seen: set[str] = set()
    for alias in node.aliases:
        _check_field(alias, "alias")
        if "|" in alias:
            raise UnserializableError(f"alias contains '|': {alias!r}")
        if not alias or alias == node.label or alias in seen:
            raise UnserializableError(f"alias list invalid near {alias!r}")
        seen.add(alias)
    if node.pos is not None:
        _check_field(node.pos, "pos")
    validate_datasource(node.datasource)
    return "\t".join(
        (
            node.id,
            node.label,
            "|".join(node.aliases),
            node.pos or "",
            node.datasource,
            _serialize_other(node.other),
        )
    )


def parse_edge_row(line: str, line_number: int | None = None) -> EdgeRecord:
    """Parse one edge TSV row: subject, predicate, object, datasource, weight, other."""
    fields = _split_fields(line, line_number)
    subject, predicate, obj, datasource, weight, other = fields
    if not subject or not predicate or not obj:
        raise MalformedRowError(
            "empty subject/predicate/object"
            + (f" at line {line_number}" if line_number is not None else "")
        )
    validate_datasource(datasource, line_number)
    return EdgeRecord(
        subject=subject,
        predicate=predicate,
        object=obj,
        datasource=datasource,
        weight=_parse_weight(weight, line_number),
        other=_parse_other(other, line_number),
    )


def serialize_edge_row(edge: EdgeRecord) -> str:
    """Inverse of parse_edge_row."""
    for value, what in (
        (edge.subject, "subject"),
        (edge.predicate, "predicate"),
        (edge.object, "object"),
    ):
        _check_field(value, what)
        if not value:
            raise UnserializableError(f"empty {what}")
    validate_datasource(edge.datasource)
    return "\t".join(
        (
            edge.subject,
            edge.predicate,
            edge.object,
            edge.datasource,
            _serialize_weight(edge.weight),
            _serialize_other(edge.other),
        )
    )


def read_nodes(path: str | Path, source: str = "") -> NodeTable:
    """Read a node table; the header row is required and validated."""
    return _read_table(path, NODE_HEADER, parse_node_row, NodeTable, source)


def read_edges(path: str | Path, source: str = "") -> EdgeTable:
    """Read an edge table; the header row is required and validated."""
    return _read_table(path, EDGE_HEADER, parse_edge_row, EdgeTable, source)


def _read_table(path, header, parse_row, table_cls, source):
    path = Path(path)
    rows = []
    with path.open("r", encoding="utf-8", newline="") as handle:
        first = handle.readline()
        if first.rstrip("\n") != header:
            raise SchemaError(f"{path}: expected header {header!r}")
        for number, line in enumerate(handle, start=2):
            if line in ("\n", ""):
                continue
            rows.append(parse_row(line, line_number=number))
    return table_cls(rows=rows, source=source or path.stem)


def write_nodes(table: NodeTable, path: str | Path) -> None:
    _write_table(path, NODE_HEADER, (serialize_node_row(r) for r in table.rows))


def write_edges(table: EdgeTable, path: str | Path) -> None:
    _write_table(path, EDGE_HEADER, (serialize_edge_row(r) for r in table.rows))


def _write_table(path, header: str, lines: Iterable[str]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as handle:
        handle.write(header + "\n")
        for line in lines:
            handle.write(line + "\n")


def merge_datasources(values: Iterable[str]) -> str:
    """Union '|'-joined datasource codes, keeping first-appearance order."""
    seen: list[str] = []
    for value in values:
        for code in value.split("|"):
            if code and code not in seen:
                seen.append(code)
    return "|".join(seen)


def merge_other(values: Iterable[dict | None]) -> dict | None:
    """Key-wise union of provenance dicts; the first writer wins per key."""
    merged: dict | None = None
    for value in values:
        if value is None:
            continue
        if merged is None:
            merged = {}
        for key, item in value.items():
            merged.setdefault(key, item)
    return merged


def dedup_nodes(table: NodeTable) -> NodeTable:
    """Aggregate rows by id.

    Per id (in order of first appearance): label is the first non-empty one,
    aliases collect every label/alias except the chosen label, pos is the
    first present value, datasources union, and 'other' unions key-wise with
    the first writer winning.
    """
    groups: dict[str, list[NodeRecord]] = {}
    for row in table.rows:
        groups.setdefault(row.id, []).append(row)

    out: list[NodeRecord] = []
    for node_id, rows in groups.items():
        label = next((r.label for r in rows if r.label), "")
        aliases: list[str] = []
        for row in rows:
            for candidate in (row.label, *row.aliases):
                if candidate and candidate != label and candidate not in aliases:
                    aliases.append(candidate)
        pos = next((r.pos for r in rows if r.pos), None)
        out.append(
            NodeRecord(
                id=node_id,
                label=label,
                aliases=aliases,
                pos=pos,
                datasource=merge_datasources(r.datasource for r in rows),
                other=merge_other(r.other for r in rows),
            )
        )
    return NodeTable(rows=out, source=table.source)


def dedup_edges(table: EdgeTable) -> EdgeTable:
    """Aggregate rows by (subject, predicate, object).

    The combined weight is the maximum of the weights present (absent when
    none carries one); datasource and 'other' combine as in dedup_nodes.
    """
    groups: dict[tuple[str, str, str], list[EdgeRecord]] = {}
    for row in table.rows:
        groups.setdefault(row.key(), []).append(row)

    out: list[EdgeRecord] = []
    for (subject, predicate, obj), rows in groups.items():
        weights = [r.weight for r in rows if r.weight is not None]
        out.append(
            EdgeRecord(
                subject=subject,
                predicate=predicate,
                object=obj,
                datasource=merge_datasources(r.datasource for r in rows),
                weight=max(weights) if weights else None,
                other=merge_other(r.other for r in rows),
            )
        )
    return EdgeTable(rows=out, source=table.source)
