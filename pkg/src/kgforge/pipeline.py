"""Manifest-driven pipeline: import, map, optionally pause for review, merge, stats.

The manifest is a JSON object naming source fixtures, mapping steps, an
optional decision log, and an output directory. Paths are resolved
relative to the manifest file. Every stage's row counts land in a
machine-readable run record; a failing stage flags already-written
artifacts as stale. Missing inputs abort with exit code 2 before
anything is written.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from .consolidate import DEFAULT_PRIORITY, concatenate, consolidate, parse_priority
from .decisions import load_decisions
from .ground import dataset_report, load_qa_items
from .importers import IMPORTERS
from .linker import (
    FileBackedProvider,
    HashedBowProvider,
    LinkerConfig,
    link_synsets,
    load_synset_queries,
    load_wikidata_docs,
)
from .mapping import (
    exact_label_match,
    ground_frame_elements,
    ili_align,
    ingest_predicate_matrix,
    load_fe_corpus,
    load_ili,
    load_predicate_matrix,
)
from .stats import degree_stats, hits, pagerank, top_k
from .tables import dedup_edges, write_edges, write_nodes
from .textnorm import LemmaDict

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_MISSING_INPUT = 2


class ManifestError(ValueError):
    """The pipeline manifest is structurally invalid."""


@dataclass
class RunResult:
    exit_code: int
    record: dict = field(default_factory=dict)
    output_dir: Path | None = None


def _manifest_paths(manifest: dict, base: Path) -> list[Path]:
    """Every input path the manifest references, in declaration order."""
    paths = []
    for source in manifest.get("sources", []):
        paths.append(base / source["path"])
    for step in manifest.get("mappings", []):
        for key in ("path", "synsets", "docs", "embeddings", "lemmas"):
            if key in step and isinstance(step[key], str):
                paths.append(base / step[key])
    if manifest.get("decisions"):
        paths.append(base / manifest["decisions"])
    questions = manifest.get("questions")
    if questions:
        paths.append(base / questions)
    return paths


def _validate_manifest(manifest: dict) -> None:
    if not isinstance(manifest, dict):
        raise ManifestError("manifest must be a JSON object")
    if "output_dir" not in manifest:
        raise ManifestError("manifest needs an output_dir")
    names = set()
    for source in manifest.get("sources", []):
        if source.get("kind") not in IMPORTERS:
            raise ManifestError(f"unknown source kind {source.get('kind')!r}")
        name = source.get("name")
        if not name or name in names:
            raise ManifestError(f"source names must be unique and non-empty: {name!r}")
        names.add(name)
    for step in manifest.get("mappings", []):
        kind = step.get("kind")
        if kind not in (
            "exact_label",
            "ili",
            "predicate_matrix",
            "ground_fe",
            "wikidata_linker",
        ):
            raise ManifestError(f"unknown mapping kind {kind!r}")
        for ref_key in ("left", "right", "lu", "cn", "offsets", "synset_source"):
            ref = step.get(ref_key)
            if ref is not None and ref not in names:
                raise ManifestError(f"mapping step references unknown source {ref!r}")


def _mapping_table(step: dict, base: Path, imported: dict):
    kind = step["kind"]
    if kind == "exact_label":
        return exact_label_match(
            imported[step["left"]][0],
            imported[step["right"]][0],
            include_aliases=bool(step.get("include_aliases", False)),
        )
    if kind == "ili":
        return ili_align(
            load_ili(base / step["path"]),
            cn_offsets=imported[step["offsets"]][0],
            vg_synsets=imported[step["synset_source"]][0],
        )
    if kind == "predicate_matrix":
        return ingest_predicate_matrix(
            load_predicate_matrix(base / step["path"]),
            lu_nodes=imported[step["lu"]][0],
            cn_nodes=imported[step["cn"]][0],
        )
    if kind == "ground_fe":
        lemmas = LemmaDict.load(base / step["lemmas"]) if step.get("lemmas") else None
        return ground_frame_elements(
            load_fe_corpus(base / step["path"]),
            cn_nodes=imported[step["cn"]][0],
            lemmas=lemmas,
        )
    if kind == "wikidata_linker":
        if step.get("embeddings"):
            provider = FileBackedProvider.load(base / step["embeddings"])
        else:
            provider = HashedBowProvider(dim=int(step.get("dim", 64)))
        cfg = LinkerConfig(top_k=int(step.get("top_k", 50)))
        return link_synsets(
            load_synset_queries(base / step["synsets"]),
            load_wikidata_docs(base / step["docs"]),
            provider,
            cfg,
        )
    raise ManifestError(f"unknown mapping kind {kind!r}")


def _stats_report(manifest: dict, edges) -> dict:
    options = manifest.get("stats")
    if not isinstance(options, dict):
        options = {}
    report = {"degree": degree_stats(edges).to_dict()}
    k = int(options.get("top_k", 10))
    if options.get("pagerank", True) and edges.rows:
        result = pagerank(
            edges,
            damping=float(options.get("damping", 0.85)),
            tol=float(options.get("tol", 1e-10)),
        )
        report["pagerank"] = {
            "iterations": result.iterations,
            "residual": result.residual,
            "top": top_k(result.pagerank, k),
        }
    if options.get("hits", True) and edges.rows:
        result = hits(edges)
        report["hits"] = {
            "iterations": result.iterations,
            "residual": result.residual,
            "top_hubs": top_k(result.hubs, k),
            "top_authorities": top_k(result.authorities, k),
        }
    return report


def run_pipeline(manifest_path) -> RunResult:
    """Execute a manifest end to end; see module docstring for the contract."""
    manifest_file = Path(manifest_path)
    if not manifest_file.is_file():
        log.error("manifest not found: %s", manifest_file)
        return RunResult(EXIT_MISSING_INPUT)
    base = manifest_file.parent
    try:
        manifest = json.loads(manifest_file.read_text(encoding="utf-8"))
        _validate_manifest(manifest)
    except (json.JSONDecodeError, ManifestError, KeyError, TypeError) as exc:
        log.error("invalid manifest: %s", exc)
        return RunResult(EXIT_FAILURE, {"status": "failed", "error": str(exc)})

    missing = [str(p) for p in _manifest_paths(manifest, base) if not p.is_file()]
    if missing:
        log.error("missing inputs: %s", ", ".join(missing))
        return RunResult(EXIT_MISSING_INPUT, {"status": "missing-inputs", "missing": missing})

    out_dir = base / manifest["output_dir"]
    record: dict = {"status": "running", "stages": [], "artifacts": []}

    def artifact(name: str, path: Path) -> None:
        record["artifacts"].append({"name": name, "path": str(path), "stale": False})

    def finish(status: str, exit_code: int, error: str | None = None) -> RunResult:
        record["status"] = status
        if error is not None:
            record["error"] = error
            for entry in record["artifacts"]:
                entry["stale"] = True
        out_dir.mkdir(parents=True, exist_ok=True)
        run_path = out_dir / "run.json"
        run_path.write_text(json.dumps(record, indent=2) + "\n", encoding="utf-8")
        return RunResult(exit_code, record, out_dir)

    try:
        imported = {}
        for source in manifest.get("sources", []):
            importer = IMPORTERS[source["kind"]]
            nodes, edges = importer(base / source["path"])
            imported[source["name"]] = (nodes, edges)
            record["stages"].append(
                {
                    "stage": f"import:{source['name']}",
                    "nodes": len(nodes.rows),
                    "edges": len(edges.rows),
                }
            )

        mapping_tables = []
        for position, step in enumerate(manifest.get("mappings", [])):
            table = _mapping_table(step, base, imported)
            mapping_tables.append(table)
            record["stages"].append(
                {"stage": f"map:{position}:{step['kind']}", "edges": len(table.rows)}
            )

        out_dir.mkdir(parents=True, exist_ok=True)
        if mapping_tables:
            raw_mappings = dedup_edges(concatenate(mapping_tables))
            mappings_path = out_dir / "mappings.tsv"
            write_edges(raw_mappings, mappings_path)
            artifact("mappings", mappings_path)

        if manifest.get("pause_for_review"):
            return finish("paused", EXIT_OK)

        decisions = None
        if manifest.get("decisions"):
            decisions = load_decisions(base / manifest["decisions"])

        node_tables = [imported[name][0] for name in imported]
        edge_tables = [imported[name][1] for name in imported]
        merged_nodes, merged_edges, plan = consolidate(
            node_tables,
            edge_tables,
            mapping_tables,
            decisions=decisions,
            strict=bool(manifest.get("strict", True)),
            priority=(
                parse_priority(manifest["priority"])
                if manifest.get("priority")
                else DEFAULT_PRIORITY
            ),
        )
        record["stages"].append(
            {
                "stage": "merge",
                "nodes": len(merged_nodes.rows),
                "edges": len(merged_edges.rows),
                "components": len(plan.components),
            }
        )
        nodes_path = out_dir / "nodes.tsv"
        edges_path = out_dir / "edges.tsv"
        write_nodes(merged_nodes, nodes_path)
        write_edges(merged_edges, edges_path)
        artifact("nodes", nodes_path)
        artifact("edges", edges_path)

        if manifest.get("stats"):
            report = _stats_report(manifest, merged_edges)
            report_path = out_dir / "report.json"
            report_path.write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
            artifact("report", report_path)
            record["stages"].append({"stage": "stats", "nodes": report["degree"]["nodes"]})

        if manifest.get("questions"):
            items, skipped = load_qa_items(base / manifest["questions"])
            grounding = dataset_report(
                items,
                merged_nodes,
                merged_edges,
                subset=manifest.get("subset"),
                skipped=skipped,
            )
            grounding_path = out_dir / "grounding.json"
            grounding_path.write_text(
                json.dumps(grounding.to_dict(), indent=2) + "\n", encoding="utf-8"
            )
            artifact("grounding", grounding_path)
            record["stages"].append({"stage": "ground", "triples": grounding.total})

        return finish("ok", EXIT_OK)
    except Exception as exc:  # noqa: BLE001 - stage failures become exit codes
        log.exception("pipeline stage failed")
        return finish("failed", EXIT_FAILURE, error=str(exc))
