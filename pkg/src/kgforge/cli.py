"""Command-line surface for the whole pipeline."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import configure_logging
from .consolidate import DEFAULT_PRIORITY, consolidate, parse_priority
from .decisions import load_decisions
from .ground import dataset_report, load_qa_items
from .importers import IMPORTERS, load_symmetric_relations
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
from .pipeline import run_pipeline
from .stats import degree_stats, hits, pagerank, top_k
from .tables import read_edges, read_nodes, write_edges, write_nodes
from .textnorm import LemmaDict


def _read_many_nodes(spec: str):
    return [read_nodes(part) for part in spec.split(",") if part]


def _read_many_edges(spec: str):
    return [read_edges(part) for part in spec.split(",") if part]


@click.group()
def main():
    """Knowledge-graph forge: import, map, merge, measure, serve."""
    configure_logging()


@main.command("import")
@click.argument("kind", type=click.Choice(sorted(IMPORTERS)))
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--out-nodes", required=True, type=click.Path())
@click.option("--out-edges", required=True, type=click.Path())
@click.option(
    "--symmetric-relations",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Override the symmetric relation list (one per line).",
)
def import_cmd(kind, input_path, out_nodes, out_edges, symmetric_relations):
    """Convert one source dump into canonical node/edge tables."""
    importer = IMPORTERS[kind]
    if kind == "conceptnet" and symmetric_relations:
        nodes, edges = importer(input_path, load_symmetric_relations(symmetric_relations))
    else:
        nodes, edges = importer(input_path)
    write_nodes(nodes, out_nodes)
    write_edges(edges, out_edges)
    click.echo(f"{kind}: {len(nodes.rows)} nodes, {len(edges.rows)} edges")


@main.group("map")
def map_group():
    """Generate cross-source identity and instance links."""


@map_group.command("exact")
@click.option("--left", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--right", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", required=True, type=click.Path())
@click.option("--include-aliases", is_flag=True, default=False)
def map_exact(left, right, out, include_aliases):
    """Identity edges between equal normalized labels."""
    table = exact_label_match(read_nodes(left), read_nodes(right), include_aliases)
    write_edges(table, out)
    click.echo(f"exact: {len(table.rows)} edges")


@map_group.command("ili")
@click.option("--ili", "ili_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--offsets", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--synsets", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", required=True, type=click.Path())
def map_ili(ili_path, offsets, synsets, out):
    """Align v3.0 synset nodes with v3.1 offset nodes."""
    table = ili_align(load_ili(ili_path), read_nodes(offsets), read_nodes(synsets))
    write_edges(table, out)
    click.echo(f"ili: {len(table.rows)} edges")


@map_group.command("predicate-matrix")
@click.option("--matrix", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--lu-nodes", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--cn-nodes", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", required=True, type=click.Path())
def map_predicate_matrix(matrix, lu_nodes, cn_nodes, out):
    """Identity edges from lexical units to lexical entries."""
    table = ingest_predicate_matrix(
        load_predicate_matrix(matrix), read_nodes(lu_nodes), read_nodes(cn_nodes)
    )
    write_edges(table, out)
    click.echo(f"predicate-matrix: {len(table.rows)} edges")


@map_group.command("ground-fe")
@click.option("--corpus", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--cn-nodes", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--lemmas", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--out", required=True, type=click.Path())
def map_ground_fe(corpus, cn_nodes, lemmas, out):
    """Instance edges from frame elements to lexically matched nodes."""
    lemma_dict = LemmaDict.load(lemmas) if lemmas else None
    table = ground_frame_elements(load_fe_corpus(corpus), read_nodes(cn_nodes), lemma_dict)
    write_edges(table, out)
    click.echo(f"ground-fe: {len(table.rows)} edges")


@map_group.command("wikidata")
@click.option("--synsets", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--docs", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--embeddings", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--dim", type=int, default=64, show_default=True)
@click.option("--top-k", type=int, default=50, show_default=True)
@click.option("--out", required=True, type=click.Path())
def map_wikidata(synsets, docs, embeddings, dim, top_k, out):
    """Probabilistic synset-to-Wikidata identity edges."""
    provider = FileBackedProvider.load(embeddings) if embeddings else HashedBowProvider(dim)
    table = link_synsets(
        load_synset_queries(synsets),
        load_wikidata_docs(docs),
        provider,
        LinkerConfig(top_k=top_k),
    )
    write_edges(table, out)
    click.echo(f"wikidata: {len(table.rows)} edges")


@main.command("merge")
@click.option("--nodes", required=True, help="Comma-separated node table paths.")
@click.option("--edges", required=True, help="Comma-separated edge table paths.")
@click.option("--mappings", default="", help="Comma-separated mapping table paths.")
@click.option("--decisions", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--strict/--permissive", default=True, show_default=True)
@click.option("--priority", default=",".join(DEFAULT_PRIORITY), show_default=True)
@click.option("--out-nodes", required=True, type=click.Path())
@click.option("--out-edges", required=True, type=click.Path())
def merge_cmd(nodes, edges, mappings, decisions, strict, priority, out_nodes, out_edges):
    """Merge identity-connected nodes and rewrite all tables."""
    decision_state = load_decisions(decisions) if decisions else None
    merged_nodes, merged_edges, plan = consolidate(
        _read_many_nodes(nodes),
        _read_many_edges(edges),
        _read_many_edges(mappings) if mappings else (),
        decisions=decision_state,
        strict=strict,
        priority=parse_priority(priority),
    )
    write_nodes(merged_nodes, out_nodes)
    write_edges(merged_edges, out_edges)
    click.echo(
        f"merged: {len(merged_nodes.rows)} nodes, {len(merged_edges.rows)} edges, "
        f"{len(plan.components)} components"
    )


@main.command("stats")
@click.option("--edges", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", required=True, type=click.Path())
@click.option("--pagerank", "with_pagerank", is_flag=True, default=False)
@click.option("--hits", "with_hits", is_flag=True, default=False)
@click.option("--damping", type=float, default=0.85, show_default=True)
@click.option("--tol", type=float, default=1e-10, show_default=True)
@click.option("--top-k", "k", type=int, default=10, show_default=True)
@click.option("--hist-dir", type=click.Path(file_okay=False), default=None)
def stats_cmd(edges, out, with_pagerank, with_hits, damping, tol, k, hist_dir):
    """Degree metrics, optional centrality, plot-ready histograms."""
    table = read_edges(edges)
    summary = degree_stats(table)
    report = {"degree": summary.to_dict()}
    if with_pagerank:
        result = pagerank(table, damping=damping, tol=tol)
        report["pagerank"] = {
            "iterations": result.iterations,
            "residual": result.residual,
            "top": top_k(result.pagerank, k),
        }
    if with_hits:
        result = hits(table)
        report["hits"] = {
            "iterations": result.iterations,
            "residual": result.residual,
            "top_hubs": top_k(result.hubs, k),
            "top_authorities": top_k(result.authorities, k),
        }
    out_path = Path(out)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    if hist_dir:
        hist_base = Path(hist_dir)
        hist_base.mkdir(parents=True, exist_ok=True)
        for direction in ("in", "out", "total"):
            rows = getattr(summary, f"hist_{direction}")
            lines = [f"{low}\t{high}\t{count}" for low, high, count in rows]
            (hist_base / f"degree_{direction}.tsv").write_text(
                "\n".join(lines) + "\n", encoding="utf-8"
            )
    click.echo(f"stats: {summary.nodes} nodes, {summary.edges} edges -> {out}")


@main.command("ground")
@click.option("--nodes", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--edges", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--questions", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--subset", default=None, help="Restrict edges to one datasource code.")
@click.option("--lemmas", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--out", required=True, type=click.Path())
@click.option("--emit-triples", type=click.Path(), default=None)
def ground_cmd(nodes, edges, questions, subset, lemmas, out, emit_triples):
    """Ground question/answer texts and count connecting triples."""
    items, skipped = load_qa_items(questions)
    report = dataset_report(
        items,
        read_nodes(nodes),
        read_edges(edges),
        lemmas=LemmaDict.load(lemmas) if lemmas else None,
        subset=subset,
        skipped=skipped,
    )
    out_path = Path(out)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(json.dumps(report.to_dict(), indent=2) + "\n", encoding="utf-8")
    if emit_triples:
        lines = [
            f"{q.id}\t{t.subject}\t{t.predicate}\t{t.object}"
            for q in report.questions
            for c in q.choices
            for t in c.triples
        ]
        Path(emit_triples).write_text(
            ("\n".join(lines) + "\n") if lines else "", encoding="utf-8"
        )
    click.echo(f"ground: {report.total} triples over {len(report.questions)} questions")


@main.command("run")
@click.argument("manifest", type=click.Path())
def run_cmd(manifest):
    """Execute a pipeline manifest end to end."""
    result = run_pipeline(manifest)
    if result.record.get("stages"):
        for stage in result.record["stages"]:
            click.echo(json.dumps(stage))
    click.echo(f"status: {result.record.get('status', 'missing-inputs')}")
    sys.exit(result.exit_code)


@main.command("serve")
@click.option("--mappings", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--log", "log_path", required=True, type=click.Path())
@click.option("--nodes", default="", help="Comma-separated node tables for labels.")
@click.option("--docs", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--ui", "ui_dir", type=click.Path(file_okay=False), default=None)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve_cmd(mappings, log_path, nodes, docs, ui_dir, host, port):
    """Serve mapping candidates for human review."""
    from .review import serve_review

    metadata: dict[str, dict] = {}
    for table in _read_many_nodes(nodes) if nodes else []:
        for row in table:
            description = (row.other or {}).get("description", "")
            metadata[row.id] = {"label": row.label, "description": description}
    if docs:
        for doc in load_wikidata_docs(docs):
            metadata[doc.id] = {"label": doc.label, "description": doc.description}
    serve_review(
        read_edges(mappings),
        metadata=metadata,
        log_path=log_path,
        ui_dir=ui_dir,
        host=host,
        port=port,
    )


if __name__ == "__main__":
    main()
