"""Lexical grounding of free text to graph nodes, and QA triple retrieval.

Question/answer texts are matched against node labels and aliases; the
edges that directly connect question concepts to answer concepts are
retrieved and counted, optionally restricted to a datasource subset so
counts are comparable across graph projections.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from .tables import EdgeRecord, EdgeTable, NodeTable
from .textnorm import STOPWORDS, LemmaDict, label_key, match_ngrams, tokenize
from .vocab import SAMEAS

log = logging.getLogger(__name__)


class LabelIndex:
    """Map from normalized label/alias string to the set of node ids bearing it."""

    def __init__(self):
        self.entries: dict[str, set[str]] = {}

    def add(self, text: str, node_id: str) -> None:
        key = label_key(text)
        if key:
            self.entries.setdefault(key, set()).add(node_id)

    def lookup(self, key: str):
        """Return the id set for a normalized key, or None when absent."""
        return self.entries.get(key)

    def __len__(self) -> int:
        return len(self.entries)


def build_label_index(nodes: NodeTable) -> LabelIndex:
    """Index the normalized label and every alias of every node."""
    index = LabelIndex()
    for row in nodes:
        index.add(row.label, row.id)
        for alias in row.aliases:
            index.add(alias, row.id)
    return index


def ground_text(text: str, index: LabelIndex, lemmas: LemmaDict | None = None) -> set[str]:
    """Ground a text to node ids via longest-first non-overlapping n-grams.

    Tokens are case-folded, stopwords dropped, and lemmatized before
    n-grams (length <= 3) are matched against the index.
    """
    lemmas = lemmas or LemmaDict()
    tokens = [lemmas.lemma(t) for t in tokenize(text) if t not in STOPWORDS]
    grounded: set[str] = set()
    for gram in match_ngrams(tokens, index.lookup):
        grounded.update(index.entries[gram])
    return grounded


def retrieve_connecting_triples(
    q_ids: set[str], a_ids: set[str], edges: EdgeTable
) -> list[EdgeRecord]:
    """Edges linking a question concept to an answer concept, either direction.

    Identity links are consolidation plumbing, not evidence, so mw:SameAs
    rows are excluded. Rows are returned in table order, once each.
    """
    seen: set[tuple[str, str, str]] = set()
    hits: list[EdgeRecord] = []
    for row in edges:
        if row.predicate == SAMEAS or row.key() in seen:
            continue
        u, v = row.subject, row.object
        if (u in q_ids and v in a_ids) or (u in a_ids and v in q_ids):
            seen.add(row.key())
            hits.append(row)
    return hits


def filter_edges_by_datasource(edges: EdgeTable, code: str) -> EdgeTable:
    """Project the edge table onto rows whose datasource union contains code."""
    rows = [row for row in edges if code in row.datasource.split("|")]
    return EdgeTable(rows=rows, source=edges.source)


@dataclass
class QaItem:
    """One multiple-choice question: id, question text, >= 2 answer choices."""

    id: str
    question: str
    choices: list[str]


@dataclass
class ChoiceGrounding:
    text: str
    node_ids: list[str]
    triples: list[EdgeRecord]

    @property
    def count(self) -> int:
        return len(self.triples)


@dataclass
class QuestionGrounding:
    id: str
    question_nodes: list[str]
    choices: list[ChoiceGrounding]


@dataclass
class GroundingReport:
    """Per-question, per-choice retrieved triples plus dataset totals."""

    subset: str | None
    questions: list[QuestionGrounding] = field(default_factory=list)
    skipped: int = 0

    @property
    def total(self) -> int:
        return sum(c.count for q in self.questions for c in q.choices)

    def to_dict(self) -> dict:
        return {
            "subset": self.subset,
            "total": self.total,
            "skipped": self.skipped,
            "questions": [
                {
                    "id": q.id,
                    "question_nodes": q.question_nodes,
                    "choices": [
                        {
                            "text": c.text,
                            "node_ids": c.node_ids,
                            "count": c.count,
                            "triples": [[t.subject, t.predicate, t.object] for t in c.triples],
                        }
                        for c in q.choices
                    ],
                }
                for q in self.questions
            ],
        }


def load_qa_items(path) -> tuple[list[QaItem], int]:
    """Read JSONL {id, question, choices: [...]}; malformed lines are counted."""
    items: list[QaItem] = []
    skipped = 0
    with Path(path).open("r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
                qid = str(record["id"])
                question = record["question"]
                choices = list(record["choices"])
            except (json.JSONDecodeError, KeyError, TypeError):
                skipped += 1
                log.warning("skipping malformed question at line %d", number)
                continue
            if len(choices) < 2:
                skipped += 1
                log.warning("skipping question %s: fewer than two choices", qid)
                continue
            items.append(QaItem(id=qid, question=question, choices=choices))
    return items, skipped


def dataset_report(
    items: list[QaItem],
    nodes: NodeTable,
    edges: EdgeTable,
    lemmas: LemmaDict | None = None,
    subset: str | None = None,
    skipped: int = 0,
) -> GroundingReport:
    """Ground every question/choice pair and retrieve connecting triples."""
    index = build_label_index(nodes)
    if subset:
        edges = filter_edges_by_datasource(edges, subset)
    report = GroundingReport(subset=subset, skipped=skipped)
    for item in items:
        q_ids = ground_text(item.question, index, lemmas)
        choices = []
        for choice in item.choices:
            a_ids = ground_text(choice, index, lemmas)
            triples = retrieve_connecting_triples(q_ids, a_ids, edges)
            choices.append(
                ChoiceGrounding(text=choice, node_ids=sorted(a_ids), triples=triples)
            )
        report.questions.append(
            QuestionGrounding(id=item.id, question_nodes=sorted(q_ids), choices=choices)
        )
    return report
