"""Probabilistic synset-to-Wikidata linking in three stages.

Candidate retrieval ranks documents from an in-process inverted index
with a TF-IDF score boosted by incoming-link counts; similarity scoring
compares description embeddings by cosine; mapping emission picks the
argmax candidate per synset and writes an identity edge whose weight is
the (clamped) similarity. Embeddings come from a pluggable provider so
any external model's vectors can be replayed from a file.
"""

from __future__ import annotations

import hashlib
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .tables import EdgeRecord, EdgeTable, dedup_edges
from .textnorm import tokenize
from .vocab import SAMEAS

log = logging.getLogger(__name__)


class LinkerError(Exception):
    """Linking failed."""


class DuplicateDocumentError(LinkerError):
    """Two documents share an id."""


class DimensionMismatchError(LinkerError):
    """Vectors of different lengths were compared."""


class ZeroVectorError(LinkerError):
    """Cosine similarity is undefined for an all-zero vector."""


@dataclass
class WikidataDoc:
    """One candidate document: labels, description, and link popularity."""

    id: str
    label: str
    aliases: list[str] = field(default_factory=list)
    description: str = ""
    inlinks: int = 0

    def text_fields(self) -> list[str]:
        return [self.label, *self.aliases, self.description]


@dataclass
class LinkerConfig:
    top_k: int = 50
    dim: int = 64

    def __post_init__(self):
        if self.top_k < 1:
            raise ValueError("top_k must be >= 1")
        if self.dim < 1:
            raise ValueError("dim must be >= 1")


@dataclass
class MappingCandidate:
    synset: str
    wikidata: str
    score: float
    similarity: float | None = None
    decision: str = "pending"


class InvertedIndex:
    """Token index over document labels, aliases, and descriptions."""

    def __init__(self):
        self.docs: dict[str, WikidataDoc] = {}
        self.tf: dict[str, dict[str, int]] = {}
        self.df: dict[str, int] = {}

    @property
    def size(self) -> int:
        return len(self.docs)

    def postings(self, token: str) -> dict[str, int]:
        return self.tf.get(token, {})


def build_index(docs: list[WikidataDoc]) -> InvertedIndex:
    """Index token frequencies across every text field of every document."""
    index = InvertedIndex()
    for doc in docs:
        if doc.id in index.docs:
            raise DuplicateDocumentError(f"duplicate document id {doc.id!r}")
        index.docs[doc.id] = doc
        counts: dict[str, int] = {}
        for fragment in doc.text_fields():
            for token in tokenize(fragment):
                counts[token] = counts.get(token, 0) + 1
        for token, count in counts.items():
            index.tf.setdefault(token, {})[doc.id] = count
            index.df[token] = index.df.get(token, 0) + 1
    return index


def crm_retrieve(
    index: InvertedIndex, query_words: list[str], cfg: LinkerConfig | None = None
) -> list[MappingCandidate]:
    """Rank documents for a query, boosted by incoming links, truncated to top-k.

    score(d) = [sum over distinct query tokens t in d of tf(t,d) * ln(1 + N/df(t))]
               * (1 + ln(1 + inlinks(d)))
    """
    cfg = cfg or LinkerConfig()
    tokens = set()
    for word in query_words:
        tokens.update(tokenize(word))
    base: dict[str, float] = {}
    for token in tokens:
        postings = index.postings(token)
        if not postings:
            continue
        idf = math.log(1 + index.size / index.df[token])
        for doc_id, count in postings.items():
            base[doc_id] = base.get(doc_id, 0.0) + count * idf
    scored = [
        (base[doc_id] * (1 + math.log(1 + index.docs[doc_id].inlinks)), doc_id)
        for doc_id in base
    ]
    scored.sort(key=lambda pair: (-pair[0], pair[1]))
    return [
        MappingCandidate(synset="", wikidata=doc_id, score=score)
        for score, doc_id in scored[: cfg.top_k]
    ]


def scm_similarity(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine similarity of two equal-dimension, non-zero vectors."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"dimension mismatch: {a.shape} vs {b.shape}")
    norm_a, norm_b = float(np.linalg.norm(a)), float(np.linalg.norm(b))
    if norm_a == 0.0 or norm_b == 0.0:
        raise ZeroVectorError("cosine similarity undefined for a zero vector")
    return float(np.dot(a, b) / (norm_a * norm_b))


class EmbeddingProvider:
    """Text → fixed-dimension vector; deterministic for fixed input."""

    def embed(self, text: str) -> np.ndarray:
        raise NotImplementedError


class FileBackedProvider(EmbeddingProvider):
    """Replays vectors from a TSV of (exact text key, space-separated floats)."""

    def __init__(self, vectors: dict[str, np.ndarray]):
        self.vectors = vectors

    @classmethod
    def load(cls, path) -> "FileBackedProvider":
        vectors: dict[str, np.ndarray] = {}
        dim = None
        with Path(path).open("r", encoding="utf-8") as handle:
            for number, line in enumerate(handle, start=1):
                line = line.rstrip("\n")
                if not line or line.startswith("#"):
                    continue
                key, _, values = line.partition("\t")
                vector = np.array([float(v) for v in values.split()], dtype=float)
                if dim is None:
                    dim = vector.size
                elif vector.size != dim:
                    raise DimensionMismatchError(
                        f"embedding at line {number} has dimension {vector.size}, expected {dim}"
                    )
                vectors[key] = vector
        return cls(vectors)

    def embed(self, text: str) -> np.ndarray:
        try:
            return self.vectors[text]
        except KeyError:
            raise LinkerError(f"no embedding for text {text!r}") from None


class HashedBowProvider(EmbeddingProvider):
    """Deterministic hashed bag-of-words stub for tests and dry runs."""

    def __init__(self, dim: int = 64):
        self.dim = dim

    def embed(self, text: str) -> np.ndarray:
        vector = np.zeros(self.dim, dtype=float)
        for token in tokenize(text):
            digest = hashlib.sha256(token.encode("utf-8")).digest()
            slot = int.from_bytes(digest[:4], "big") % self.dim
            sign = 1.0 if digest[4] % 2 == 0 else -1.0
            vector[slot] += sign
        return vector


def mm_map(
    synset_id: str,
    synset_text: str,
    candidates: list[MappingCandidate],
    provider: EmbeddingProvider,
    docs: dict[str, WikidataDoc],
) -> EdgeRecord | None:
    """Emit the identity edge to the most description-similar candidate.

    Weight is the similarity clamped into [0,1]; the raw value is kept in
    'other'. Ties go to the lexicographically smallest candidate id; an
    empty candidate list yields no edge.
    """
    if not candidates:
        return None
    try:
        synset_vec = provider.embed(synset_text)
    except LinkerError as exc:
        raise LinkerError(f"synset {synset_id}: {exc}") from exc
    best_id, best_sim = None, None
    for candidate in candidates:
        doc = docs[candidate.wikidata]
        try:
            similarity = scm_similarity(synset_vec, provider.embed(doc.description))
        except LinkerError as exc:
            raise LinkerError(f"candidate {candidate.wikidata}: {exc}") from exc
        candidate.synset = candidate.synset or synset_id
        candidate.similarity = similarity
        if (
            best_sim is None
            or similarity > best_sim
            or (similarity == best_sim and candidate.wikidata < best_id)
        ):
            best_id, best_sim = candidate.wikidata, similarity
    weight = min(max(best_sim, 0.0), 1.0)
    return EdgeRecord(
        synset_id,
        SAMEAS,
        best_id,
        datasource="mowgli",
        weight=weight,
        other={"similarity": best_sim},
    )


@dataclass
class SynsetQuery:
    """Linker input: synset id, its query words, and a description text."""

    id: str
    words: list[str]
    description: str


def load_synset_queries(path) -> list[SynsetQuery]:
    """Read synset queries: TSV (id, space-separated words, description)."""
    queries: list[SynsetQuery] = []
    skipped = 0
    with Path(path).open("r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) == 3 and fields[0] and fields[1]:
                queries.append(SynsetQuery(fields[0], fields[1].split(), fields[2]))
            else:
                skipped += 1
                log.warning("skipping malformed synset query at line %d", number)
    if skipped:
        log.warning("synset queries: skipped %d rows", skipped)
    return queries


def load_wikidata_docs(path) -> list[WikidataDoc]:
    """Read candidate documents: TSV (id, label, aliases, description, inlinks)."""
    docs: list[WikidataDoc] = []
    skipped = 0
    with Path(path).open("r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) == 5 and fields[0] and fields[4].isdigit():
                docs.append(
                    WikidataDoc(
                        id=fields[0],
                        label=fields[1],
                        aliases=[a for a in fields[2].split("|") if a],
                        description=fields[3],
                        inlinks=int(fields[4]),
                    )
                )
            else:
                skipped += 1
                log.warning("skipping malformed document row at line %d", number)
    if skipped:
        log.warning("candidate documents: skipped %d rows", skipped)
    return docs


def link_synsets(
    queries: list[SynsetQuery],
    docs: list[WikidataDoc],
    provider: EmbeddingProvider,
    cfg: LinkerConfig | None = None,
) -> EdgeTable:
    """Run retrieval + similarity + mapping for every query; collect edges."""
    cfg = cfg or LinkerConfig()
    index = build_index(docs)
    rows: list[EdgeRecord] = []
    for query in queries:
        candidates = crm_retrieve(index, query.words, cfg)
        edge = mm_map(query.id, query.description, candidates, provider, index.docs)
        if edge is not None:
            rows.append(edge)
    return dedup_edges(EdgeTable(rows=rows, source="linker"))
