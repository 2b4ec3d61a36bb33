"""Text normalization shared by label matching, grounding, and retrieval.

The stopword list is shipped and versioned here so that grounding counts are
reproducible across runs and machines.
"""

from __future__ import annotations

import re
from pathlib import Path

_TOKEN_RE = re.compile(r"[^0-9a-z]+")
_WS_RE = re.compile(r"\s+")

STOPWORDS_VERSION = "1"

# Compact English function-word list; versioned, not tunable at runtime.
STOPWORDS = frozenset(
    """
    a about above after again against all am an and any are as at be because
    been before being below between both but by could did do does doing down
    during each few for from further had has have having he her here hers
    herself him himself his how i if in into is it its itself just me more
    most my myself no nor not now of off on once only or other our ours
    ourselves out over own probably same she should so some such than that
    the their theirs them themselves then there these they this those through
    to too under until up very was we were what when where which while who
    whom why will with you your yours yourself yourselves
    """.split()
)


def tokenize(text: str) -> list[str]:
    """Case-fold and split on non-alphanumeric runs."""
    return [t for t in _TOKEN_RE.split(text.casefold()) if t]


def label_key(label: str) -> str:
    """Comparison key for labels: case-fold, '_' to space, collapse whitespace."""
    return _WS_RE.sub(" ", label.casefold().replace("_", " ")).strip()


def normalize_label(raw: str) -> str:
    """Human-readable label form: lowercase, trimmed, single spaces."""
    return _WS_RE.sub(" ", raw.lower()).strip()


def label_to_id_fragment(raw: str) -> str:
    """Node-id fragment for a free-text label: lowercase, whitespace to '_'."""
    return _WS_RE.sub("_", raw.lower().strip())


class LemmaDict:
    """Surface-form to lemma lookup backed by a two-column TSV file."""

    def __init__(self, mapping: dict[str, str] | None = None):
        self.mapping = dict(mapping or {})

    @classmethod
    def load(cls, path: str | Path) -> "LemmaDict":
        mapping: dict[str, str] = {}
        with Path(path).open("r", encoding="utf-8") as handle:
            for line in handle:
                line = line.rstrip("\n")
                if not line or line.startswith("#"):
                    continue
                surface, _, lemma = line.partition("\t")
                if surface and lemma:
                    mapping[surface.casefold()] = lemma.casefold()
        return cls(mapping)

    def lemma(self, token: str) -> str:
        return self.mapping.get(token, token)


def content_tokens(text: str, lemmas: LemmaDict | None = None) -> list[str]:
    """Tokenize, drop stopwords, and lemmatize."""
    lemmas = lemmas or LemmaDict()
    return [lemmas.lemma(t) for t in tokenize(text) if t not in STOPWORDS]


def match_ngrams(
    tokens: list[str],
    lookup,
    max_len: int = 3,
) -> list[str]:
    """Longest-first, non-overlapping n-gram matching.

    ``lookup`` maps a space-joined n-gram to a hit (or None). Longer n-grams
    are tried first, left to right; token positions consumed by a match are
    unavailable to shorter ones. Returns the matched n-gram strings in match
    order.
    """
    taken = [False] * len(tokens)
    matched: list[str] = []
    for length in range(min(max_len, len(tokens)), 0, -1):
        for start in range(0, len(tokens) - length + 1):
            span = range(start, start + length)
            if any(taken[i] for i in span):
                continue
            gram = " ".join(tokens[start : start + length])
            if lookup(gram) is not None:
                for i in span:
                    taken[i] = True
                matched.append(gram)
    return matched
