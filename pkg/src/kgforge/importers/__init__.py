"""Source importers: convert raw dumps into canonical node/edge tables.

Every importer is a pure batch function ``(path) -> (NodeTable, EdgeTable)``
that emits a closed graph fragment: each edge endpoint exists in the node
table, and only predicates from the importer's declared vocabulary appear.
Unparseable input rows are skipped with a counted warning, never silently.
"""

from __future__ import annotations


class ImporterError(Exception):
    """Base class for importer failures that abort the import."""


class VocabularyError(ImporterError):
    """An input row uses a relation outside the registered edge vocabulary."""


class NegativeWeightError(ImporterError):
    """A source assertion carries a negative weight; cannot clamp."""


from .atomic import import_atomic, normalize_atomic_label, EXCLUDED  # noqa: E402
from .conceptnet import (  # noqa: E402
    import_conceptnet,
    load_symmetric_relations,
    symmetric_closure,
)
from .framenet import import_framenet  # noqa: E402
from .roget import import_roget  # noqa: E402
from .visual_genome import import_visual_genome  # noqa: E402
from .wikidata import import_wikidata  # noqa: E402
from .wordnet import import_wordnet  # noqa: E402

IMPORTERS = {
    "conceptnet": import_conceptnet,
    "visualgenome": import_visual_genome,
    "wordnet": import_wordnet,
    "roget": import_roget,
    "atomic": import_atomic,
    "wikidata": import_wikidata,
    "framenet": import_framenet,
}

__all__ = [
    "IMPORTERS",
    "ImporterError",
    "VocabularyError",
    "NegativeWeightError",
    "EXCLUDED",
    "import_atomic",
    "import_conceptnet",
    "import_framenet",
    "import_roget",
    "import_visual_genome",
    "import_wikidata",
    "import_wordnet",
    "load_symmetric_relations",
    "normalize_atomic_label",
    "symmetric_closure",
]
