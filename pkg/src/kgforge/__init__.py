"""kgforge: consolidate heterogeneous knowledge sources into one property graph.

The graph lives in two flat TSV tables (nodes and edges). Importers turn raw
source dumps into tables, mappers emit identity links between sources, the
consolidation step contracts SameAs components into merged nodes, and the
stats/grounding modules measure the result.
"""

import logging
import os

__version__ = "0.1.0"


def configure_logging() -> None:
    """Set up root logging from the KGFORGE_LOG_LEVEL environment variable."""
    level_name = os.environ.get("KGFORGE_LOG_LEVEL", "WARNING").upper()
    level = getattr(logging, level_name, logging.WARNING)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
