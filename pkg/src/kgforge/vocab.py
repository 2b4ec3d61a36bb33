"""Shared vocabulary: datasource codes, relation identifiers, node-id prefixes.

Edge types are deliberately kept to a small reusable set; every importer
declares which predicates it may emit and anything else is a bug.
"""

from __future__ import annotations

# Two-letter provenance codes, plus "mowgli" for custom nodes/relations.
DATASOURCES = ("cn", "vg", "wn", "rg", "wd", "fn", "at", "mowgli")

# Identity / instance links produced by the mapping steps.
SAMEAS = "mw:SameAs"
HAS_INSTANCE = "mw:HasInstance"

# Taxonomy relation reused across WordNet, Wikidata and the POS class.
SUBCLASS_OF = "rdfs:subClassOf"

# ConceptNet enrichment relations.
POS_FORM = "mw:POSForm"
IS_POS_FORM_OF = "mw:IsPOSFormOf"
OM_WORDNET_OFFSET = "mw:OMWordnetOffset"
PART_OF_SPEECH_CLASS = "mw:PartOfSpeech"

# Visual Genome relations (vg:* are introduced, /r/RelatedTo is reused).
VG_SUBJECT = "vg:Subject"
VG_OBJECT = "vg:Object"
VG_IN_IMAGE = "vg:InImage"
P_WORDNET_SYNSET = "mw:PWordnetSynset"

RELATED_TO = "/r/RelatedTo"
SYNONYM = "/r/Synonym"
ANTONYM = "/r/Antonym"

# ConceptNet's documented symmetric relations. The closure step treats these
# as its default; the set is configurable because deployments may differ.
SYMMETRIC_RELATIONS = frozenset(
    {
        "/r/RelatedTo",
        "/r/Synonym",
        "/r/Antonym",
        "/r/SimilarTo",
        "/r/DistinctFrom",
        "/r/LocatedNear",
        "/r/EtymologicallyRelatedTo",
    }
)

# The nine event/attribute relations kept from the procedural source.
ATOMIC_RELATIONS = (
    "oEffect",
    "oReact",
    "oWant",
    "xAttr",
    "xEffect",
    "xIntent",
    "xNeed",
    "xReact",
    "xWant",
)

# Frame-to-frame relations: the 13 directional surface names used in frame
# index dumps, mapped to our edge identifiers.
FRAME_FRAME_RELATIONS = {
    "Inherits from": "fn:InheritsFrom",
    "Is Inherited by": "fn:IsInheritedBy",
    "Perspective on": "fn:PerspectiveOn",
    "Is Perspectivized in": "fn:IsPerspectivizedIn",
    "Uses": "fn:Uses",
    "Is Used by": "fn:IsUsedBy",
    "Subframe of": "fn:SubframeOf",
    "Has Subframe(s)": "fn:HasSubframes",
    "Precedes": "fn:Precedes",
    "Is Preceded by": "fn:IsPrecededBy",
    "Is Inchoative of": "fn:IsInchoativeOf",
    "Is Causative of": "fn:IsCausativeOf",
    "See also": "fn:SeeAlso",
}

FRAME_HAS_ELEMENT = "fn:HasFrameElement"
FRAME_HAS_LEXICAL_UNIT = "fn:HasLexicalUnit"
FE_HAS_SEMANTIC_TYPE = "fn:HasSemanticType"

# Semantic-type-to-semantic-type relations (3 edge types).
ST_ST_RELATIONS = {
    "HasSuperType": "fn:HasSuperType",
    "HasSubType": "fn:HasSubType",
    "HasRootType": "fn:HasRootType",
}

# Node-id prefixes, used to recover a datasource code from a bare id when
# ordering members of a merged node.
_ID_PREFIXES = (
    ("/c/", "cn"),
    ("vg:", "vg"),
    ("wn31:", "wn"),
    ("wn:", "wn"),
    ("rg:", "rg"),
    ("wd:", "wd"),
    ("fn:", "fn"),
    ("at:", "at"),
    ("mw:", "mowgli"),
)


def id_datasource(node_id: str) -> str:
    """Infer the datasource code from a node id's prefix.

    Ids of unknown shape fall back to "mowgli" (custom nodes).
    """
    for prefix, code in _ID_PREFIXES:
        if node_id.startswith(prefix):
            return code
    return "mowgli"
