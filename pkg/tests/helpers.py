"""Shared builders for randomized fixtures.

Generators draw from small vocabularies so random tables collide often,
which is what the dedup/merge oracle comparisons need.
"""

import random

from kgforge.tables import EdgeRecord, NodeRecord

WORDS = [
    "piano", "key", "dog", "lizard", "water", "forest", "stone", "paper",
    "engine", "river", "cloud", "lamp", "chair", "window", "road", "bread",
]

DATASOURCE_CODES = ["cn", "vg", "wn", "rg", "wd", "fn", "at", "mowgli"]

PREDICATES = [
    "/r/RelatedTo", "/r/Synonym", "/r/Antonym", "/r/IsA", "/r/AtLocation",
    "/r/UsedFor", "mw:SameAs", "rdfs:subClassOf",
]


def random_datasource(rng: random.Random) -> str:
    codes = rng.sample(DATASOURCE_CODES, rng.randint(1, 3))
    return "|".join(codes)


def random_other(rng: random.Random):
    choice = rng.random()
    if choice < 0.5:
        return None
    if choice < 0.6:
        return {}
    keys = rng.sample(["sense", "surfaceText", "offset", "rank"], rng.randint(1, 3))
    values = [rng.choice([rng.randint(0, 9), rng.choice(WORDS), True, None])
              for _ in keys]
    return dict(zip(keys, values))


def random_node(rng: random.Random, id_pool=None) -> NodeRecord:
    node_id = rng.choice(id_pool) if id_pool else f"/c/en/{rng.choice(WORDS)}_{rng.randint(0, 30)}"
    label = rng.choice(["", rng.choice(WORDS), f"{rng.choice(WORDS)} {rng.choice(WORDS)}"])
    alias_pool = [w for w in rng.sample(WORDS, 4) if w != label]
    aliases = alias_pool[: rng.randint(0, 3)]
    return NodeRecord(
        id=node_id,
        label=label,
        aliases=aliases,
        pos=rng.choice([None, "n", "v", "a", "s", "r"]),
        datasource=random_datasource(rng),
        other=random_other(rng),
    )


def random_edge(rng: random.Random, id_pool=None, predicates=PREDICATES) -> EdgeRecord:
    def endpoint():
        return rng.choice(id_pool) if id_pool else f"/c/en/{rng.choice(WORDS)}_{rng.randint(0, 30)}"

    return EdgeRecord(
        subject=endpoint(),
        predicate=rng.choice(predicates),
        object=endpoint(),
        datasource=random_datasource(rng),
        weight=rng.choice([None, round(rng.random(), 6), 0.0, 1.0, rng.random()]),
        other=random_other(rng),
    )


def node_tuple(row: NodeRecord):
    return (row.id, row.label, list(row.aliases), row.pos, row.datasource,
            None if row.other is None else dict(row.other))


def edge_tuple(row: EdgeRecord):
    return (row.subject, row.predicate, row.object, row.datasource, row.weight,
            None if row.other is None else dict(row.other))


def node_from_tuple(t) -> NodeRecord:
    return NodeRecord(id=t[0], label=t[1], aliases=list(t[2]), pos=t[3],
                      datasource=t[4], other=t[5])


def edge_from_tuple(t) -> EdgeRecord:
    return EdgeRecord(subject=t[0], predicate=t[1], object=t[2], datasource=t[3],
                      weight=t[4], other=t[5])
