"""Graph statistics: degrees, log-binned distributions, PageRank, HITS.

The graph is taken as directed and unweighted; every edge row counts
once, so parallel edges under different predicates add multiplicity.
Mean total degree is computed with rational arithmetic before any
rounding.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import sparse

from .tables import EdgeTable

DAMPING = 0.85
PR_TOL = 1e-10
HITS_TOL = 1e-10
MAX_ITER = 200


class EmptyGraphError(ValueError):
    """Centrality over a graph with no edges is undefined."""


@dataclass
class GraphStats:
    """Degree summary plus plot-ready histograms."""

    nodes: int
    edges: int
    max_degree: int
    mean_degree: float
    std_degree: float
    stderr_degree: float
    hist_in: list[list[int]] = field(default_factory=list)
    hist_out: list[list[int]] = field(default_factory=list)
    hist_total: list[list[int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "edges": self.edges,
            "max_degree": self.max_degree,
            "mean_degree": self.mean_degree,
            "std_degree": self.std_degree,
            "stderr_degree": self.stderr_degree,
            "hist_in": self.hist_in,
            "hist_out": self.hist_out,
            "hist_total": self.hist_total,
        }


@dataclass
class CentralityResult:
    """Converged per-node scores with iteration count and final residual."""

    pagerank: dict[str, float] | None = None
    hubs: dict[str, float] | None = None
    authorities: dict[str, float] | None = None
    iterations: int = 0
    residual: float = 0.0


def _log_bins(degrees) -> list[list[int]]:
    """Base-2 log-binned histogram rows [low, high, count]; zero gets [0, 1)."""
    counts: Counter = Counter()
    for degree in degrees:
        if degree == 0:
            counts[(0, 1)] += 1
        else:
            k = degree.bit_length() - 1
            counts[(1 << k, 1 << (k + 1))] += 1
    return [[low, high, counts[low, high]] for low, high in sorted(counts)]


def degree_counts(edges: EdgeTable):
    """Per-node in/out degree over all ids appearing as subject or object."""
    indeg: Counter = Counter()
    outdeg: Counter = Counter()
    nodes: set[str] = set()
    for row in edges:
        nodes.add(row.subject)
        nodes.add(row.object)
        outdeg[row.subject] += 1
        indeg[row.object] += 1
    return nodes, indeg, outdeg


def degree_stats(edges: EdgeTable) -> GraphStats:
    """Summary metrics; mean total degree is exactly 2|E|/|N|."""
    nodes, indeg, outdeg = degree_counts(edges)
    n, m = len(nodes), len(edges.rows)
    if n == 0:
        return GraphStats(0, 0, 0, 0.0, 0.0, 0.0)
    totals = [indeg[v] + outdeg[v] for v in nodes]
    mean = Fraction(2 * m, n)
    if n > 1:
        variance = sum((Fraction(t) - mean) ** 2 for t in totals) / (n - 1)
        std = math.sqrt(variance)
    else:
        std = 0.0
    return GraphStats(
        nodes=n,
        edges=m,
        max_degree=max(totals),
        mean_degree=float(mean),
        std_degree=std,
        stderr_degree=std / math.sqrt(n),
        hist_in=_log_bins(indeg[v] for v in nodes),
        hist_out=_log_bins(outdeg[v] for v in nodes),
        hist_total=_log_bins(totals),
    )


def _adjacency(edges: EdgeTable):
    """Sorted id list and sparse A with A[u, v] = number of edges u -> v."""
    ids = sorted({row.subject for row in edges} | {row.object for row in edges})
    if not ids:
        raise EmptyGraphError("graph has no edges")
    pos = {node_id: i for i, node_id in enumerate(ids)}
    rows = [pos[row.subject] for row in edges]
    cols = [pos[row.object] for row in edges]
    data = np.ones(len(rows))
    matrix = sparse.csr_matrix((data, (rows, cols)), shape=(len(ids), len(ids)))
    return ids, matrix


def pagerank(
    edges: EdgeTable,
    damping: float = DAMPING,
    tol: float = PR_TOL,
    max_iter: int = MAX_ITER,
) -> CentralityResult:
    """Power iteration with uniform teleport and dangling redistribution."""
    if not 0 < damping < 1:
        raise ValueError("damping must lie strictly between 0 and 1")
    ids, matrix = _adjacency(edges)
    n = len(ids)
    out = np.asarray(matrix.sum(axis=1)).ravel()
    dangling = out == 0
    safe_out = np.where(dangling, 1.0, out)
    transpose = matrix.T.tocsr()

    rank = np.full(n, 1.0 / n)
    residual = math.inf
    iterations = 0
    for iterations in range(1, max_iter + 1):
        spread = transpose @ (rank / safe_out * ~dangling)
        shared = damping * rank[dangling].sum() / n + (1 - damping) / n
        updated = damping * spread + shared
        residual = float(np.abs(updated - rank).sum())
        rank = updated
        if residual < tol:
            break
    rank = rank / rank.sum()
    return CentralityResult(
        pagerank=dict(zip(ids, rank.tolist())),
        iterations=iterations,
        residual=residual,
    )


def hits(
    edges: EdgeTable, tol: float = HITS_TOL, max_iter: int = MAX_ITER
) -> CentralityResult:
    """Alternating hub/authority iteration, L2-normalized each step."""
    ids, matrix = _adjacency(edges)
    n = len(ids)
    transpose = matrix.T.tocsr()
    hub = np.full(n, 1.0 / math.sqrt(n))
    auth = np.full(n, 1.0 / math.sqrt(n))
    residual = math.inf
    iterations = 0
    for iterations in range(1, max_iter + 1):
        new_auth = transpose @ hub
        new_auth /= np.linalg.norm(new_auth)
        new_hub = matrix @ new_auth
        new_hub /= np.linalg.norm(new_hub)
        residual = float(
            max(np.abs(new_auth - auth).max(), np.abs(new_hub - hub).max())
        )
        auth, hub = new_auth, new_hub
        if residual < tol:
            break
    return CentralityResult(
        hubs=dict(zip(ids, hub.tolist())),
        authorities=dict(zip(ids, auth.tolist())),
        iterations=iterations,
        residual=residual,
    )


def top_k(scores: dict[str, float], k: int) -> list[tuple[str, float]]:
    """k highest-scoring nodes; ties broken by id ascending."""
    if k < 1:
        raise ValueError("k must be >= 1")
    ranked = sorted(scores.items(), key=lambda item: (-item[1], item[0]))
    return ranked[:k]
