"""
Seeded instance generators. The same arguments always give the same instance.
"""

import logging

import numpy as np

from hs_kernel.errors import PreconditionError
from hs_kernel.hypercore import Digraph, Hypergraph
from hs_kernel.kernel_below_n import BelowNInstance

logger = logging.getLogger(__name__)


def _members(rng: np.random.Generator, pool: int, size: int) -> frozenset[int]:
    """``size`` distinct ids drawn from 1..pool."""
    return frozenset(int(v) + 1 for v in rng.choice(pool, size=size, replace=False))


def gen_random_hypergraph(
    n: int, m: int, max_edge_size: int, seed: int | None = None
) -> Hypergraph:
    """m random nonempty edges over vertices 1..n; parallel edges may occur."""
    if n < 0 or m < 0:
        raise PreconditionError("n and m must be non-negative")
    if m and (n < 1 or max_edge_size < 1):
        raise PreconditionError("Edges need at least one vertex and max_edge_size >= 1")
    rng = np.random.default_rng(seed)
    top = min(max_edge_size, n)
    edges = []
    for _ in range(m):
        size = int(rng.integers(1, top + 1))
        edges.append(_members(rng, n, size))
    return Hypergraph.from_edges(edges, range(1, n + 1))


def gen_random_degenerate(
    n: int, d: int, m: int, seed: int | None = None, max_edge_size: int = 3
) -> Hypergraph:
    """Hypergraph with degeneracy at most d, built by reverse peeling.

    Vertices are inserted as 1..n. Every edge is owned by its newest member,
    all other members being older vertices, and each vertex owns at most d
    edges. Peeling the newest vertex first never sees a degree above d.
    """
    if n < 1 or d < 0 or m < 0:
        raise PreconditionError("Need n >= 1, d >= 0 and m >= 0")
    if max_edge_size < 2:
        raise PreconditionError("max_edge_size must be at least 2")
    capacity = d * (n - 1)
    if m > capacity:
        raise PreconditionError(
            f"m={m} edges do not fit: at most d*(n-1)={capacity} for n={n}, d={d}"
        )
    rng = np.random.default_rng(seed)
    # d ownership slots per vertex; vertex 1 has no older vertex to pair with
    slots = np.repeat(np.arange(2, n + 1), d)
    owners = np.sort(rng.choice(slots, size=m, replace=False)) if m else []
    edges = []
    for owner in map(int, owners):
        size = int(rng.integers(2, min(max_edge_size, owner) + 1))
        edges.append(_members(rng, owner - 1, size - 1) | {owner})
    logger.debug("Generated %d edges over %d vertices with d <= %d", m, n, d)
    return Hypergraph.from_edges(edges, range(1, n + 1))


def gen_random_digraph(n: int, arc_prob: float, seed: int | None = None) -> Digraph:
    """Each of the n(n-1) possible arcs is present with probability ``arc_prob``."""
    if n < 0:
        raise PreconditionError("n must be non-negative")
    if not 0.0 <= arc_prob <= 1.0:
        raise PreconditionError(f"arc_prob={arc_prob} is not a probability")
    rng = np.random.default_rng(seed)
    adjacency = rng.random((n, n)) < arc_prob
    np.fill_diagonal(adjacency, False)
    arcs = frozenset((int(u) + 1, int(v) + 1) for u, v in np.argwhere(adjacency))
    return Digraph(frozenset(range(1, n + 1)), arcs)


def gen_from_graph_is(graph: Digraph | Hypergraph, k: int) -> BelowNInstance:
    """Independent Set on a graph as Hitting Set below n.

    G has an independent set of size k exactly when its edge set, viewed as
    a hypergraph, has a hitting set of size n − k. A digraph is read as an
    undirected edge list; a hypergraph must be 2-uniform.
    """
    if isinstance(graph, Digraph):
        edges = sorted({frozenset(arc) for arc in graph.arcs}, key=sorted)
        return BelowNInstance(Hypergraph.from_edges(edges, graph.vertices), k)
    bad = [e for e, members in graph.edges.items() if len(members) != 2]
    if bad:
        raise PreconditionError(f"Edge {bad[0]} does not have exactly two vertices")
    return BelowNInstance(graph, k)
