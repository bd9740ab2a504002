from itertools import combinations
from pathlib import Path

import hypothesis.strategies as st
import pytest  # type: ignore

from hs_kernel.hypercore import Digraph, Hypergraph

DATA_DIR = Path(__file__).parent.parent / "data" / "instances"


@pytest.fixture
def triangle() -> Hypergraph:
    """Edges {1,2}, {2,3}, {1,3} with ids 1, 2, 3."""
    return Hypergraph.from_edges([{1, 2}, {2, 3}, {1, 3}])


@pytest.fixture
def path() -> Hypergraph:
    """Edges {1,2}, {2,3}."""
    return Hypergraph.from_edges([{1, 2}, {2, 3}])


@pytest.fixture
def directed_triangle() -> Digraph:
    """Arcs 1->2, 2->3, 3->1."""
    return Digraph(frozenset({1, 2, 3}), frozenset({(1, 2), (2, 3), (3, 1)}))


@pytest.fixture
def data_dir() -> Path:
    """Directory with the sample instance files."""
    return DATA_DIR


@st.composite
def hypergraphs(
    draw: st.DrawFn, max_n: int = 8, max_m: int = 10, max_edge_size: int = 3
) -> Hypergraph:
    """Small hypergraphs on 1..n with nonempty edges (parallel edges allowed)."""
    n = draw(st.integers(min_value=1, max_value=max_n))
    vertex = st.integers(min_value=1, max_value=n)
    edge = st.frozensets(vertex, min_size=1, max_size=min(max_edge_size, n))
    edges = draw(st.lists(edge, min_size=0, max_size=max_m))
    return Hypergraph.from_edges(edges, range(1, n + 1))


@st.composite
def digraphs(draw: st.DrawFn, max_n: int = 8) -> Digraph:
    """Small loop-free digraphs on 1..n."""
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]
    arcs = draw(st.frozensets(st.sampled_from(pairs))) if pairs else frozenset()
    return Digraph(frozenset(range(1, n + 1)), arcs)


@st.composite
def reduced_cores(draw: st.DrawFn, max_n: int = 8) -> Hypergraph:
    """Simple graphs of minimum degree 2 on 1..n: no below-m rule applies."""
    n = draw(st.integers(min_value=3, max_value=max_n))
    order = draw(st.permutations(range(1, n + 1)))
    cycle = {frozenset({order[i], order[(i + 1) % n]}) for i in range(n)}
    pairs = [frozenset(p) for p in combinations(range(1, n + 1), 2)]
    chords = draw(st.sets(st.sampled_from(pairs), max_size=n))
    return Hypergraph.from_edges(sorted(cycle | chords, key=sorted), range(1, n + 1))


@st.composite
def decorated_cores(
    draw: st.DrawFn, max_n: int = 8
) -> tuple[Hypergraph, Hypergraph]:
    """A reduced core, and the same core with removable edges mixed in.

    The extras are supersets of core edges and unit edges on fresh vertices.
    """
    core = draw(reduced_cores(max_n))
    n = core.n
    extra: list[frozenset[int]] = []
    for members in core.edges.values():
        w = draw(st.integers(min_value=1, max_value=n))
        if w not in members and draw(st.booleans()):
            extra.append(members | {w})
    units = draw(st.integers(min_value=0, max_value=3))
    extra.extend(frozenset({z}) for z in range(n + 1, n + units + 1))
    edges = draw(st.permutations([*core.edges.values(), *extra]))
    return core, Hypergraph.from_edges(edges, range(1, n + units + 1))
