"""
Hypergraph and digraph data model plus the primitive operations every
kernelization builds on: deletions, the shrink operator, degeneracy
peeling and the constructive (d+1)-coloring.

All values are immutable; operations return new instances and never reuse
vertex or edge ids, so reduction traces can always name removed objects.
"""

import logging
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property

from hs_kernel.errors import PreconditionError, UnknownEdgeError, UnknownVertexError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Hypergraph:
    """Vertex set plus an id-ordered multiset of edges.

    ``edges`` maps edge id -> vertex set, in increasing id order. Parallel
    edges (equal vertex sets under different ids) are allowed. An empty edge
    only appears after ``delete_vertex`` and marks the instance infeasible.
    """

    vertices: frozenset[int]
    edges: Mapping[int, frozenset[int]]
    next_edge_id: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.vertices, frozenset):
            object.__setattr__(self, "vertices", frozenset(self.vertices))
        ordered = {e: frozenset(members) for e, members in sorted(self.edges.items())}
        for members in ordered.values():
            stray = members - self.vertices
            if stray:
                raise UnknownVertexError(min(stray))
        object.__setattr__(self, "edges", ordered)
        floor = max(ordered, default=0) + 1
        if self.next_edge_id < floor:
            object.__setattr__(self, "next_edge_id", floor)

    @classmethod
    def from_edges(
        cls, edges: Iterable[Iterable[int]], vertices: Iterable[int] | None = None
    ) -> "Hypergraph":
        """Builds a hypergraph with edge ids 1..m in the given order.

        When ``vertices`` is omitted the vertex set is the union of the edges.
        """
        edge_map = {i: frozenset(e) for i, e in enumerate(edges, start=1)}
        if vertices is None:
            vertex_set = frozenset().union(*edge_map.values())
        else:
            vertex_set = frozenset(vertices)
        return cls(vertex_set, edge_map)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def incidence(self) -> dict[int, frozenset[int]]:
        """F[v] for every vertex: the ids of the edges containing it."""
        incident: dict[int, set[int]] = {v: set() for v in self.vertices}
        for edge_id, members in self.edges.items():
            for v in members:
                incident[v].add(edge_id)
        return {v: frozenset(ids) for v, ids in incident.items()}

    def edges_of(self, vertices: Iterable[int]) -> frozenset[int]:
        """F[T]: ids of the edges hit by ``vertices``."""
        hit: set[int] = set()
        for v in vertices:
            if v not in self.vertices:
                raise UnknownVertexError(v)
            hit |= self.incidence[v]
        return frozenset(hit)

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        """N[v]: every vertex sharing an edge with ``v`` (``v`` included)."""
        if v not in self.vertices:
            raise UnknownVertexError(v)
        members = {v}
        for edge_id in self.incidence[v]:
            members |= self.edges[edge_id]
        return frozenset(members)

    @property
    def empty_edges(self) -> tuple[int, ...]:
        """Ids of edges left empty by ``delete_vertex``."""
        return tuple(e for e, members in self.edges.items() if not members)

    @property
    def is_infeasible(self) -> bool:
        return bool(self.empty_edges)

    def same_as(self, other: "Hypergraph") -> bool:
        """Equality by vertex set and edge ids, ignoring the id high-water mark."""
        return self.vertices == other.vertices and dict(self.edges) == dict(
            other.edges
        )


@dataclass(frozen=True)
class Digraph:
    """Vertex set plus arc set; self-loops are rejected (see ``normalized``)."""

    vertices: frozenset[int]
    arcs: frozenset[tuple[int, int]]
    next_vertex_id: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.vertices, frozenset):
            object.__setattr__(self, "vertices", frozenset(self.vertices))
        if not isinstance(self.arcs, frozenset):
            object.__setattr__(self, "arcs", frozenset(self.arcs))
        for u, v in self.arcs:
            if u not in self.vertices:
                raise UnknownVertexError(u)
            if v not in self.vertices:
                raise UnknownVertexError(v)
            if u == v:
                raise PreconditionError(f"Self-loop on vertex {u} is not allowed")
        floor = max(self.vertices, default=0) + 1
        if self.next_vertex_id < floor:
            object.__setattr__(self, "next_vertex_id", floor)

    @classmethod
    def normalized(
        cls, vertices: Iterable[int], arcs: Iterable[tuple[int, int]]
    ) -> "Digraph":
        """Builds a digraph, dropping self-loops with a warning.

        A self-loop never changes domination: a vertex outside the dominating
        set cannot dominate itself.
        """
        kept = set()
        loops = set()
        for u, v in arcs:
            (loops if u == v else kept).add((u, v))
        if loops:
            logger.warning(
                "Dropped %d self-loop(s) on vertices %s",
                len(loops),
                sorted(u for u, _ in loops),
            )
        return cls(frozenset(vertices), frozenset(kept))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def _out(self) -> dict[int, frozenset[int]]:
        out: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.arcs:
            out[u].add(v)
        return {v: frozenset(ws) for v, ws in out.items()}

    @cached_property
    def _in(self) -> dict[int, frozenset[int]]:
        into: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.arcs:
            into[v].add(u)
        return {v: frozenset(ws) for v, ws in into.items()}

    def out_neighbors(self, v: int) -> frozenset[int]:
        if v not in self.vertices:
            raise UnknownVertexError(v)
        return self._out[v]

    def in_neighbors(self, v: int) -> frozenset[int]:
        if v not in self.vertices:
            raise UnknownVertexError(v)
        return self._in[v]

    def closed_in_neighborhood(self, v: int) -> frozenset[int]:
        """N⁻[v] = {v} plus every vertex with an arc into v."""
        return self.in_neighbors(v) | {v}

    def out_degree(self, v: int) -> int:
        return len(self.out_neighbors(v))

    def in_degree(self, v: int) -> int:
        return len(self.in_neighbors(v))

    @property
    def isolated(self) -> tuple[int, ...]:
        return tuple(
            v for v in sorted(self.vertices) if not self._in[v] and not self._out[v]
        )

    @property
    def sources(self) -> tuple[int, ...]:
        """Vertices of in-degree zero (isolated vertices included)."""
        return tuple(v for v in sorted(self.vertices) if not self._in[v])


@dataclass(frozen=True)
class DegeneracyOrder:
    """Peeling order (v_i, d_i) and the resulting degeneracy max d_i."""

    order: tuple[tuple[int, int], ...]

    @property
    def degeneracy(self) -> int:
        return max((d for _, d in self.order), default=0)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.order)


@dataclass(frozen=True)
class Coloring:
    """Vertex -> color in 1..t; ``color_count`` is t."""

    assignment: Mapping[int, int] = field(default_factory=dict)

    @property
    def color_count(self) -> int:
        return max(self.assignment.values(), default=0)

    def color_classes(self) -> dict[int, frozenset[int]]:
        classes: dict[int, set[int]] = {}
        for v, c in self.assignment.items():
            classes.setdefault(c, set()).add(v)
        return {c: frozenset(vs) for c, vs in sorted(classes.items())}

    def largest_class(self) -> frozenset[int]:
        """Biggest color class; ties go to the class holding the smallest id."""
        classes = self.color_classes().values()
        if not classes:
            return frozenset()
        return min(classes, key=lambda vs: (-len(vs), min(vs)))

    def is_proper_for(self, hypergraph: Hypergraph) -> bool:
        if set(self.assignment) != set(hypergraph.vertices):
            return False
        for members in hypergraph.edges.values():
            if len(members) >= 2 and len({self.assignment[v] for v in members}) < 2:
                return False
        return True


def degree(hypergraph: Hypergraph, v: int) -> int:
    """d(v) = |F[v]|."""
    if v not in hypergraph.vertices:
        raise UnknownVertexError(v)
    return len(hypergraph.incidence[v])


def delete_edge(hypergraph: Hypergraph, edge_id: int) -> Hypergraph:
    """H − e: same vertices, one edge fewer."""
    if edge_id not in hypergraph.edges:
        raise UnknownEdgeError(edge_id)
    edges = {e: members for e, members in hypergraph.edges.items() if e != edge_id}
    return Hypergraph(hypergraph.vertices, edges, hypergraph.next_edge_id)


def delete_vertex(hypergraph: Hypergraph, v: int) -> Hypergraph:
    """H − v: drop ``v`` from the vertex set and from every edge.

    Edges that become empty are kept; check ``is_infeasible`` on the result.
    """
    if v not in hypergraph.vertices:
        raise UnknownVertexError(v)
    edges = {e: members - {v} for e, members in hypergraph.edges.items()}
    return Hypergraph(hypergraph.vertices - {v}, edges, hypergraph.next_edge_id)


def shrink(hypergraph: Hypergraph, removed: Iterable[int]) -> Hypergraph:
    """H ⊖ X: delete every edge hit by X and every vertex left with no edge.

    Vertices that had no edge to begin with survive unless they are in X.
    """
    x = frozenset(removed)
    stray = x - hypergraph.vertices
    if stray:
        raise UnknownVertexError(min(stray))
    if not x:
        return hypergraph
    hit = hypergraph.edges_of(x)
    dropped = set(x)
    for v in hypergraph.vertices - x:
        incident = hypergraph.incidence[v]
        if incident and incident <= hit:
            dropped.add(v)
    edges = {e: members for e, members in hypergraph.edges.items() if e not in hit}
    return Hypergraph(hypergraph.vertices - dropped, edges, hypergraph.next_edge_id)


_Chooser = Callable[[set[int], dict[int, int]], int]
_PeelStep = tuple[int, int, frozenset[int], tuple[int, ...]]


def _peel(hypergraph: Hypergraph, choose: _Chooser) -> list[_PeelStep]:
    """Runs the shrink-peeling loop.

    Returns one record per chosen vertex: (vertex, degree when peeled,
    edges removed with it, vertices removed as a side effect).
    """
    live_degree = {v: len(hypergraph.incidence[v]) for v in hypergraph.vertices}
    live_edges = set(hypergraph.edges)
    remaining = set(hypergraph.vertices)
    steps = []
    while remaining:
        v = choose(remaining, live_degree)
        remaining.discard(v)
        removed_edges = hypergraph.incidence[v] & live_edges
        touched: set[int] = set()
        for edge_id in removed_edges:
            live_edges.discard(edge_id)
            for u in hypergraph.edges[edge_id]:
                if u != v and u in remaining:
                    live_degree[u] -= 1
                    touched.add(u)
        co_removed = tuple(sorted(u for u in touched if live_degree[u] == 0))
        remaining.difference_update(co_removed)
        steps.append((v, len(removed_edges), frozenset(removed_edges), co_removed))
    return steps


def _min_degree(remaining: set[int], live_degree: dict[int, int]) -> int:
    return min(remaining, key=lambda u: (live_degree[u], u))


def degeneracy_order(hypergraph: Hypergraph) -> DegeneracyOrder:
    """Min-degree peeling with H := H ⊖ {v} after each pick.

    Ties go to the smallest id. Vertices removed as a side effect of a
    shrink are recorded right after the picked vertex with degree 0.
    """
    order: list[tuple[int, int]] = []
    for v, d, _, co_removed in _peel(hypergraph, _min_degree):
        order.append((v, d))
        order.extend((u, 0) for u in co_removed)
    result = DegeneracyOrder(tuple(order))
    logger.debug("Degeneracy %d over %d vertices", result.degeneracy, hypergraph.n)
    return result


def proper_coloring(hypergraph: Hypergraph, order: DegeneracyOrder) -> Coloring:
    """Colors H with at most deg(H)+1 colors by reinserting peeled vertices.

    Requires every edge to have at least two vertices.
    """
    small = [e for e, members in hypergraph.edges.items() if len(members) <= 1]
    if small:
        raise PreconditionError(
            f"Proper coloring needs edges of size >= 2; edge {small[0]} is smaller"
        )
    if set(order.vertices) != set(hypergraph.vertices) or len(order.order) != len(
        hypergraph.vertices
    ):
        raise PreconditionError("Degeneracy order does not cover the hypergraph")

    position = {v: i for i, v in enumerate(order.vertices)}

    def follow_order(remaining: set[int], live_degree: dict[int, int]) -> int:
        return min(remaining, key=position.__getitem__)

    # Reinsert in reverse peeling order
    palette = range(1, order.degeneracy + 2)
    color: dict[int, int] = {}
    for v, _, removed_edges, co_removed in reversed(_peel(hypergraph, follow_order)):
        used: set[int] = set()
        for edge_id in sorted(removed_edges):
            colored = [color[u] for u in hypergraph.edges[edge_id] if u in color]
            if colored:
                used.add(min(colored))
        if not used:
            used = {1}
        # Every reappearing edge already has a colour other than v's
        free = [c for c in palette if c not in used]
        if free:
            color[v] = free[0]
        elif not removed_edges:
            color[v] = 1
        else:
            raise PreconditionError("Degeneracy order does not match the hypergraph")
        # Co-removed vertices only sit in edges that v already splits
        fallback = min(used)
        for u in co_removed:
            color.setdefault(u, fallback)
    return Coloring(dict(sorted(color.items())))


def is_hitting_set(hypergraph: Hypergraph, chosen: Iterable[int]) -> bool:
    s = frozenset(chosen)
    return all(members & s for members in hypergraph.edges.values())


def is_independent(hypergraph: Hypergraph, chosen: Iterable[int]) -> bool:
    s = frozenset(chosen)
    return not any(members <= s for members in hypergraph.edges.values())


def is_dominating_set(digraph: Digraph, chosen: Iterable[int]) -> bool:
    """Every vertex outside ``chosen`` has an in-neighbor inside it."""
    s = frozenset(chosen)
    return all(
        v in s or digraph.in_neighbors(v) & s for v in digraph.vertices
    )
