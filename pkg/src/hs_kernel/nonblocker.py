"""
Directed Nonblocker: does D have a dominating set of size at most n − k?

Isolated vertices are stripped and all sources are contracted into one.
What is left has at most one source and no isolated vertex, so it has a
dominating set of size at most 2n/3: either n ≥ 3k and the answer is YES,
or fewer than 3k vertices remain.

A second, quadratic path goes through Hitting Set below n and is kept to
cross-check the first.
"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass

from hs_kernel.bounds import nonblocker_bound, nonblocker_quadratic_bound
from hs_kernel.errors import (
    InvalidWitnessError,
    InvariantViolation,
    PreconditionError,
    UnknownVertexError,
)
from hs_kernel.hypercore import (
    Digraph,
    Hypergraph,
    is_dominating_set,
    shrink,
)
from hs_kernel.kernel_below_n import (
    BelowNInstance,
    complete_below_n,
    decide_or_kernel_below_n,
)
from hs_kernel.oracles import DEFAULT_NODE_BUDGET, min_dominating_set
from hs_kernel.outcome import Decided, Kernel, KernelOutcome

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NonblockerInstance:
    digraph: Digraph
    k: int

    @property
    def target(self) -> int:
        """Largest admissible dominating-set size, n − k."""
        return self.digraph.n - self.k


@dataclass(frozen=True)
class IsolatedDeleted:
    vertex: int

    @property
    def k_delta(self) -> int:
        return 0


@dataclass(frozen=True)
class SourcesContracted:
    sources: frozenset[int]
    merged: int

    @property
    def k_delta(self) -> int:
        return 0


NonblockerStep = IsolatedDeleted | SourcesContracted
NonblockerTrace = tuple[NonblockerStep, ...]


def _delete_isolated(digraph: Digraph, v: int) -> Digraph:
    if v not in digraph.vertices:
        raise UnknownVertexError(v)
    if digraph.in_degree(v) or digraph.out_degree(v):
        raise PreconditionError(f"Vertex {v} is not isolated")
    return Digraph(digraph.vertices - {v}, digraph.arcs, digraph.next_vertex_id)


def _contract(digraph: Digraph, sources: frozenset[int], merged: int) -> Digraph:
    """Replaces ``sources`` by the single vertex ``merged`` with arcs to N⁺(S)."""
    stray = sources - digraph.vertices
    if stray:
        raise UnknownVertexError(min(stray))
    if merged in digraph.vertices:
        raise PreconditionError(f"Vertex id {merged} is already in use")
    targets: set[int] = set()
    for s in sources:
        if digraph.in_degree(s):
            raise PreconditionError(f"Vertex {s} is not a source")
        targets |= digraph.out_neighbors(s)
    arcs = {(u, v) for u, v in digraph.arcs if u not in sources}
    arcs |= {(merged, v) for v in targets}
    return Digraph(
        (digraph.vertices - sources) | {merged},
        frozenset(arcs),
        max(digraph.next_vertex_id, merged + 1),
    )


def strip_isolated(
    inst: NonblockerInstance,
) -> tuple[NonblockerInstance, tuple[IsolatedDeleted, ...]]:
    """Deletes every isolated vertex; each one is in every dominating set."""
    steps = tuple(IsolatedDeleted(v) for v in inst.digraph.isolated)
    digraph = inst.digraph
    for step in steps:
        digraph = _delete_isolated(digraph, step.vertex)
    if steps:
        logger.debug("Stripped %d isolated vertices", len(steps))
    return NonblockerInstance(digraph, inst.k), steps


def contract_sources(
    inst: NonblockerInstance,
) -> tuple[NonblockerInstance, SourcesContracted] | None:
    """Merges all sources into one fresh vertex; absent with at most one source."""
    digraph = inst.digraph
    if digraph.isolated:
        raise PreconditionError("Strip isolated vertices before contracting sources")
    sources = frozenset(digraph.sources)
    if len(sources) <= 1:
        return None
    step = SourcesContracted(sources, digraph.next_vertex_id)
    contracted = _contract(digraph, sources, step.merged)
    logger.debug("Contracted sources %s into %d", sorted(sources), step.merged)
    return NonblockerInstance(contracted, inst.k), step


def high_outdegree_rule(inst: NonblockerInstance) -> Decided | None:
    """YES as soon as one vertex dominates k others on its own."""
    digraph = inst.digraph
    for v in sorted(digraph.vertices):
        if digraph.out_degree(v) >= inst.k:
            return Decided(True, digraph.vertices - digraph.out_neighbors(v))
    return None


def to_hitting_set(digraph: Digraph) -> Hypergraph:
    """One edge N⁻[v] per vertex, with edge id v.

    S hits every edge exactly when S dominates D.
    """
    edges = {v: digraph.closed_in_neighborhood(v) for v in digraph.vertices}
    return Hypergraph(digraph.vertices, edges)


def _max_degree_vertex(h: Hypergraph) -> int:
    return min(h.vertices, key=lambda v: (-len(h.incidence[v]), v))


def hitting_set_third(hypergraph: Hypergraph) -> frozenset[int]:
    """Hitting set of size at most (n + m) / 3.

    Needs edges of size two or more, except for at most one unit edge {v}
    where v also lies in some other edge.
    """
    if hypergraph.is_infeasible:
        raise PreconditionError(f"Edge {hypergraph.empty_edges[0]} is empty")
    units = [e for e, members in hypergraph.edges.items() if len(members) == 1]
    if len(units) > 1:
        raise PreconditionError(f"More than one unit edge: {units}")
    if units:
        (v,) = hypergraph.edges[units[0]]
        if len(hypergraph.incidence[v]) < 2:
            raise PreconditionError(f"Unit edge {units[0]} is the only edge of {v}")

    h = hypergraph
    chosen: set[int] = set()
    while h.edges:
        unit = next((m for m in h.edges.values() if len(m) == 1), None)
        if unit is not None:
            (u,) = unit
        else:
            u = _max_degree_vertex(h)
        chosen.add(u)
        h = shrink(h, {u})

    if len(chosen) > (hypergraph.n + hypergraph.m) // 3:
        raise InvariantViolation(
            f"Hitting set of size {len(chosen)} exceeds (n+m)/3 for "
            f"n={hypergraph.n}, m={hypergraph.m}"
        )
    return frozenset(chosen)


def dominating_two_thirds(digraph: Digraph) -> frozenset[int]:
    """Dominating set of size at most 2n/3."""
    if digraph.isolated:
        raise PreconditionError(f"Isolated vertices present: {list(digraph.isolated)}")
    if len(digraph.sources) > 1:
        raise PreconditionError(f"More than one source: {list(digraph.sources)}")
    return hitting_set_third(to_hitting_set(digraph))


def lift_witness_nb(
    trace: Iterable[NonblockerStep],
    witness: Iterable[int],
    kernel: NonblockerInstance | None = None,
) -> frozenset[int]:
    """Turns a dominating set of the preprocessed digraph into one of the original."""
    lifted = set(witness)
    if kernel is not None and not (
        lifted <= kernel.digraph.vertices
        and is_dominating_set(kernel.digraph, lifted)
        and len(lifted) <= kernel.target
    ):
        raise InvalidWitnessError("Witness is not a small enough dominating set")
    for step in reversed(tuple(trace)):
        match step:
            case SourcesContracted(sources=sources, merged=merged):
                if merged not in lifted:
                    raise InvalidWitnessError(
                        f"Contracted source {merged} is missing from the witness"
                    )
                lifted.discard(merged)
                lifted |= sources
            case IsolatedDeleted(vertex=v):
                lifted.add(v)
    return frozenset(lifted)


def replay_nonblocker(
    inst: NonblockerInstance, trace: Iterable[NonblockerStep]
) -> NonblockerInstance:
    """Re-applies a trace to the original instance."""
    digraph = inst.digraph
    for step in trace:
        match step:
            case IsolatedDeleted(vertex=v):
                digraph = _delete_isolated(digraph, v)
            case SourcesContracted(sources=sources, merged=merged):
                digraph = _contract(digraph, sources, merged)
    return NonblockerInstance(digraph, inst.k)


def preprocess(inst: NonblockerInstance) -> tuple[NonblockerInstance, NonblockerTrace]:
    stripped, steps = strip_isolated(inst)
    fired = contract_sources(stripped)
    if fired is None:
        return stripped, steps
    contracted, step = fired
    return contracted, (*steps, step)


def _decide_yes(
    original: NonblockerInstance, trace: NonblockerTrace, witness: Iterable[int]
) -> Decided:
    lifted = lift_witness_nb(trace, witness)
    if not (
        is_dominating_set(original.digraph, lifted) and len(lifted) <= original.target
    ):
        raise InvariantViolation("Lifted nonblocker witness does not verify")
    return Decided(True, lifted)


def kernelize_nonblocker(inst: NonblockerInstance) -> KernelOutcome:
    """
    Decides the instance or returns a kernel with at most 3k − 1 vertices.

    Args:
        inst: Digraph and parameter k; the question is whether n − k
              vertices dominate it

    Returns:
        KernelOutcome: Decided, or a Kernel over the preprocessed digraph
    """
    reduced, trace = preprocess(inst)
    digraph, k = reduced.digraph, reduced.k
    if k <= 0:
        return _decide_yes(inst, trace, digraph.vertices)
    if k > digraph.n:
        return Decided(False)
    # n - 2n/3 >= k once n >= 3k
    if digraph.n >= 3 * k:
        logger.info("n=%d >= 3k=%d, taking a 2n/3 dominating set", digraph.n, 3 * k)
        return _decide_yes(inst, trace, dominating_two_thirds(digraph))

    if digraph.n > nonblocker_bound(k):
        raise InvariantViolation(f"Nonblocker kernel has {digraph.n} vertices, k={k}")
    logger.info("Nonblocker kernel: n=%d k=%d", digraph.n, k)
    return Kernel(reduced, trace)


def kernelize_nonblocker_quadratic(inst: NonblockerInstance) -> KernelOutcome:
    """Kernel with at most k² + k − 1 vertices, via Hitting Set below n.

    Once no vertex has out-degree k, every N⁻[v] image has degree at most k,
    so the below-n kernel is small. The returned kernel is a BelowNInstance.
    """
    decided = high_outdegree_rule(inst)
    if decided is not None:
        return decided
    # Closed in-neighbourhoods as edges: dominating sets are exactly hitting sets
    outcome = decide_or_kernel_below_n(
        BelowNInstance(to_hitting_set(inst.digraph), inst.k)
    )
    if isinstance(outcome, Kernel):
        n = outcome.instance.hypergraph.n
        if n > nonblocker_quadratic_bound(inst.k):
            raise InvariantViolation(
                f"Quadratic nonblocker kernel has {n} vertices, k={inst.k}"
            )
    elif outcome.answer and not is_dominating_set(inst.digraph, outcome.witness):
        raise InvariantViolation("Below-n witness does not dominate the digraph")
    return outcome


def complete_nonblocker(
    outcome: KernelOutcome, node_budget: int = DEFAULT_NODE_BUDGET
) -> Decided:
    """Finishes either nonblocker kernel with the exact solver."""
    if isinstance(outcome, Decided):
        return outcome
    if isinstance(outcome.instance, BelowNInstance):
        return complete_below_n(outcome, node_budget)
    kernel: NonblockerInstance = outcome.instance
    best = min_dominating_set(kernel.digraph, node_budget)
    if best.optimum > kernel.target:
        return Decided(False)
    return Decided(True, lift_witness_nb(outcome.trace, best.witness, kernel))
