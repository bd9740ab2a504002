"""
Hitting Set below n: is there a hitting set of size at most n − k?

Equivalently, is there an independent set of size at least k. Unit edges
are shrunk away first. After that, a proper coloring with deg(H)+1 colors
either shows a big enough color class (YES) or the instance has fewer than
(d+1)k vertices and is returned as the kernel.
"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass

from hs_kernel.bounds import below_n_edge_bound, below_n_vertex_bound
from hs_kernel.errors import InvalidWitnessError, InvariantViolation
from hs_kernel.hypercore import (
    Hypergraph,
    degeneracy_order,
    is_hitting_set,
    proper_coloring,
    shrink,
)
from hs_kernel.oracles import DEFAULT_NODE_BUDGET, min_hitting_set
from hs_kernel.outcome import Decided, Kernel, KernelOutcome

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BelowNInstance:
    hypergraph: Hypergraph
    k: int

    @property
    def target(self) -> int:
        """Largest admissible hitting-set size, n − k."""
        return self.hypergraph.n - self.k


@dataclass(frozen=True)
class UnitEdgeShrunk:
    """A unit edge {vertex} forced ``vertex`` in; H := H ⊖ {vertex}.

    ``co_removed`` are the vertices that vanished with it; each of them joins
    any independent set for free, hence k drops by their number.
    """

    vertex: int
    co_removed: frozenset[int]

    @property
    def k_delta(self) -> int:
        return -len(self.co_removed)


BelowNTrace = tuple[UnitEdgeShrunk, ...]


def rule_unit_edge(
    inst: BelowNInstance,
) -> tuple[BelowNInstance, UnitEdgeShrunk] | None:
    """Shrinks away the vertex of the first unit edge (in edge-id order)."""
    h = inst.hypergraph
    for members in h.edges.values():
        if len(members) == 1:
            (v,) = members
            break
    else:
        return None
    reduced = shrink(h, {v})
    co_removed = h.vertices - reduced.vertices - {v}
    step = UnitEdgeShrunk(v, frozenset(co_removed))
    logger.debug("Unit edge {%d}: shrunk, %d co-removed", v, len(co_removed))
    return BelowNInstance(reduced, inst.k + step.k_delta), step


def reduce_unit_edges(inst: BelowNInstance) -> tuple[BelowNInstance, BelowNTrace]:
    steps: list[UnitEdgeShrunk] = []
    while (fired := rule_unit_edge(inst)) is not None:
        inst, step = fired
        steps.append(step)
    return inst, tuple(steps)


def lift_witness_n(
    trace: Iterable[UnitEdgeShrunk],
    witness: Iterable[int],
    kernel: BelowNInstance | None = None,
) -> frozenset[int]:
    """Turns a kernel hitting set into one for the original instance.

    Each shrink step adds back its forced vertex. When ``kernel`` is given the
    incoming witness is checked against it first.
    """
    lifted = set(witness)
    if kernel is not None and not (
        lifted <= kernel.hypergraph.vertices
        and is_hitting_set(kernel.hypergraph, lifted)
        and len(lifted) <= kernel.target
    ):
        raise InvalidWitnessError("Witness is not a small enough hitting set")
    for step in reversed(tuple(trace)):
        lifted.add(step.vertex)
    return frozenset(lifted)


def replay_below_n(
    inst: BelowNInstance, trace: Iterable[UnitEdgeShrunk]
) -> BelowNInstance:
    """Re-applies a trace to the original instance."""
    for step in trace:
        reduced = shrink(inst.hypergraph, {step.vertex})
        inst = BelowNInstance(reduced, inst.k + step.k_delta)
    return inst


def _decide_yes(
    original: BelowNInstance, trace: BelowNTrace, witness: Iterable[int]
) -> Decided:
    lifted = lift_witness_n(trace, witness)
    if not (
        is_hitting_set(original.hypergraph, lifted) and len(lifted) <= original.target
    ):
        raise InvariantViolation("Lifted below-n witness does not verify")
    return Decided(True, lifted)


def decide_or_kernel_below_n(inst: BelowNInstance) -> KernelOutcome:
    """
    Decides the instance or returns a kernel with fewer than (d+1)k vertices.

    Args:
        inst: Hypergraph and parameter k; the target size is n − k

    Returns:
        KernelOutcome: Decided, or a Kernel free of unit edges

    Raises:
        InvariantViolation: If the kernel breaks its vertex or edge bound
    """
    if inst.hypergraph.is_infeasible:
        return Decided(False)
    reduced, trace = reduce_unit_edges(inst)
    h, k = reduced.hypergraph, reduced.k
    if k <= 0:
        return _decide_yes(inst, trace, h.vertices)
    if k > h.n:
        return Decided(False)

    # Some colour class of a (d+1)-colouring is independent and has >= k vertices
    order = degeneracy_order(h)
    d = order.degeneracy
    if h.n >= (d + 1) * k:
        independent = proper_coloring(h, order).largest_class()
        logger.info("Color class of size %d >= k=%d", len(independent), k)
        return _decide_yes(inst, trace, h.vertices - independent)

    # Kernel guarantees
    if h.n > below_n_vertex_bound(d, k) or h.m > below_n_edge_bound(d, h.n):
        raise InvariantViolation(
            f"Below-n kernel n={h.n}, m={h.m} breaks the bound for d={d}, k={k}"
        )
    if any(len(members) == 1 for members in h.edges.values()):
        raise InvariantViolation("Below-n kernel still has a unit edge")
    logger.info("Below-n kernel: n=%d m=%d k=%d d=%d", h.n, h.m, k, d)
    return Kernel(reduced, trace)


def complete_below_n(
    outcome: KernelOutcome, node_budget: int = DEFAULT_NODE_BUDGET
) -> Decided:
    """Finishes a kernel with the exact solver and lifts its witness."""
    if isinstance(outcome, Decided):
        return outcome
    kernel: BelowNInstance = outcome.instance
    best = min_hitting_set(kernel.hypergraph, node_budget)
    if best.optimum > kernel.target:
        return Decided(False)
    return Decided(True, lift_witness_n(outcome.trace, best.witness, kernel))
