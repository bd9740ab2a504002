"""
Hitting Set below m: is there a hitting set of size at most m − k?

The pipeline alternates the three local reduction rules with a greedy
search for a mini-hitting set. When the greedy search fails it leaves a
small edge set C behind, and vertices are grouped by which edges of C they
hit; an oversized group loses a vertex and the pipeline starts over. What
survives has at most k·4^k vertices and edges.
"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass

from hs_kernel.bounds import below_m_bound
from hs_kernel.errors import (
    InfeasibleInstanceError,
    InvalidWitnessError,
    InvariantViolation,
    PreconditionError,
)
from hs_kernel.hypercore import (
    Hypergraph,
    delete_edge,
    delete_vertex,
    is_hitting_set,
)
from hs_kernel.kernel_below_n import BelowNInstance
from hs_kernel.oracles import DEFAULT_NODE_BUDGET, min_hitting_set
from hs_kernel.outcome import Decided, Kernel, KernelOutcome

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BelowMInstance:
    hypergraph: Hypergraph
    k: int

    @property
    def target(self) -> int:
        """Largest admissible hitting-set size, m − k."""
        return self.hypergraph.m - self.k


@dataclass(frozen=True)
class SupersetEdgeDeleted:
    kept: int
    deleted: int

    @property
    def k_delta(self) -> int:
        return -1


@dataclass(frozen=True)
class DominatedVertexDeleted:
    deleted: int
    dominating: int

    @property
    def k_delta(self) -> int:
        return 0


@dataclass(frozen=True)
class UnitSelfDeleted:
    vertex: int
    edge: int

    @property
    def k_delta(self) -> int:
        return 0


@dataclass(frozen=True)
class ClassVertexDeleted:
    vertex: int
    signature: frozenset[int]

    @property
    def k_delta(self) -> int:
        return 0


BelowMStep = (
    SupersetEdgeDeleted | DominatedVertexDeleted | UnitSelfDeleted | ClassVertexDeleted
)
BelowMTrace = tuple[BelowMStep, ...]


@dataclass(frozen=True)
class MiniHittingSet:
    """At most k vertices that hit at least k more edges than their count."""

    vertices: frozenset[int]

    def is_valid_for(self, inst: BelowMInstance) -> bool:
        h = inst.hypergraph
        if not self.vertices <= h.vertices:
            return False
        hit = h.edges_of(self.vertices)
        return len(self.vertices) <= inst.k and len(hit) >= len(self.vertices) + inst.k


@dataclass(frozen=True)
class LocalizationState:
    """Where the greedy search stopped: S*, C = F[S*] and I = F ∖ C."""

    s_star: frozenset[int]
    c_edges: frozenset[int]
    i_edges: frozenset[int]

    def signature(self, hypergraph: Hypergraph, v: int) -> frozenset[int]:
        """C[v]: the edges of C containing ``v``."""
        return hypergraph.incidence[v] & self.c_edges


def rule_subset(
    inst: BelowMInstance,
) -> tuple[BelowMInstance, SupersetEdgeDeleted] | None:
    """Deletes a superset edge e' ⊇ e and lowers k by one.

    Pairs are scanned as (kept, deleted) in id order, so of two parallel
    edges the later one goes.
    """
    edges = inst.hypergraph.edges
    for kept, small in edges.items():
        for deleted, big in edges.items():
            if kept != deleted and small <= big:
                step = SupersetEdgeDeleted(kept, deleted)
                reduced = delete_edge(inst.hypergraph, deleted)
                return BelowMInstance(reduced, inst.k + step.k_delta), step
    return None


def rule_subelement(
    inst: BelowMInstance,
) -> tuple[BelowMInstance, DominatedVertexDeleted] | None:
    """Deletes u when some other vertex v lies in every edge u lies in."""
    h = inst.hypergraph
    ordered = sorted(h.vertices)
    for u in ordered:
        for v in ordered:
            if u != v and h.incidence[u] <= h.incidence[v]:
                step = DominatedVertexDeleted(u, v)
                return BelowMInstance(delete_vertex(h, u), inst.k), step
    return None


def rule_unit_self(
    inst: BelowMInstance,
) -> tuple[BelowMInstance, UnitSelfDeleted] | None:
    h = inst.hypergraph
    for edge_id, members in h.edges.items():
        if len(members) != 1:
            continue
        (v,) = members
        if h.incidence[v] == {edge_id}:
            step = UnitSelfDeleted(v, edge_id)
            reduced = delete_vertex(delete_edge(h, edge_id), v)
            return BelowMInstance(reduced, inst.k), step
    return None


_RULES = (rule_subset, rule_subelement, rule_unit_self)


def reduce_m(inst: BelowMInstance) -> tuple[BelowMInstance, BelowMTrace]:
    """Applies the subset, subelement and unit rules (in that order) until none fires.

    Raises InfeasibleInstanceError on an empty edge; the rules themselves
    never create one.
    """
    if inst.hypergraph.is_infeasible:
        raise InfeasibleInstanceError(
            f"Edge {inst.hypergraph.empty_edges[0]} is empty; no hitting set exists"
        )
    steps: list[BelowMStep] = []
    while True:
        for rule in _RULES:
            fired = rule(inst)
            if fired is not None:
                inst, step = fired
                steps.append(step)
                logger.debug("%s", step)
                break
        else:
            return inst, tuple(steps)


def _by_gain(item: tuple[int, int]) -> tuple[int, int]:
    vertex, gain = item
    return -gain, vertex


def greedy_localize(inst: BelowMInstance) -> MiniHittingSet | LocalizationState:
    """Greedy S*: keep adding the vertex that hits the most new edges.

    Stops as soon as S* is a mini-hitting set, or when no vertex would hit
    more than one new edge.
    """
    h = inst.hypergraph
    s_star: set[int] = set()
    covered: frozenset[int] = frozenset()
    while len(covered) < len(s_star) + inst.k:
        gains = {v: len(h.incidence[v] - covered) for v in h.vertices - s_star}
        if not gains:
            break
        best, gain = min(gains.items(), key=_by_gain)
        if gain <= 1:
            break
        s_star.add(best)
        covered = covered | h.incidence[best]
    if len(covered) >= len(s_star) + inst.k:
        return MiniHittingSet(frozenset(s_star))
    return LocalizationState(
        frozenset(s_star), covered, frozenset(h.edges) - covered
    )


def expand_mini(inst: BelowMInstance, s_mini: Iterable[int]) -> frozenset[int]:
    """Grows a mini-hitting set into a hitting set of size at most m − k.

    Every edge still unhit contributes its smallest vertex.
    """
    chosen = set(s_mini)
    for edge_id, members in inst.hypergraph.edges.items():
        if members & chosen:
            continue
        if not members:
            raise InfeasibleInstanceError(f"Edge {edge_id} is empty")
        chosen.add(min(members))
    return frozenset(chosen)


def compress_to_mini(inst: BelowMInstance, hitting: Iterable[int]) -> MiniHittingSet:
    """Extracts a mini-hitting set from a hitting set of size at most m − k."""
    h = inst.hypergraph
    s = frozenset(hitting)
    if not (s <= h.vertices and is_hitting_set(h, s) and len(s) <= inst.target):
        raise PreconditionError("Expected a hitting set of size at most m - k")
    if len(s) <= inst.k:
        return MiniHittingSet(s)
    picked: set[int] = set()
    covered: frozenset[int] = frozenset()
    for _ in range(inst.k):
        gains = {v: len(h.incidence[v] - covered) for v in s - picked}
        best, _ = min(gains.items(), key=_by_gain)
        picked.add(best)
        covered = covered | h.incidence[best]
    return MiniHittingSet(frozenset(picked))


def rule_c_neighbourhood(
    inst: BelowMInstance, state: LocalizationState
) -> tuple[BelowMInstance, ClassVertexDeleted] | None:
    """Deletes one vertex from a class of more than k vertices with equal C[v].

    Among oversized classes the one holding the smallest id is used, and its
    smallest vertex is deleted.
    """
    h = inst.hypergraph
    classes: dict[frozenset[int], list[int]] = {}
    for v in sorted(h.vertices):
        classes.setdefault(state.signature(h, v), []).append(v)
    oversized = [
        (members[0], signature)
        for signature, members in classes.items()
        if len(members) > inst.k
    ]
    if not oversized:
        return None
    v, signature = min(oversized, key=lambda item: item[0])
    step = ClassVertexDeleted(v, signature)
    logger.debug(
        "Class %s has more than k=%d vertices, deleting %d",
        sorted(signature),
        inst.k,
        v,
    )
    return BelowMInstance(delete_vertex(h, v), inst.k), step


def lift_witness_m(
    trace: Iterable[BelowMStep],
    witness: Iterable[int],
    kernel: BelowMInstance | None = None,
) -> frozenset[int]:
    """Turns a kernel hitting set into one for the original instance."""
    lifted = set(witness)
    if kernel is not None and not (
        lifted <= kernel.hypergraph.vertices
        and is_hitting_set(kernel.hypergraph, lifted)
        and len(lifted) <= kernel.target
    ):
        raise InvalidWitnessError("Witness is not a small enough hitting set")
    for step in reversed(tuple(trace)):
        if isinstance(step, UnitSelfDeleted):
            lifted.add(step.vertex)
    return frozenset(lifted)


def replay_below_m(
    inst: BelowMInstance, trace: Iterable[BelowMStep]
) -> BelowMInstance:
    """Re-applies a trace to the original instance."""
    h, k = inst.hypergraph, inst.k
    for step in trace:
        match step:
            case SupersetEdgeDeleted(deleted=edge_id):
                h = delete_edge(h, edge_id)
            case UnitSelfDeleted(vertex=v, edge=edge_id):
                h = delete_vertex(delete_edge(h, edge_id), v)
            case DominatedVertexDeleted(deleted=v) | ClassVertexDeleted(vertex=v):
                h = delete_vertex(h, v)
        k += step.k_delta
    return BelowMInstance(h, k)


def _decide_yes(
    original: BelowMInstance, trace: BelowMTrace, witness: Iterable[int]
) -> Decided:
    lifted = lift_witness_m(trace, witness)
    if not (
        is_hitting_set(original.hypergraph, lifted) and len(lifted) <= original.target
    ):
        raise InvariantViolation("Lifted below-m witness does not verify")
    return Decided(True, lifted)


def _one_per_edge(h: Hypergraph) -> frozenset[int]:
    return frozenset(min(members) for members in h.edges.values())


def kernelize_below_m(inst: BelowMInstance) -> KernelOutcome:
    """
    Decides the instance or returns a kernel with at most k·4^k vertices.

    Args:
        inst: Hypergraph and parameter k; the target size is m − k

    Returns:
        KernelOutcome: Decided with a witness for the original instance, or a
        Kernel whose trace replays onto ``inst``

    Raises:
        InvariantViolation: If the kernel exceeds k·4^k or a lifted witness
            does not verify
    """
    if inst.hypergraph.is_infeasible:
        return Decided(False)
    if inst.k <= 0:
        return _decide_yes(inst, (), _one_per_edge(inst.hypergraph))
    if inst.k > inst.hypergraph.m:
        return Decided(False)

    current = inst
    trace: list[BelowMStep] = []
    while True:
        current, steps = reduce_m(current)
        trace.extend(steps)
        h, k = current.hypergraph, current.k
        # The subset rule can push k to the trivial cases
        if k <= 0:
            return _decide_yes(inst, tuple(trace), _one_per_edge(h))
        if k > h.m:
            return Decided(False)
        found = greedy_localize(current)
        if isinstance(found, MiniHittingSet):
            logger.info("Mini-hitting set of size %d found", len(found.vertices))
            return _decide_yes(inst, tuple(trace), expand_mini(current, found.vertices))
        # A class deletion can re-enable the local rules: start over
        fired = rule_c_neighbourhood(current, found)
        if fired is None:
            break
        current, step = fired
        trace.append(step)

    bound = below_m_bound(k)
    if h.n > bound or h.m > bound:
        raise InvariantViolation(
            f"Below-m kernel n={h.n}, m={h.m} exceeds k*4^k={bound} for k={k}"
        )
    logger.info("Below-m kernel: n=%d m=%d k=%d", h.n, h.m, k)
    return Kernel(current, tuple(trace))


def complete_below_m(
    outcome: KernelOutcome, node_budget: int = DEFAULT_NODE_BUDGET
) -> Decided:
    """Finishes a kernel with the exact solver and lifts its witness."""
    if isinstance(outcome, Decided):
        return outcome
    kernel: BelowMInstance = outcome.instance
    best = min_hitting_set(kernel.hypergraph, node_budget)
    if best.optimum > kernel.target:
        return Decided(False)
    return Decided(True, lift_witness_m(outcome.trace, best.witness, kernel))


def to_below_n(inst: BelowMInstance) -> BelowNInstance:
    """Same question asked below n: target m − k becomes n − (k + n − m)."""
    h = inst.hypergraph
    return BelowNInstance(h, inst.k + h.n - h.m)
