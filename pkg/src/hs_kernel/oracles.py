"""
Exponential-time exact solvers and witness verifiers.

These are the ground truth for every equivalence and size claim made by the
kernelization pipelines. The solvers branch on an uncovered set with the
fewest candidates (which forces unit sets for free) and are practical up to
roughly 25 vertices. Long runs are cancelled through ``node_budget``.
"""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import StrEnum

from hs_kernel.errors import InfeasibleInstanceError, NodeBudgetExceeded
from hs_kernel.hypercore import (
    Digraph,
    Hypergraph,
    is_dominating_set,
    is_hitting_set,
    is_independent,
)

logger = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 5_000_000


@dataclass(frozen=True)
class ExactResult:
    optimum: int
    witness: frozenset[int]
    explored: int


class WitnessKind(StrEnum):
    HITTING = "hitting"
    INDEPENDENT = "independent"
    DOMINATING = "dominating"


def _min_transversal(
    sets: Sequence[frozenset[int]], node_budget: int
) -> tuple[frozenset[int], int]:
    """Smallest vertex set meeting every member of ``sets``.

    Classic branch and bound: pick the uncovered set with the fewest allowed
    vertices, try each one, and ban the earlier alternatives in later
    branches so no subset is explored twice.
    """
    best = frozenset(min(s) for s in sets)
    explored = 0

    def search(
        chosen: frozenset[int], banned: frozenset[int], open_sets: list[frozenset[int]]
    ) -> None:
        nonlocal best, explored
        explored += 1
        if explored > node_budget:
            raise NodeBudgetExceeded(node_budget)
        uncovered = [s for s in open_sets if not s & chosen]
        if not uncovered:
            if len(chosen) < len(best):
                best = chosen
            return
        # One more vertex cannot beat the incumbent
        if len(chosen) + 1 >= len(best):
            return
        # Branch on the most constrained set
        candidates = min((sorted(s - banned) for s in uncovered), key=len)
        for i, v in enumerate(candidates):
            search(chosen | {v}, banned | frozenset(candidates[:i]), uncovered)

    search(frozenset(), frozenset(), list(sets))
    return best, explored


def min_hitting_set(
    hypergraph: Hypergraph, node_budget: int = DEFAULT_NODE_BUDGET
) -> ExactResult:
    """Minimum hitting set t(H)."""
    if hypergraph.is_infeasible:
        raise InfeasibleInstanceError(
            f"Edge {hypergraph.empty_edges[0]} is empty; no hitting set exists"
        )
    witness, explored = _min_transversal(list(hypergraph.edges.values()), node_budget)
    logger.debug("min_hitting_set: optimum %d, %d nodes", len(witness), explored)
    return ExactResult(len(witness), witness, explored)


def max_independent_set(
    hypergraph: Hypergraph, node_budget: int = DEFAULT_NODE_BUDGET
) -> ExactResult:
    """Maximum independent set α(H) = n − t(H)."""
    cover = min_hitting_set(hypergraph, node_budget)
    witness = hypergraph.vertices - cover.witness
    return ExactResult(len(witness), witness, cover.explored)


def min_dominating_set(
    digraph: Digraph, node_budget: int = DEFAULT_NODE_BUDGET
) -> ExactResult:
    """Minimum dominating set γ(D): every N⁻[v] must be met."""
    neighborhoods = [
        digraph.closed_in_neighborhood(v) for v in sorted(digraph.vertices)
    ]
    witness, explored = _min_transversal(neighborhoods, node_budget)
    logger.debug("min_dominating_set: optimum %d, %d nodes", len(witness), explored)
    return ExactResult(len(witness), witness, explored)


def verify(
    kind: WitnessKind | str,
    instance: Hypergraph | Digraph,
    witness: Iterable[int],
    bound: int,
) -> bool:
    """
    Checks the predicate for ``kind`` plus the size bound.

    Args:
        kind: hitting, independent or dominating
        instance: Hypergraph, or Digraph for dominating witnesses
        witness: Vertex ids
        bound: Upper size bound, lower bound for independent witnesses

    Returns:
        bool: True if the witness has the property within the bound

    Raises:
        TypeError: If ``kind`` and the instance type do not match
    """
    kind = WitnessKind(kind)
    chosen = frozenset(witness)
    if not chosen <= instance.vertices:
        return False
    if kind is WitnessKind.DOMINATING:
        if not isinstance(instance, Digraph):
            raise TypeError("Dominating witnesses need a digraph instance")
        return len(chosen) <= bound and is_dominating_set(instance, chosen)
    if not isinstance(instance, Hypergraph):
        raise TypeError(f"{kind} witnesses need a hypergraph instance")
    if kind is WitnessKind.HITTING:
        return len(chosen) <= bound and is_hitting_set(instance, chosen)
    return len(chosen) >= bound and is_independent(instance, chosen)
