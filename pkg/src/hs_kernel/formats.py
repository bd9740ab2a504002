"""
Text formats: hypergraphs (``p hg``), digraphs (``p dg``), witnesses,
reduction traces and DIMACS CNF export.

Files use 1-based contiguous ids. Internal ids can leave that range (source
contraction allocates fresh ids, reductions delete vertices), so the
serializers renumber and record the mapping as ``c map <new> <old>``
comment lines (``c emap`` for edge ids).
"""

import logging
from collections.abc import Iterable, Mapping

from hs_kernel.errors import InstanceFormatError, PreconditionError
from hs_kernel.hypercore import Digraph, Hypergraph
from hs_kernel.kernel_below_m import (
    BelowMStep,
    ClassVertexDeleted,
    DominatedVertexDeleted,
    SupersetEdgeDeleted,
    UnitSelfDeleted,
)
from hs_kernel.kernel_below_n import BelowNInstance, UnitEdgeShrunk
from hs_kernel.nonblocker import IsolatedDeleted, NonblockerStep, SourcesContracted

logger = logging.getLogger(__name__)

TraceStep = BelowMStep | UnitEdgeShrunk | NonblockerStep


def _is_comment(line: str) -> bool:
    return line == "c" or line.startswith("c ")


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        message = f"Expected an integer, got {token!r}"
        raise InstanceFormatError(message, lineno) from None


def _header(lines: list[str], kind: str) -> tuple[int, int, int]:
    """Finds ``p <kind> <a> <b>`` and returns (a, b, index of the header line)."""
    for i, raw in enumerate(lines):
        line = raw.strip()
        if not line or _is_comment(line):
            continue
        parts = line.split()
        if len(parts) != 4 or parts[0] != "p" or parts[1] != kind:
            raise InstanceFormatError(
                f"Invalid problem line, expected 'p {kind} <n> <m>': {line!r}", i + 1
            )
        a, b = _parse_int(parts[2], i + 1), _parse_int(parts[3], i + 1)
        if a < 0 or b < 0:
            raise InstanceFormatError("Negative count in problem line", i + 1)
        return a, b, i
    raise InstanceFormatError(f"Missing 'p {kind}' problem line")


def _vertex_ids(line: str, n: int, lineno: int) -> list[int]:
    ids = [_parse_int(token, lineno) for token in line.split()]
    for v in ids:
        if not 1 <= v <= n:
            raise InstanceFormatError(f"Vertex id {v} out of range 1..{n}", lineno)
    return ids


def parse_hypergraph(text: str) -> Hypergraph:
    """Parses ``p hg <n> <m>`` followed by m edge lines.

    Vertices are 1..n and edges get ids 1..m in file order. A blank line
    inside the body would be an empty edge and is rejected.
    """
    lines = text.splitlines()
    n, m, start = _header(lines, "hg")
    edges: list[frozenset[int]] = []
    for i in range(start + 1, len(lines)):
        lineno = i + 1
        line = lines[i].strip()
        if _is_comment(line):
            continue
        # Trailing blank lines are fine
        if not line:
            if len(edges) < m:
                raise InstanceFormatError("Empty edge line", lineno)
            continue
        if len(edges) == m:
            raise InstanceFormatError(f"More than {m} edge lines", lineno)
        ids = _vertex_ids(line, n, lineno)
        if len(set(ids)) != len(ids):
            raise InstanceFormatError("Duplicate vertex id in edge", lineno)
        edges.append(frozenset(ids))
    if len(edges) != m:
        raise InstanceFormatError(f"Expected {m} edge lines, found {len(edges)}")
    return Hypergraph.from_edges(edges, range(1, n + 1))


def _renumbering(ids: Iterable[int]) -> dict[int, int]:
    """old id -> new id, 1-based in increasing order of the old ids."""
    return {old: new for new, old in enumerate(sorted(ids), start=1)}


def _map_comments(tag: str, renumber: Mapping[int, int]) -> list[str]:
    if all(old == new for old, new in renumber.items()):
        return []
    return [f"c {tag} {new} {old}" for old, new in renumber.items()]


def serialize_hypergraph(hypergraph: Hypergraph) -> str:
    vertex_map = _renumbering(hypergraph.vertices)
    edge_map = _renumbering(hypergraph.edges)
    lines = [
        *_map_comments("map", vertex_map),
        *_map_comments("emap", edge_map),
        f"p hg {hypergraph.n} {hypergraph.m}",
    ]
    for members in hypergraph.edges.values():
        if not members:
            raise PreconditionError("Empty edges cannot be written to a file")
        lines.append(" ".join(str(vertex_map[v]) for v in sorted(members)))
    return "\n".join(lines) + "\n"


def parse_digraph(text: str) -> Digraph:
    """Parses ``p dg <n> <a>`` followed by a arc lines ``u v`` (u -> v).

    Self-loops are dropped with a warning.
    """
    lines = text.splitlines()
    n, a, start = _header(lines, "dg")
    arcs: list[tuple[int, int]] = []
    for i in range(start + 1, len(lines)):
        lineno = i + 1
        line = lines[i].strip()
        if not line or _is_comment(line):
            continue
        ids = _vertex_ids(line, n, lineno)
        if len(ids) != 2:
            raise InstanceFormatError(f"Arc line needs two ids: {line!r}", lineno)
        arcs.append((ids[0], ids[1]))
    if len(arcs) != a:
        raise InstanceFormatError(f"Expected {a} arc lines, found {len(arcs)}")
    return Digraph.normalized(range(1, n + 1), arcs)


def serialize_digraph(digraph: Digraph) -> str:
    vertex_map = _renumbering(digraph.vertices)
    lines = [
        *_map_comments("map", vertex_map),
        f"p dg {digraph.n} {len(digraph.arcs)}",
    ]
    lines.extend(
        f"{vertex_map[u]} {vertex_map[v]}" for u, v in sorted(digraph.arcs)
    )
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> Hypergraph | Digraph:
    """Dispatches on the problem line: ``p hg`` or ``p dg``."""
    for i, raw in enumerate(text.splitlines()):
        line = raw.strip()
        if not line or _is_comment(line):
            continue
        parts = line.split()
        if len(parts) >= 2 and parts[0] == "p":
            if parts[1] == "hg":
                return parse_hypergraph(text)
            if parts[1] == "dg":
                return parse_digraph(text)
        raise InstanceFormatError(f"Unknown problem line: {line!r}", i + 1)
    raise InstanceFormatError("Missing problem line")


def parse_witness(text: str) -> frozenset[int]:
    """Whitespace-separated vertex ids; ``c`` lines are comments."""
    chosen: set[int] = set()
    for i, raw in enumerate(text.splitlines()):
        line = raw.strip()
        if _is_comment(line):
            continue
        for token in line.split():
            v = _parse_int(token, i + 1)
            if v < 1:
                raise InstanceFormatError(f"Vertex id {v} must be positive", i + 1)
            chosen.add(v)
    return frozenset(chosen)


def serialize_witness(witness: Iterable[int]) -> str:
    return " ".join(str(v) for v in sorted(witness)) + "\n"


def _id_list(ids: Iterable[int]) -> str:
    ordered = sorted(ids)
    return ",".join(str(v) for v in ordered) if ordered else "-"


def _parse_id_list(token: str, lineno: int) -> frozenset[int]:
    if token == "-":
        return frozenset()
    return frozenset(_parse_int(part, lineno) for part in token.split(","))


def _trace_fields(step: TraceStep) -> tuple[str, list[str]]:
    match step:
        case SupersetEdgeDeleted(kept=kept, deleted=deleted):
            return "superset-edge-deleted", [str(kept), str(deleted)]
        case DominatedVertexDeleted(deleted=deleted, dominating=dominating):
            return "dominated-vertex-deleted", [str(deleted), str(dominating)]
        case UnitSelfDeleted(vertex=v, edge=edge_id):
            return "unit-self-deleted", [str(v), str(edge_id)]
        case ClassVertexDeleted(vertex=v, signature=signature):
            return "class-vertex-deleted", [str(v), _id_list(signature)]
        case UnitEdgeShrunk(vertex=v, co_removed=co_removed):
            return "unit-edge-shrunk", [str(v), _id_list(co_removed)]
        case IsolatedDeleted(vertex=v):
            return "isolated-deleted", [str(v)]
        case SourcesContracted(sources=sources, merged=merged):
            return "sources-contracted", [_id_list(sources), str(merged)]
    raise TypeError(f"Not a trace step: {step!r}")


def serialize_trace(trace: Iterable[TraceStep]) -> str:
    """One line per step: ``<tag> <ids...> <k-delta>``."""
    lines = []
    for step in trace:
        tag, fields = _trace_fields(step)
        lines.append(" ".join([tag, *fields, str(step.k_delta)]))
    return "\n".join(lines) + "\n" if lines else ""


def _trace_step(tag: str, fields: list[str], lineno: int) -> TraceStep:
    def ints() -> list[int]:
        return [_parse_int(f, lineno) for f in fields]

    match tag, len(fields):
        case "superset-edge-deleted", 2:
            return SupersetEdgeDeleted(*ints())
        case "dominated-vertex-deleted", 2:
            return DominatedVertexDeleted(*ints())
        case "unit-self-deleted", 2:
            return UnitSelfDeleted(*ints())
        case "class-vertex-deleted", 2:
            return ClassVertexDeleted(
                _parse_int(fields[0], lineno), _parse_id_list(fields[1], lineno)
            )
        case "unit-edge-shrunk", 2:
            return UnitEdgeShrunk(
                _parse_int(fields[0], lineno), _parse_id_list(fields[1], lineno)
            )
        case "isolated-deleted", 1:
            return IsolatedDeleted(_parse_int(fields[0], lineno))
        case "sources-contracted", 2:
            return SourcesContracted(
                _parse_id_list(fields[0], lineno), _parse_int(fields[1], lineno)
            )
    raise InstanceFormatError(
        f"Unknown trace record {tag!r} with {len(fields)} ids", lineno
    )


def parse_trace(text: str) -> tuple[TraceStep, ...]:
    """Parses ``serialize_trace`` output, checking each recorded k-delta."""
    steps = []
    for i, raw in enumerate(text.splitlines()):
        lineno = i + 1
        line = raw.strip()
        if not line or _is_comment(line):
            continue
        tag, *fields = line.split()
        if not fields:
            raise InstanceFormatError(f"Trace record {tag!r} has no k-delta", lineno)
        *ids, delta = fields
        step = _trace_step(tag, ids, lineno)
        if _parse_int(delta, lineno) != step.k_delta:
            raise InstanceFormatError(
                f"Recorded k-delta {delta} does not match {step.k_delta}", lineno
            )
        steps.append(step)
    return tuple(steps)


def export_cnf(inst: BelowNInstance) -> str:
    """DIMACS CNF with one all-negative clause per edge.

    A satisfying assignment with exactly k true variables is an independent
    set of size k, so its false variables hit every edge.
    """
    h = inst.hypergraph
    variable = _renumbering(h.vertices)
    lines = [
        f"c k {inst.k}",
        *_map_comments("map", variable),
        f"p cnf {h.n} {h.m}",
    ]
    for members in h.edges.values():
        literals = [f"-{variable[v]}" for v in sorted(members, key=variable.get)]
        lines.append(" ".join([*literals, "0"]))
    logger.debug("CNF with %d variables and %d clauses", h.n, h.m)
    return "\n".join(lines) + "\n"
