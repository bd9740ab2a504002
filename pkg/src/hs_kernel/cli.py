import csv
import functools
import io
import logging
import os
import sys
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from enum import StrEnum
from pathlib import Path
from typing import ParamSpec, TypeVar

import click  # type: ignore

from hs_kernel.bounds import (
    below_m_bound,
    below_n_vertex_bound,
    nonblocker_bound,
    nonblocker_quadratic_bound,
)
from hs_kernel.errors import HSKernelError, InvariantViolation
from hs_kernel.formats import (
    export_cnf,
    parse_digraph,
    parse_hypergraph,
    parse_instance,
    parse_witness,
    serialize_digraph,
    serialize_hypergraph,
    serialize_trace,
    serialize_witness,
)
from hs_kernel.generators import (
    gen_from_graph_is,
    gen_random_degenerate,
    gen_random_digraph,
    gen_random_hypergraph,
)
from hs_kernel.hypercore import Digraph, Hypergraph, degeneracy_order
from hs_kernel.kernel_below_m import (
    BelowMInstance,
    complete_below_m,
    kernelize_below_m,
)
from hs_kernel.kernel_below_n import (
    BelowNInstance,
    complete_below_n,
    decide_or_kernel_below_n,
)
from hs_kernel.nonblocker import (
    NonblockerInstance,
    complete_nonblocker,
    kernelize_nonblocker,
    kernelize_nonblocker_quadratic,
)
from hs_kernel.oracles import (
    DEFAULT_NODE_BUDGET,
    WitnessKind,
    max_independent_set,
    min_dominating_set,
    min_hitting_set,
    verify,
)
from hs_kernel.outcome import Decided, Kernel, KernelOutcome

logger = logging.getLogger(__name__)

DEFAULT_JOBS = min(4, os.cpu_count() or 1)

EXIT_NO = 1
EXIT_USAGE = 2
EXIT_INVARIANT = 3

STATS_COLUMNS = [
    "instance",
    "variant",
    "n",
    "m",
    "k",
    "degeneracy",
    "kernel_n",
    "kernel_m",
    "kernel_k",
    "bound",
    "decision",
]


class Variant(StrEnum):
    BELOW_M = "below-m"
    BELOW_N = "below-n"
    NONBLOCKER = "nonblocker"
    NONBLOCKER_QUADRATIC = "nonblocker-quadratic"

    @property
    def takes_digraph(self) -> bool:
        return self in (Variant.NONBLOCKER, Variant.NONBLOCKER_QUADRATIC)


P = ParamSpec("P")
R = TypeVar("R")


def handle_errors(command: Callable[P, R]) -> Callable[P, R]:
    """Maps library errors to exit codes: 3 for invariant violations, 2 otherwise."""

    @functools.wraps(command)
    def wrapper(*args: P.args, **kwargs: P.kwargs) -> R:
        try:
            return command(*args, **kwargs)
        except InvariantViolation as e:
            click.echo(f"Error: internal invariant violated: {e}", err=True)
            sys.exit(EXIT_INVARIANT)
        except HSKernelError as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_USAGE)

    return wrapper


def run_variant(variant: Variant, text: str, k: int) -> KernelOutcome:
    """Parses ``text`` for ``variant`` and runs its kernelization."""
    if variant.takes_digraph:
        inst = NonblockerInstance(parse_digraph(text), k)
        if variant is Variant.NONBLOCKER:
            return kernelize_nonblocker(inst)
        return kernelize_nonblocker_quadratic(inst)
    h = parse_hypergraph(text)
    if variant is Variant.BELOW_M:
        return kernelize_below_m(BelowMInstance(h, k))
    return decide_or_kernel_below_n(BelowNInstance(h, k))


def complete_variant(
    variant: Variant, outcome: KernelOutcome, node_budget: int
) -> Decided:
    if variant is Variant.BELOW_M:
        return complete_below_m(outcome, node_budget)
    if variant is Variant.BELOW_N:
        return complete_below_n(outcome, node_budget)
    return complete_nonblocker(outcome, node_budget)


def kernel_sizes(variant: Variant, kernel: Kernel, k: int) -> tuple[int, int, int, int]:
    """(n', m', k', bound) of a kernel; m' counts arcs for digraph kernels."""
    inst = kernel.instance
    k_prime = inst.k
    if isinstance(inst, NonblockerInstance):
        digraph = inst.digraph
        return digraph.n, len(digraph.arcs), k_prime, nonblocker_bound(k_prime)
    h = inst.hypergraph
    if variant is Variant.BELOW_M:
        bound = below_m_bound(k_prime)
    elif variant is Variant.NONBLOCKER_QUADRATIC:
        bound = nonblocker_quadratic_bound(k)
    else:
        bound = below_n_vertex_bound(degeneracy_order(h).degeneracy, k_prime)
    return h.n, h.m, k_prime, bound


def _serialize_kernel(kernel: Kernel) -> str:
    inst = kernel.instance
    if isinstance(inst, NonblockerInstance):
        return serialize_digraph(inst.digraph)
    return serialize_hypergraph(inst.hypergraph)


def _echo_decision(decided: Decided) -> None:
    click.echo(str(decided))
    if decided.answer and decided.witness is not None:
        click.echo(serialize_witness(decided.witness), nl=False)


variant_option = click.option(
    "--variant",
    type=click.Choice([v.value for v in Variant]),
    default=Variant.BELOW_M.value,
    show_default=True,
    help="Kernelization pipeline",
)
budget_option = click.option(
    "--node-budget",
    type=click.IntRange(min=1),
    default=DEFAULT_NODE_BUDGET,
    show_default=True,
    help="Branching-node budget of the exact solver",
)
instance_argument = click.argument(
    "file", type=click.Path(exists=True, dir_okay=False, path_type=Path)
)


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log reduction steps")
def cli(verbose: bool) -> None:
    """Kernelization toolkit for Hitting Set and Directed Nonblocker."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="[%(levelname)s] %(name)s: %(message)s",
    )


@cli.command()
@variant_option
@click.option("-k", type=int, required=True, help="Parameter k")
@click.option(
    "-o",
    "--output",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Write the kernel here instead of standard output",
)
@click.option(
    "--trace",
    "trace_path",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Write the reduction trace here",
)
@instance_argument
@handle_errors
def kernelize(
    variant: str,
    k: int,
    output: Path | None,
    trace_path: Path | None,
    file: Path,
) -> None:
    """Kernelizes FILE and prints the stats line n' m' k' bound.

    Instances decided on the way print YES or NO (plus a witness) instead.
    """
    chosen = Variant(variant)
    outcome = run_variant(chosen, file.read_text(), k)
    # Decided during reduction, nothing left to write
    if isinstance(outcome, Decided):
        _echo_decision(outcome)
        return

    # Kernel to file or stdout
    kernel_text = _serialize_kernel(outcome)
    if output is not None:
        output.write_text(kernel_text)
    else:
        click.echo(kernel_text, nl=False)
    if trace_path is not None:
        trace_path.write_text(serialize_trace(outcome.trace))
    # Stats line always goes to stdout
    n, m, k_prime, bound = kernel_sizes(chosen, outcome, k)
    click.echo(f"{n} {m} {k_prime} {bound}")


@cli.command()
@variant_option
@click.option("-k", type=int, required=True, help="Parameter k")
@budget_option
@instance_argument
@handle_errors
def solve(variant: str, k: int, node_budget: int, file: Path) -> None:
    """Kernelizes FILE, solves the kernel exactly and prints YES or NO.

    YES is followed by a witness for the original instance. Exits with
    status 1 on NO.
    """
    chosen = Variant(variant)
    outcome = run_variant(chosen, file.read_text(), k)
    # Exact solve on the kernel, witness lifted back
    decided = complete_variant(chosen, outcome, node_budget)
    _echo_decision(decided)
    if not decided.answer:
        sys.exit(EXIT_NO)


@cli.command()
@click.option(
    "--kind",
    type=click.Choice([k.value for k in WitnessKind]),
    help="Optimum to compute (defaults to hitting or dominating by file type)",
)
@budget_option
@instance_argument
@handle_errors
def exact(kind: str | None, node_budget: int, file: Path) -> None:
    """Prints the exact optimum of FILE followed by an optimal witness."""
    instance = parse_instance(file.read_text())
    # Default kind follows the file type
    if isinstance(instance, Digraph):
        if kind not in (None, WitnessKind.DOMINATING):
            raise click.UsageError(f"{kind} optimum needs a hypergraph instance")
        result = min_dominating_set(instance, node_budget)
    elif kind == WitnessKind.INDEPENDENT:
        result = max_independent_set(instance, node_budget)
    elif kind in (None, WitnessKind.HITTING):
        result = min_hitting_set(instance, node_budget)
    else:
        raise click.UsageError("Dominating optimum needs a digraph instance")
    click.echo(result.optimum)
    click.echo(serialize_witness(result.witness), nl=False)


@cli.command()
@click.option(
    "--kind",
    type=click.Choice([k.value for k in WitnessKind]),
    required=True,
    help="Property the witness must have",
)
@click.option(
    "--witness",
    "witness_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
    help="File with whitespace-separated vertex ids",
)
@click.option(
    "--bound",
    type=int,
    required=True,
    help="Size bound (upper for hitting/dominating, lower for independent)",
)
@instance_argument
@handle_errors
def check(kind: str, witness_path: Path, bound: int, file: Path) -> None:
    """Prints VALID or INVALID; INVALID exits with status 1."""
    instance = parse_instance(file.read_text())
    witness = parse_witness(witness_path.read_text())
    # Kind and file type must agree
    try:
        valid = verify(kind, instance, witness, bound)
    except TypeError as e:
        raise click.UsageError(str(e)) from e
    if valid:
        click.echo("VALID")
        return
    click.echo("INVALID")
    sys.exit(EXIT_NO)


@cli.command()
@instance_argument
@handle_errors
def degeneracy(file: Path) -> None:
    """Prints the degeneracy of a hypergraph file."""
    h = parse_hypergraph(file.read_text())
    click.echo(degeneracy_order(h).degeneracy)


output_option = click.option(
    "-o",
    "--output",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Write here instead of standard output",
)


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        click.echo(text, nl=False)
    else:
        output.write_text(text)


@cli.group()
def gen() -> None:
    """Generates seeded random instances."""


@gen.command("hypergraph")
@click.option("-n", type=click.IntRange(min=0), required=True, help="Vertices")
@click.option("-m", type=click.IntRange(min=0), required=True, help="Edges")
@click.option(
    "--max-edge-size", type=click.IntRange(min=1), default=3, show_default=True
)
@click.option("--seed", type=int, default=None, help="Random seed")
@output_option
@handle_errors
def gen_hypergraph(
    n: int, m: int, max_edge_size: int, seed: int | None, output: Path | None
) -> None:
    """Random hypergraph with nonempty edges."""
    h = gen_random_hypergraph(n, m, max_edge_size, seed)
    _emit(serialize_hypergraph(h), output)


@gen.command("degenerate")
@click.option("-n", type=click.IntRange(min=1), required=True, help="Vertices")
@click.option("-d", type=click.IntRange(min=0), required=True, help="Degeneracy cap")
@click.option("-m", type=click.IntRange(min=0), required=True, help="Edges")
@click.option(
    "--max-edge-size", type=click.IntRange(min=2), default=3, show_default=True
)
@click.option("--seed", type=int, default=None, help="Random seed")
@output_option
@handle_errors
def gen_degenerate(
    n: int, d: int, m: int, max_edge_size: int, seed: int | None, output: Path | None
) -> None:
    """Random hypergraph with degeneracy at most D."""
    h = gen_random_degenerate(n, d, m, seed, max_edge_size)
    _emit(serialize_hypergraph(h), output)


@gen.command("digraph")
@click.option("-n", type=click.IntRange(min=0), required=True, help="Vertices")
@click.option("--arc-prob", type=click.FloatRange(0.0, 1.0), required=True)
@click.option("--seed", type=int, default=None, help="Random seed")
@output_option
@handle_errors
def gen_digraph(n: int, arc_prob: float, seed: int | None, output: Path | None) -> None:
    """Random digraph without self-loops."""
    _emit(serialize_digraph(gen_random_digraph(n, arc_prob, seed)), output)


@gen.command("from-graph-is")
@click.option("-k", type=int, required=True, help="Independent set size")
@output_option
@instance_argument
@handle_errors
def gen_from_graph(k: int, output: Path | None, file: Path) -> None:
    """Independent Set on a graph file as a below-n hitting set instance."""
    inst = gen_from_graph_is(parse_instance(file.read_text()), k)
    _emit(f"c k {inst.k}\n" + serialize_hypergraph(inst.hypergraph), output)


@cli.command("export-cnf")
@click.option("-k", type=int, required=True, help="Parameter k")
@output_option
@instance_argument
@handle_errors
def export_cnf_command(k: int, output: Path | None, file: Path) -> None:
    """Writes FILE as an all-negative DIMACS CNF formula."""
    h = parse_hypergraph(file.read_text())
    _emit(export_cnf(BelowNInstance(h, k)), output)


def stats_rows(path: Path, ks: tuple[int, ...], node_budget: int) -> list[list[str]]:
    """One row per (variant, k) for a single instance file."""
    text = path.read_text()
    instance = parse_instance(text)
    # Hypergraphs run both below variants, digraphs both nonblocker ones
    if isinstance(instance, Hypergraph):
        variants = (Variant.BELOW_M, Variant.BELOW_N)
        n, m = instance.n, instance.m
        d = str(degeneracy_order(instance).degeneracy)
    else:
        variants = (Variant.NONBLOCKER, Variant.NONBLOCKER_QUADRATIC)
        n, m, d = instance.n, len(instance.arcs), ""
    rows = []
    for variant in variants:
        for k in ks:
            outcome = run_variant(variant, text, k)
            decided = complete_variant(variant, outcome, node_budget)
            if isinstance(outcome, Kernel):
                sizes = [str(x) for x in kernel_sizes(variant, outcome, k)]
            else:
                # Decided early: no kernel columns
                sizes = ["", "", "", ""]
            row = [path.name, variant.value, str(n), str(m), str(k), d]
            rows.append([*row, *sizes, str(decided)])
    logger.debug("%s: %d rows", path.name, len(rows))
    return rows


@cli.command()
@click.option(
    "--batch",
    type=click.Path(exists=True, file_okay=False, path_type=Path),
    required=True,
    help="Directory of .hg and .dg files",
)
@click.option("-k", "ks", type=int, multiple=True, required=True, help="Parameter k")
@click.option(
    "--jobs",
    type=click.IntRange(min=1),
    default=DEFAULT_JOBS,
    show_default=True,
    help="Files processed in parallel",
)
@budget_option
@output_option
@handle_errors
def stats(
    batch: Path,
    ks: tuple[int, ...],
    jobs: int,
    node_budget: int,
    output: Path | None,
) -> None:
    """Kernel sizes, bounds and decisions for every instance in a directory, as CSV."""
    files = sorted(p for p in batch.iterdir() if p.suffix in (".hg", ".dg"))
    # One file per worker; map keeps the sorted order
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        per_file = list(pool.map(lambda p: stats_rows(p, ks, node_budget), files))
    # Write the CSV
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(STATS_COLUMNS)
    for rows in per_file:
        writer.writerows(rows)
    _emit(buffer.getvalue(), output)


if __name__ == "__main__":
    cli()
