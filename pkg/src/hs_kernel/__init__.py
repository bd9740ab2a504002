from hs_kernel.cli import (
    check,
    cli,
    degeneracy,
    exact,
    export_cnf_command,
    gen,
    kernelize,
    solve,
    stats,
)
from hs_kernel.hypercore import Digraph, Hypergraph
from hs_kernel.kernel_below_m import BelowMInstance, kernelize_below_m
from hs_kernel.kernel_below_n import BelowNInstance, decide_or_kernel_below_n
from hs_kernel.nonblocker import (
    NonblockerInstance,
    kernelize_nonblocker,
    kernelize_nonblocker_quadratic,
)
from hs_kernel.outcome import Decided, Kernel

__all__ = [
    "Hypergraph",
    "Digraph",
    "BelowMInstance",
    "BelowNInstance",
    "NonblockerInstance",
    "Decided",
    "Kernel",
    "kernelize_below_m",
    "decide_or_kernel_below_n",
    "kernelize_nonblocker",
    "kernelize_nonblocker_quadratic",
    "cli",
    "kernelize",
    "solve",
    "exact",
    "check",
    "degeneracy",
    "gen",
    "export_cnf_command",
    "stats",
]
