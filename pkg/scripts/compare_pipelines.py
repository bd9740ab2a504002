#!/usr/bin/env python3
"""
Cross-checks the kernelization pipelines against each other and the exact solvers.

For every seed a random digraph and a random hypergraph are generated. The
digraph goes through both nonblocker pipelines, the hypergraph through
below-m and (after reformulation) below-n. Every decision is compared with
the brute-force optimum.

Usage:
    python scripts/compare_pipelines.py --seeds 200 -n 9
    python scripts/compare_pipelines.py --seeds 50 -n 8 --arc-prob 0.2 -v
"""

import argparse
import logging
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))
from hs_kernel.generators import gen_random_digraph, gen_random_hypergraph
from hs_kernel.kernel_below_m import (
    BelowMInstance,
    complete_below_m,
    kernelize_below_m,
    to_below_n,
)
from hs_kernel.kernel_below_n import complete_below_n, decide_or_kernel_below_n
from hs_kernel.nonblocker import (
    NonblockerInstance,
    complete_nonblocker,
    kernelize_nonblocker,
    kernelize_nonblocker_quadratic,
)
from hs_kernel.oracles import min_dominating_set, min_hitting_set

logger = logging.getLogger("compare_pipelines")


def compare_digraph(n: int, arc_prob: float, seed: int) -> list[str]:
    """Returns one message per k where a nonblocker decision is wrong."""
    digraph = gen_random_digraph(n, arc_prob, seed)
    gamma = min_dominating_set(digraph).optimum
    mismatches = []
    for k in range(n + 2):
        inst = NonblockerInstance(digraph, k)
        expected = gamma <= inst.target
        linear = complete_nonblocker(kernelize_nonblocker(inst)).answer
        quadratic = complete_nonblocker(kernelize_nonblocker_quadratic(inst)).answer
        if not linear == quadratic == expected:
            mismatches.append(
                f"digraph seed={seed} k={k}: 3k-1 {linear}, k^2+k-1 {quadratic}, "
                f"exact {expected}"
            )
    return mismatches


def compare_hypergraph(n: int, m: int, seed: int) -> list[str]:
    """Returns one message per k where below-m and below-n disagree with exact."""
    h = gen_random_hypergraph(n, m, 3, seed)
    t = min_hitting_set(h).optimum
    mismatches = []
    for k in range(m + 2):
        inst = BelowMInstance(h, k)
        expected = t <= inst.target
        below_m = complete_below_m(kernelize_below_m(inst)).answer
        below_n = complete_below_n(decide_or_kernel_below_n(to_below_n(inst))).answer
        if not below_m == below_n == expected:
            mismatches.append(
                f"hypergraph seed={seed} k={k}: below-m {below_m}, "
                f"below-n {below_n}, exact {expected}"
            )
    return mismatches


def main() -> int:
    parser = argparse.ArgumentParser(
        description="Compare kernelization pipelines against exact solvers"
    )
    parser.add_argument("--seeds", type=int, default=100, help="Number of seeds")
    parser.add_argument("-n", type=int, default=8, help="Vertices per instance")
    parser.add_argument("-m", type=int, default=10, help="Edges per hypergraph")
    parser.add_argument("--arc-prob", type=float, default=0.3, help="Arc probability")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    args = parser.parse_args()

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="[%(levelname)s] %(name)s: %(message)s",
    )

    mismatches = []
    for seed in range(args.seeds):
        mismatches += compare_digraph(args.n, args.arc_prob, seed)
        mismatches += compare_hypergraph(args.n, args.m, seed)
        logger.debug("seed %d done, %d mismatches so far", seed, len(mismatches))

    for line in mismatches:
        print(line)
    print(f"{args.seeds} seeds, {len(mismatches)} mismatches")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
