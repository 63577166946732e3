#!/usr/bin/env python3
"""Run every registered reduction end to end on a sample instance and
print one verdict line each.

Usage: python3 scripts/demo_round_trips.py [--bound LOG2]
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from redbench import constructions as cons
from redbench.bitsupport import SumMode
from redbench.reductions import Instance, verify_reduction
from redbench.solvers import SearchBudget
from redbench.wellorder import DescendingSequence, LinearOrder, OmegaTerm


def sample_instances():
    parity64 = cons.mod_coloring(2, 64)
    parity13 = cons.mod_coloring(2, (1 << 13) + 1)
    parity15 = cons.mod_coloring(2, (1 << 15) + 1)
    sum_mod = cons.sum_mod_coloring(3, 2, 40)
    table = cons.InjectiveFunctionTable((5, 6, 7, 1, 2))
    alpha = DescendingSequence(
        LinearOrder.finite(3),
        (OmegaTerm((2, 1)), OmegaTerm((2, 0, 0)), OmegaTerm((1, 1)), OmegaTerm((0,))),
    )
    lam_minus_big = cons.lam_minus_coloring(1 << 22)
    return {
        "rt1k_to_reght2": Instance("rt1", parity64, {"k": 2}),
        "rt1k_to_reght3": Instance("rt1", parity64, {"k": 2}),
        "reght_to_rt1": Instance("rt1", parity15, {"k": 2}),
        "reght_to_ht_atmost2": Instance(
            "ht", parity13, {"k": 2, "mode": SumMode.at_most(2), "apart": True}
        ),
        "reght_to_ht_exact2": Instance(
            "ht", parity13, {"k": 2, "mode": SumMode.exactly(2), "apart": True}
        ),
        "rtk_to_reg2": Instance("rt", sum_mod, {"k": 3, "n": 2}),
        "rt_to_reg2": Instance("rt", sum_mod, {"k": 3, "n": 2}),
        "reght_to_reg2": Instance("reght", lam_minus_big, {"mode": SumMode.exactly(2)}),
        "reght_to_reg3": Instance("reght", lam_minus_big, {"mode": SumMode.exactly(3)}),
        "ran_to_reght2": Instance("ran", table),
        "ran_to_reght3": Instance("ran", table),
        "wop_to_reght2": Instance("wop", alpha),
    }


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--bound", type=int, default=20, help="log2 of the element bound")
    args = parser.parse_args()
    budget = SearchBudget(element_bound=1 << args.bound, node_limit=5_000_000)
    failures = 0
    for name, instance in sample_instances().items():
        start = time.perf_counter()
        report = verify_reduction(name, instance, budget)
        elapsed = time.perf_counter() - start
        solution = (
            list(report.solver_outcome.solution.elements)
            if report.solver_outcome and report.solver_outcome.solution
            else None
        )
        print(f"{name:22s} {report.kind:2s} {report.status:8s} {elapsed:6.2f}s  target solution: {solution}")
        if report.psi_output is not None:
            print(f"{'':34s}psi output: {report.psi_output.payload}")
        if report.status != "ok":
            failures += 1
            print(f"{'':34s}detail: {report.failure or report.verdicts}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
