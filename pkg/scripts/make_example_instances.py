#!/usr/bin/env python3
"""Write a set of example instance files for CLI experimentation.

Usage: python3 scripts/make_example_instances.py [outdir]
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from redbench import constructions as cons
from redbench import serialization as ser
from redbench.bitsupport import SumMode
from redbench.reductions import Instance
from redbench.wellorder import DescendingSequence, LinearOrder, OmegaTerm


def main() -> int:
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("instances")
    outdir.mkdir(parents=True, exist_ok=True)
    alpha = DescendingSequence(
        LinearOrder.finite(3),
        (OmegaTerm((2, 1)), OmegaTerm((2, 0, 0)), OmegaTerm((1, 1)), OmegaTerm((0,))),
    )
    files = {
        "injective_table.json": Instance("ran", cons.InjectiveFunctionTable((5, 6, 7, 1, 2))),
        "parity_rt1.json": Instance("rt1", cons.mod_coloring(2, 64), {"k": 2}),
        "parity_ht.json": Instance(
            "ht",
            cons.mod_coloring(2, (1 << 13) + 1),
            {"k": 2, "mode": SumMode.at_most(2), "apart": True},
        ),
        "lam_minus_reght.json": Instance(
            "reght", cons.lam_minus_coloring(1 << 12), {"mode": SumMode.exactly(2)}
        ),
        "sum_mod_rt.json": Instance("rt", cons.sum_mod_coloring(3, 2, 40), {"k": 3, "n": 2}),
        "descent_wop.json": Instance("wop", alpha),
        "range_coloring.json": Instance(
            "unary_coloring",
            cons.range_coloring(cons.InjectiveFunctionTable((5, 6, 7, 1, 2)), 1 << 12),
        ),
        "mu_coloring.json": Instance("unary_coloring", cons.mu_coloring(1 << 16)),
    }
    for name, instance in files.items():
        path = outdir / name
        path.write_text(ser.canonical_dumps(ser.instance_file(instance)))
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
