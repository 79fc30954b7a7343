#!/usr/bin/env python3
"""Time the basis engine on the bundled example's two hard computations.

Reports wall time, S-pairs processed, and reduction steps, so engine changes
can be compared run over run.
"""

import time
from importlib import resources

from quivinv import ComputeBudget, MonomialOrder, parse_presentation, rep_ideal
from quivinv.kernel import present_invariant_ring


def timed(label, fn):
    budget = ComputeBudget()
    start = time.monotonic()
    fn(budget)
    elapsed = time.monotonic() - start
    print(
        f"{label:<32} {elapsed:8.2f}s   pairs {budget.pairs_used:>6}   "
        f"steps {budget.steps_used:>8}"
    )


def main():
    text = resources.files("quivinv").joinpath("data/a1_preprojective.quiver").read_text("utf-8")
    pres = parse_presentation(text)
    timed(
        "representation ideal, degrevlex",
        lambda budget: rep_ideal(pres).groebner_basis(MonomialOrder.degrevlex(), budget),
    )
    timed(
        "elimination of 16 arrow variables",
        lambda budget: present_invariant_ring(pres, 2, ["ec", "fc", "fd"], budget),
    )


if __name__ == "__main__":
    main()
