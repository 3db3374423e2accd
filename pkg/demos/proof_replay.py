"""Replay the algebraic identities exactly and print what each step found.

Every step is checked twice: by exact rational-function arithmetic and by
evaluation at 20 random rational points.

Run: python3 demos/proof_replay.py
"""

from __future__ import annotations

from transweingarten.algebra import run_suite

for report in run_suite("all", seed=0):
    label = report.mode if report.reading is None else f"{report.mode} ({report.reading})"
    print(f"\n{report.suite} [{label}]")
    for step in report.steps:
        print(f"  {step.status:<4} {step.name}")
        for extra in (step.witness, step.note):
            if extra:
                print(f"         {extra}")
    if report.cofactor:
        print(f"  cofactor: {report.cofactor}")
