"""Fit aH + bK = c to the four reference families, then audit random surfaces.

Among translation graphs only planes, generalized cylinders and Scherk
surfaces satisfy a linear relation, and none with both a and b nonzero.

Run: python3 demos/weingarten_verdicts.py
"""

from __future__ import annotations

from transweingarten.genesis import make_family
from transweingarten.surface import GridSpec, sample_grid
from transweingarten.weingarten import fit_linear_weingarten, theorem_audit

grid = GridSpec.square(-1.0, 1.0, 21)
for family in ("plane", "cylinder", "scherk", "paraboloid"):
    fit = fit_linear_weingarten(sample_grid(make_family(family), grid))
    print(f"{family:<11} ({fit.a:+.3f}, {fit.b:+.3f}, {fit.c:+.3f})  rms {fit.rms_residual:.2e}  -> {fit.verdict.kind}")

report = theorem_audit(rng_seed=7, trials=100)
print(f"\naudit of 100 random surfaces: {dict(sorted(report.counts.items()))}")
print(f"general relations found: {report.violations}")
