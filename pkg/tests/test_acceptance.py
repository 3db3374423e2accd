"""Acceptance criteria 1-10, each at its stated tolerance and runtime budget.

Every test appends one ``criterion N: PASS|FAIL ...`` line that the conftest
hook prints at the end of the session.
"""

from __future__ import annotations

import math
import re
import time

import mpmath
import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, random_surfaces
from transweingarten.algebra import EUCLIDEAN, run_suite
from transweingarten.algebra.verify import (
    verify_build_pq,
    verify_c0_chain,
    verify_case3_chain,
    verify_differentiation_displays,
    verify_eab,
    verify_factorization,
)
from transweingarten.cli import main
from transweingarten.genesis import integrate_separated_profile, make_family, scherk_domain
from transweingarten.surface import GridSpec, general_curvature, graph_immersion, sample_grid, translation_curvature
from transweingarten.weingarten import CGC, CMC, DEGENERATE, NOT_LW, fit_linear_weingarten, theorem_audit

from test_weingarten import PARABOLOID_RMS


def record(n: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def test_criterion_1_curvature_oracle():
    rng = np.random.default_rng(101)
    worst = 0.0
    compared = 0
    with Timer() as t:
        for s in random_surfaces(17, 60):
            for x, y in rng.uniform(-1, 1, (20, 2)):
                a = translation_curvature(s, float(x), float(y))
                if not a.valid:
                    continue
                b = general_curvature(graph_immersion(s, float(x), float(y)))
                for u, v in ((a.H, b.H), (a.K, b.K)):
                    if u != v:
                        worst = max(worst, abs(u - v) / max(abs(u), abs(v)))
                compared += 1
    ok = worst <= 1e-10 and compared >= 50 * 20 * 0.5 and t.seconds < 5
    record(1, ok, f"{compared} points, worst relative gap {worst:.2e}, {t.seconds:.2f}s")


def test_criterion_2_scherk_minimality():
    lines = []
    ok = True
    with Timer() as t:
        for lam in (0.5, 1.0, 2.0):
            lo, hi = scherk_domain(lam)
            surface = make_family("scherk", lam)
            max_h = max(abs(s.H) for s in sample_grid(surface, GridSpec.square(lo, hi, 21)))
            k0 = translation_curvature(surface, 0.0, 0.0).K
            k_ok = abs(k0 - (-lam ** 4)) < 1e-12
            ok &= max_h < 1e-10 and k_ok
            lines.append(f"lam={lam}: max|H|={max_h:.1e} K(0)={k0:.6g} vs -lam^4={-lam ** 4:.6g}")
    ok &= t.seconds < 1
    record(2, ok, "; ".join(lines) + f"; {t.seconds:.2f}s")


def test_criterion_3_verdict_table():
    with Timer() as t:
        plane = fit_linear_weingarten(sample_grid(make_family("plane"), GridSpec.square(-1, 1, 21)))
        cyl = fit_linear_weingarten(sample_grid(make_family("cylinder"), GridSpec.square(-1, 1, 21)))
        sch = fit_linear_weingarten(sample_grid(make_family("scherk"), GridSpec.square(-1, 1, 21)))
        par = fit_linear_weingarten(sample_grid(make_family("paraboloid"), GridSpec.square(-1, 1, 21)))
    checks = {
        "plane": plane.verdict.kind == DEGENERATE,
        "cylinder": cyl.verdict.kind == CGC and abs(cyl.verdict.params["k"]) < 1e-12 and cyl.rms_residual < 1e-12,
        "scherk": sch.verdict.kind == CMC and abs(sch.verdict.params["h"]) < 1e-10 and sch.rms_residual < 1e-10,
        "paraboloid": par.verdict.kind == NOT_LW and PARABOLOID_RMS > 0.01
        and par.rms_residual >= PARABOLOID_RMS * (1 - 1e-9),
    }
    ok = all(checks.values()) and t.seconds < 2
    record(3, ok, f"{checks}, paraboloid rms {par.rms_residual:.6g} (golden {PARABOLOID_RMS:.6g}), {t.seconds:.2f}s")


def test_criterion_4_theorem_audit():
    with Timer() as t:
        report = theorem_audit(7, 100)
    ok = report.violations == 0 and t.seconds < 60
    record(4, ok, f"verdicts {dict(sorted(report.counts.items()))}, skipped {report.skipped}, {t.seconds:.1f}s")


def test_criterion_5_c0_identities():
    with Timer() as t:
        reports = [verify_c0_chain(EUCLIDEAN), verify_eab(EUCLIDEAN)]
    failed = [f"{r.suite}/{s.name}" for r in reports for s in r.steps if not s.passed]
    ok = not failed and t.seconds < 10
    record(5, ok, f"failed steps {failed or 'none'}, {t.seconds:.2f}s")


def test_criterion_6_cnonzero_identities():
    with Timer() as t:
        reports = [
            verify_differentiation_displays(EUCLIDEAN),
            verify_build_pq(EUCLIDEAN),
            verify_factorization(EUCLIDEAN),
            verify_case3_chain(EUCLIDEAN),
        ]
    factorization = reports[2]
    cofactor_ok = factorization.cofactor is not None and not {"f3", "g3"} & set(re.findall(r"[a-z]\w*", factorization.cofactor))
    failed = [f"{r.suite}/{s.name}" for r in reports for s in r.steps if not s.passed]
    ok = not failed and cofactor_ok and t.seconds < 60
    record(6, ok, f"failed steps {failed or 'none'}, cofactor {factorization.cofactor}, {t.seconds:.2f}s")


def test_criterion_7_lorentzian_identities():
    with Timer() as t:
        reports = run_suite("lorentzian")
    readings = {r.reading for r in reports}
    ok = all(r.passed for r in reports) and len(readings) == 1 and None not in readings and t.seconds < 60
    record(7, ok, f"suites {[r.suite for r in reports]} pass under reading {sorted(map(str, readings))}, {t.seconds:.2f}s")


def test_criterion_8_ode_cross_check():
    errors = {}
    for lam in (0.5, 1.0, 2.0):
        x = 0.5 / lam
        with mpmath.workdps(40):
            exact = float(-mpmath.log(mpmath.cos(mpmath.mpf(lam) * x)) / lam)
        errors[lam] = abs(integrate_separated_profile(lam, x, 1e-3).f[-1] - exact)
    exact = -math.log(math.cos(0.5))
    steps = (0.1, 0.05, 0.025, 0.0125)
    e = [abs(integrate_separated_profile(1.0, 0.5, h).f[-1] - exact) for h in steps]
    ratios = [float(e0 / e1) for e0, e1 in zip(e, e[1:])]
    ok = max(errors.values()) < 1e-9 and all(12 <= r <= 20 for r in ratios)
    record(8, ok, f"max error at step 1e-3 {max(errors.values()):.1e}, halving ratios {[round(r, 2) for r in ratios]}")


def test_criterion_9_mutations():
    cases = {
        "second_factor_sign": verify_factorization(EUCLIDEAN, mutation="second_factor_sign"),
        "mixed_derivative_coefficient": verify_eab(EUCLIDEAN, mutation="mixed_derivative_coefficient"),
        "F_definition": verify_c0_chain(EUCLIDEAN, mutation="F_definition"),
    }
    caught = {name: not r.passed for name, r in cases.items()}
    ok = all(caught.values())
    record(9, ok, f"mutation caught {caught}")


CLI_RUNS = [
    ["curvature", "--family", "scherk", "--grid", "-1:1:7,-1:1:7"],
    ["curvature", "--f", "t^3", "--g", "cos(t)", "--ambient", "lorentz-spacelike", "--grid", "-0.5:0.5:5,-0.5:0.5:5"],
    ["fit", "--family", "paraboloid"],
    ["verify", "--suite", "all", "--seed", "3"],
    ["mesh", "--family", "scherk", "--grid", "-1:1:6,-1:1:6"],
    ["generate", "scherk", "--lambda", "2", "--check", "--table", "{dir}/table.csv"],
]


def test_criterion_10_determinism(tmp_path, capsys):
    differing = []
    for k, argv in enumerate(CLI_RUNS):
        outputs = []
        for attempt in range(2):
            run_dir = tmp_path / f"{k}-{attempt}"
            run_dir.mkdir()
            args = [a.replace("{dir}", str(run_dir)) for a in argv] + ["--out", str(run_dir / "out")]
            main(args)
            capsys.readouterr()
            outputs.append({p.name: p.read_bytes() for p in sorted(run_dir.iterdir())})
        if outputs[0] != outputs[1] or not outputs[0]:
            differing.append(argv[0])
    record(10, not differing, f"{len(CLI_RUNS)} commands run twice, differing outputs: {differing or 'none'}")
