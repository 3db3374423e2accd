"""Fit and classify linear Weingarten relations a H + b K = c.

The fit is a total least-squares problem: with rows ``(H_i, K_i, -1)`` the
coefficient direction is the eigenvector of the 3x3 normal matrix belonging
to its smallest eigenvalue.  Residuals are reported on data scaled by
``max(|H|, |K|, 1)`` over the samples, so tolerances are dimensionless.
"""

from __future__ import annotations

import json
import warnings
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable

import numpy as np

from .expr import BinOp, Const, Node, Var, random_ast
from .surface import Ambient, CurvatureSample, ExprProfile, GridSpec, TranslationSurface, sample_grid


class InsufficientDataError(ValueError):
    pass


class TheoremViolationWarning(UserWarning):
    """A translation surface appeared to satisfy a H + b K = c with a, b both nonzero."""


@dataclass(frozen=True)
class FitTolerances:
    fit: float = 1e-8
    coeff: float = 1e-6
    rank: float = 1e-10
    const: float = 1e-10


# Verdicts.  ``kind`` doubles as the JSON name.


@dataclass(frozen=True)
class Classification:
    kind: str
    params: dict = field(default_factory=dict)

    def __str__(self) -> str:
        if not self.params:
            return self.kind
        inner = ", ".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"{self.kind}({inner})"


CMC = "ConstantMeanCurvature"
CGC = "ConstantGaussCurvature"
BOTH = "BothConstant"
GENERAL = "GeneralLinearWeingarten"
NOT_LW = "NotLinearWeingarten"
DEGENERATE = "Degenerate"
VERDICTS = (CMC, CGC, BOTH, GENERAL, NOT_LW, DEGENERATE)

PLANE_REASON = "H and K identically zero; relation underdetermined"


@dataclass(frozen=True)
class WeingartenFit:
    a: float
    b: float
    c: float
    rms_residual: float
    max_residual: float
    rank_estimate: int
    verdict: Classification
    samples_used: int = 0
    samples_invalid: int = 0
    scale: float = 1.0
    mean_H: float = 0.0
    mean_K: float = 0.0
    var_H: float = 0.0
    var_K: float = 0.0

    def to_report(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "rms_residual": self.rms_residual,
            "max_residual": self.max_residual,
            "rank": self.rank_estimate,
            "verdict": self.verdict.kind,
            "samples_used": self.samples_used,
            "samples_invalid": self.samples_invalid,
            "verdict_params": dict(self.verdict.params),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_report(), indent=2) + "\n"


def _normalize_sign(v: np.ndarray) -> np.ndarray:
    v = v / np.linalg.norm(v)
    # round-off sized entries do not decide the sign
    for x in v:
        if abs(x) > 1e-12:
            return v if x > 0 else -v
    return v


def fit_design(rows: np.ndarray, tolerances: FitTolerances = FitTolerances(), samples_invalid: int = 0) -> WeingartenFit:
    """Fit from an N x 3 design matrix whose rows are proportional to (H, K, -1)."""
    rows = np.asarray(rows, dtype=float)
    if rows.ndim != 2 or rows.shape[1] != 3 or rows.shape[0] < 3:
        raise InsufficientDataError(f"need at least 3 samples, got {rows.shape[0] if rows.ndim == 2 else 0}")
    scale = float(np.max(np.abs(rows)))
    scaled = rows / scale
    normal = scaled.T @ scaled
    eigvals, eigvecs = np.linalg.eigh(normal)
    coeffs = _normalize_sign(eigvecs[:, 0])
    residuals = np.abs(scaled @ coeffs)
    top = max(float(eigvals[-1]), 0.0)
    rank = int(np.sum(eigvals > tolerances.rank * top)) if top > 0 else 0
    # per-row H, K on the common -1 scale
    h = rows[:, 0] / -rows[:, 2]
    k = rows[:, 1] / -rows[:, 2]
    fit = WeingartenFit(
        a=float(coeffs[0]),
        b=float(coeffs[1]),
        c=float(coeffs[2]),
        rms_residual=float(np.sqrt(np.mean(residuals ** 2))),
        max_residual=float(np.max(residuals)),
        rank_estimate=max(rank, 1),
        verdict=Classification(DEGENERATE),
        samples_used=rows.shape[0],
        samples_invalid=samples_invalid,
        scale=float(max(np.max(np.abs(h)), np.max(np.abs(k)), 1.0)),
        mean_H=float(np.mean(h)),
        mean_K=float(np.mean(k)),
        var_H=float(np.var(h)),
        var_K=float(np.var(k)),
    )
    return _with_verdict(fit, classify(fit, tolerances))


def _with_verdict(fit: WeingartenFit, verdict: Classification) -> WeingartenFit:
    return replace(fit, verdict=verdict)


def fit_linear_weingarten(samples: Iterable[CurvatureSample], tolerances: FitTolerances = FitTolerances()) -> WeingartenFit:
    """Fit a H + b K = c to the valid samples.

    Raises:
        InsufficientDataError: fewer than three valid samples.
    """
    samples = list(samples)
    valid = [s for s in samples if s.valid]
    if len(valid) < 3:
        raise InsufficientDataError(f"need at least 3 valid samples, got {len(valid)}")
    rows = np.array([(s.H, s.K, -1.0) for s in valid])
    return fit_design(rows, tolerances, samples_invalid=len(samples) - len(valid))


def classify(fit: WeingartenFit, tolerances: FitTolerances = FitTolerances()) -> Classification:
    """Verdict for a fit.  Degeneracy and constancy are decided before the coefficients."""
    small = tolerances.const * fit.scale ** 2
    both_constant = fit.var_H < small and fit.var_K < small
    if fit.rank_estimate <= 1 or both_constant:
        if abs(fit.mean_H) <= tolerances.coeff and abs(fit.mean_K) <= tolerances.coeff:
            return Classification(DEGENERATE, {"reason": PLANE_REASON})
        return Classification(BOTH, {"h": fit.mean_H, "k": fit.mean_K})
    if not fit.rms_residual < tolerances.fit:
        return Classification(NOT_LW)
    if abs(fit.b) <= tolerances.coeff:
        return Classification(CMC, {"h": _clean(fit.c / fit.a)})
    if abs(fit.a) <= tolerances.coeff:
        return Classification(CGC, {"k": _clean(fit.c / fit.b)})
    warnings.warn(
        f"a={fit.a:.3e}, b={fit.b:.3e}: both coefficients nonzero with rms residual {fit.rms_residual:.3e}",
        TheoremViolationWarning,
        stacklevel=2,
    )
    return Classification(GENERAL, {"a": fit.a, "b": fit.b, "c": fit.c})


def _clean(v: float) -> float:
    # collapse signed zero so reports stay byte-stable
    return 0.0 if v == 0.0 else v


# ---------------------------------------------------------------------------
# Randomized audit


@dataclass
class AuditReport:
    seed: int
    trials: int
    counts: dict[str, int]
    skipped: int
    surfaces: list[dict]

    @property
    def violations(self) -> int:
        return self.counts.get(GENERAL, 0)

    def to_json(self) -> str:
        return json.dumps(
            {
                "seed": self.seed,
                "trials": self.trials,
                "counts": self.counts,
                "skipped": self.skipped,
                "surfaces": self.surfaces,
            },
            indent=2,
        ) + "\n"


AUDIT_GRID = GridSpec.square(-1.0, 1.0, 9)
# a profile counts as curved when |f''| reaches this somewhere on the grid
MIN_CURVATURE = 0.05


def _curved(node: Node, ts: np.ndarray) -> bool:
    profile = ExprProfile(node)
    try:
        return max(abs(profile.jet(float(t)).c2) for t in ts) >= MIN_CURVATURE
    except (ArithmeticError, ValueError):
        return False


def random_profile(rng: np.random.Generator, ts: np.ndarray, depth: int = 4, attempts: int = 50) -> Node:
    """Random expression with f'' not identically zero on ``ts``."""
    for _ in range(attempts):
        node = random_ast(rng, depth)
        if _curved(node, ts):
            return node
    # fall back to a profile that is certainly curved
    return BinOp("*", Const(float(np.round(rng.uniform(0.3, 1.5), 3))), BinOp("*", Var(), Var()))


def theorem_audit(
    rng_seed: int,
    trials: int,
    family: str | None = None,
    grid: GridSpec = AUDIT_GRID,
    tolerances: FitTolerances = FitTolerances(),
    ambient: Ambient = Ambient.EUCLIDEAN,
) -> AuditReport:
    """Fit and classify ``trials`` random translation surfaces.

    ``family="cylinder"`` forces g = 0, so every trial is a generalized cylinder.
    Deterministic for a given seed.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = np.random.default_rng(rng_seed)
    ts_f, ts_g = grid.xs(), grid.ys()
    counts: Counter[str] = Counter()
    skipped = 0
    surfaces = []
    for i in range(trials):
        f = random_profile(rng, ts_f)
        g = Const(0.0) if family == "cylinder" else random_profile(rng, ts_g)
        s = TranslationSurface(ExprProfile(f), ExprProfile(g), ambient)
        entry = {"trial": i, "f": ExprProfile(f).source, "g": ExprProfile(g).source}
        try:
            samples = sample_grid(s, grid)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", TheoremViolationWarning)
                fit = fit_linear_weingarten(samples, tolerances)
        except ValueError as exc:
            skipped += 1
            entry["skipped"] = str(exc)
            surfaces.append(entry)
            continue
        counts[fit.verdict.kind] += 1
        entry["verdict"] = fit.verdict.kind
        entry["rms_residual"] = fit.rms_residual
        surfaces.append(entry)
    ordered = {k: counts.get(k, 0) for k in VERDICTS}
    return AuditReport(rng_seed, trials, ordered, skipped, surfaces)
