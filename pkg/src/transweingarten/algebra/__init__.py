"""Exact differential algebra over the jets of two profile curves."""

from __future__ import annotations

from .identity import poly_identity_test
from .poly import VARS, JetPoly
from .ratfunc import RatFunc
from .sqrtw import DX, DY, Derivation, JetOrderError, SqrtWExpr
from .verify import (
    EUCLIDEAN,
    LORENTZ_READINGS,
    MUTATIONS,
    SUITES,
    Mode,
    Report,
    Step,
    build_pq,
    claimed_factors,
    run_suite,
    suite_json,
    verify_build_pq,
    verify_c0_chain,
    verify_case3_chain,
    verify_differentiation_displays,
    verify_eab,
    verify_factorization,
)

__all__ = [
    "DX",
    "DY",
    "Derivation",
    "EUCLIDEAN",
    "JetOrderError",
    "JetPoly",
    "LORENTZ_READINGS",
    "MUTATIONS",
    "Mode",
    "RatFunc",
    "Report",
    "SUITES",
    "SqrtWExpr",
    "Step",
    "VARS",
    "build_pq",
    "poly_identity_test",
    "claimed_factors",
    "run_suite",
    "suite_json",
    "verify_build_pq",
    "verify_c0_chain",
    "verify_case3_chain",
    "verify_differentiation_displays",
    "verify_eab",
    "verify_factorization",
]
