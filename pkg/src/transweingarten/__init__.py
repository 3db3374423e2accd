"""Curvature, linear Weingarten fits and exact identity checks for translation surfaces."""

from __future__ import annotations

from .expr import ExprError, eval_jet, parse_profile, to_source
from .genesis import integrate_separated_profile, make_family
from .jet import Jet3, JetDomainError
from .surface import (
    Ambient,
    CurvatureSample,
    GridSpec,
    TranslationSurface,
    general_curvature,
    sample_grid,
    translation_curvature,
)
from .weingarten import FitTolerances, WeingartenFit, fit_linear_weingarten, theorem_audit

__version__ = "0.1.0"

__all__ = [
    "Ambient",
    "CurvatureSample",
    "ExprError",
    "FitTolerances",
    "GridSpec",
    "Jet3",
    "JetDomainError",
    "TranslationSurface",
    "WeingartenFit",
    "eval_jet",
    "fit_linear_weingarten",
    "general_curvature",
    "integrate_separated_profile",
    "make_family",
    "parse_profile",
    "sample_grid",
    "theorem_audit",
    "to_source",
    "translation_curvature",
]
