"""Randomized zero testing at exact rational points.

A nonzero rational expression of total degree ``d`` vanishes at a uniformly
random point of ``S^n`` with probability at most ``d / |S|``; with sample
coordinates drawn from roughly 4e12 distinct rationals a handful of samples
makes a false "zero" verdict negligible.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Union

from .poly import VARS, JetPoly
from .ratfunc import RatFunc
from .sqrtw import SqrtWExpr

BOUND = 10 ** 6
MAX_RESAMPLES = 100

Testable = Union[SqrtWExpr, RatFunc, JetPoly]


def random_point(rng: random.Random, names=VARS, bound: int = BOUND) -> dict[str, Fraction]:
    return {n: Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for n in names}


def _parts(expr: Testable) -> list[RatFunc]:
    if isinstance(expr, SqrtWExpr):
        return [expr.rational, expr.coeff]
    if isinstance(expr, JetPoly):
        return [RatFunc(expr, reduce=False)]
    return [expr]


def poly_identity_test(expr: Testable, seed: int = 0, samples: int = 20) -> bool:
    """True when ``expr`` evaluated to zero at ``samples`` random rational points.

    For ``A + B sqrt(W)`` the parts ``A`` and ``B`` are tested separately, which
    is the correct criterion whenever ``W`` is not a perfect square.  Points
    where a denominator vanishes are redrawn.

    Raises:
        RuntimeError: more than ``MAX_RESAMPLES`` consecutive points hit a pole.
    """
    rng = random.Random(seed)
    parts = _parts(expr)
    for _ in range(samples):
        for attempt in range(MAX_RESAMPLES + 1):
            point = random_point(rng)
            try:
                values = [p.evaluate(point) for p in parts]
            except ZeroDivisionError:
                continue
            break
        else:
            raise RuntimeError("could not find a sample point away from the poles")
        if any(v != 0 for v in values):
            return False
    return True
