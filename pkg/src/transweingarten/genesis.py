"""Closed-form members of the translation-surface classification.

Only planes, generalized cylinders and Scherk surfaces have constant H or K
among translation surfaces, so no generator for constant K != 0 or constant
H != 0 exists here.  The paraboloid is provided as a surface that satisfies
no linear Weingarten relation.

Scherk surfaces use the minimal normalization

    z = (log cos(lambda y) - log cos(lambda x)) / lambda

whose profiles satisfy f'' / (1 + f'^2) = lambda and g'' / (1 + g'^2) = -lambda.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import BPoly

from .expr import Node, format_number, parse_profile
from .jet import Jet3, JetDomainError
from .surface import ExprProfile, GridSpec, TranslationSurface, sample_grid

FAMILIES = ("plane", "cylinder", "scherk", "paraboloid")
DEFAULT_DOMAIN = (-1.0, 1.0)


class BlowUpError(ArithmeticError):
    pass


def scherk_margin(lam: float) -> float:
    return 0.05 / lam


def scherk_domain(lam: float) -> tuple[float, float]:
    half = math.pi / (2.0 * lam) - scherk_margin(lam)
    return (-half, half)


def family_profile(family: str, lam: float = 1.0, role: str = "f") -> Node:
    """Expression for one profile of a named family; ``role`` is ``"f"`` or ``"g"``."""
    lam = float(lam)
    if role not in ("f", "g"):
        raise ValueError(f"role must be 'f' or 'g', got {role!r}")
    if family == "plane":
        return parse_profile("0")
    if family == "scherk":
        _check_lambda(lam)
        arg = "t" if lam == 1.0 else f"{format_number(lam)}*t"
        body = f"log(cos({arg}))"
        if lam != 1.0:
            body = f"{body}/{format_number(lam)}"
        return parse_profile(f"-{body}" if role == "f" else body)
    if family in ("cylinder", "paraboloid"):
        if family == "cylinder" and role == "g":
            return parse_profile("0")
        return parse_profile("t^2" if lam == 1.0 else f"{format_number(lam)}*t^2")
    raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


def _check_lambda(lam: float) -> None:
    if not (math.isfinite(lam) and lam > 0.0):
        raise ValueError(f"Scherk surfaces need lambda > 0, got {lam!r}")


def make_family(family: str, lam: float = 1.0, profile: str | None = None) -> TranslationSurface:
    """Euclidean surface of a named family with a safe default domain.

    ``profile`` is the generating curve of a cylinder (default ``t^2``).
    """
    if family == "cylinder" and profile is not None:
        f = parse_profile(profile)
        return TranslationSurface(ExprProfile(f), ExprProfile(parse_profile("0")), domain_f=DEFAULT_DOMAIN, domain_g=DEFAULT_DOMAIN)
    f = family_profile(family, lam, "f")
    g = family_profile(family, lam, "g")
    domain = scherk_domain(lam) if family == "scherk" else DEFAULT_DOMAIN
    return TranslationSurface(ExprProfile(f), ExprProfile(g), domain_f=domain, domain_g=domain)


# ---------------------------------------------------------------------------
# Separated profile ODE:  f'' = lambda (1 + f'^2),  f(0) = f'(0) = 0


@dataclass(frozen=True)
class ProfileTable:
    lam: float
    x: np.ndarray
    f: np.ndarray
    fp: np.ndarray

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("x,f,fp\n")
        for row in zip(self.x, self.f, self.fp):
            buf.write(",".join(f"{v:.17g}" for v in row) + "\n")
        return buf.getvalue()


def integrate_separated_profile(lam: float, x_end: float, step: float) -> ProfileTable:
    """Classical RK4 for f'' = lambda (1 + f'^2) from x = 0 to ``x_end``.

    The step is shrunk slightly so the last node lands on ``x_end``; a negative
    ``x_end`` integrates backwards.

    Raises:
        ValueError: |lambda x_end| >= pi/2 (the solution has a pole) or step <= 0.
        BlowUpError: |f'| exceeded 1e6.
    """
    if not step > 0.0:
        raise ValueError("step must be positive")
    if not abs(lam * x_end) < math.pi / 2:
        raise ValueError(f"|lambda * x_end| must be below pi/2, got {abs(lam * x_end)!r}")
    n = max(1, int(math.ceil(abs(x_end) / step - 1e-9))) if x_end != 0.0 else 0
    xs = np.zeros(n + 1)
    fs = np.zeros(n + 1)
    ps = np.zeros(n + 1)
    if n == 0:
        return ProfileTable(lam, xs, fs, ps)
    h = x_end / n

    def rhs(p: float) -> float:
        return lam * (1.0 + p * p)

    f = p = 0.0
    for i in range(n):
        k1f, k1p = p, rhs(p)
        k2f, k2p = p + 0.5 * h * k1p, rhs(p + 0.5 * h * k1p)
        k3f, k3p = p + 0.5 * h * k2p, rhs(p + 0.5 * h * k2p)
        k4f, k4p = p + h * k3p, rhs(p + h * k3p)
        f += h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f)
        p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        if not abs(p) <= 1e6:
            raise BlowUpError(f"|f'| exceeded 1e6 at x={h * (i + 1)!r}")
        xs[i + 1] = h * (i + 1)
        fs[i + 1] = f
        ps[i + 1] = p
    xs[-1] = x_end
    return ProfileTable(lam, xs, fs, ps)


def separated_closed_form(lam: float, x: np.ndarray | float) -> np.ndarray | float:
    return -np.log(np.cos(lam * np.asarray(x))) / lam


class TableProfile:
    """Profile interpolated from an RK4 table by quintic Hermite pieces.

    Second derivatives at the nodes come from the ODE itself, so the
    interpolant matches value, slope and curvature at every node.
    """

    def __init__(self, table: ProfileTable, sign: float = 1.0):
        order = np.argsort(table.x)
        x, f, fp = table.x[order], table.f[order], table.fp[order]
        fpp = table.lam * (1.0 + fp * fp)
        self.sign = sign
        self.lo, self.hi = float(x[0]), float(x[-1])
        self._poly = BPoly.from_derivatives(x, np.column_stack([f, fp, fpp]))
        self._d = [self._poly.derivative(k) for k in (1, 2, 3)]

    def jet(self, t: float) -> Jet3:
        if not self.lo <= t <= self.hi:
            raise JetDomainError(f"t={t!r} outside tabulated range [{self.lo!r}, {self.hi!r}]", point=t)
        s = self.sign
        return Jet3(s * float(self._poly(t)), *(s * float(d(t)) for d in self._d))


def merge_tables(back: ProfileTable, forward: ProfileTable) -> ProfileTable:
    """Join a backward and a forward integration sharing the node x = 0."""
    x = np.concatenate([back.x[::-1], forward.x[1:]])
    f = np.concatenate([back.f[::-1], forward.f[1:]])
    fp = np.concatenate([back.fp[::-1], forward.fp[1:]])
    return ProfileTable(forward.lam, x, f, fp)


def integrated_scherk(lam: float, half_width: float, step: float) -> TranslationSurface:
    """Scherk surface rebuilt from RK4 tables on [-half_width, half_width]."""
    _check_lambda(lam)
    table = merge_tables(
        integrate_separated_profile(lam, -half_width, step),
        integrate_separated_profile(lam, half_width, step),
    )
    domain = (-half_width, half_width)
    return TranslationSurface(TableProfile(table), TableProfile(table, sign=-1.0), domain_f=domain, domain_g=domain)


def verify_minimal(surface: TranslationSurface, grid: GridSpec) -> float:
    """Largest |H| over the valid samples of ``grid``."""
    return max(abs(s.H) for s in sample_grid(surface, grid) if s.valid)
