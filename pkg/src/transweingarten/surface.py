"""Translation surfaces and their mean and Gauss curvature.

A translation surface is the graph of ``f(u) + g(v)`` over a coordinate plane:

* Euclidean and Lorentzian spacelike: ``z = f(x) + g(y)``
* Lorentzian timelike, xz-graph: ``y = f(x) + g(z)``
* Lorentzian timelike, yz-graph: ``x = f(y) + g(z)``

Samples are always indexed by the two graph parameters, called ``x`` and
``y`` throughout regardless of which ambient coordinates they map to.

Sign conventions.  Euclidean H uses the upward normal of the graph.  In
Lorentz-Minkowski space (metric dx^2 + dy^2 - dz^2) the causal sign is
``eps = -1`` for spacelike and ``eps = +1`` for timelike surfaces, and

    W = 1 + eps f'^2 - g'^2
    H = eps (-eps f''(1 - g'^2) + g''(1 + eps f'^2)) / (2 W^(3/2))
    K = -f'' g'' / W^2

which corresponds to the normal ``J (X_u x X_v)`` (``J = diag(1, 1, -1)``)
for the spacelike and xz-timelike graphs, and to its opposite for the
yz-timelike graph.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from typing import Any, Protocol, Sequence

import numpy as np

from .expr import Node, eval_jet, parse_profile, to_source
from .jet import Jet3, JetDomainError

DEGENERACY_TOL = 1e-12


class Ambient(str, enum.Enum):
    EUCLIDEAN = "euclidean"
    LORENTZ_SPACELIKE = "lorentz-spacelike"
    LORENTZ_TIMELIKE_XZ = "lorentz-timelike-xz"
    LORENTZ_TIMELIKE_YZ = "lorentz-timelike-yz"

    @property
    def is_lorentzian(self) -> bool:
        return self is not Ambient.EUCLIDEAN

    @property
    def eps(self) -> int:
        """Causal sign: -1 spacelike, +1 timelike (Euclidean reports +1, unused)."""
        return -1 if self is Ambient.LORENTZ_SPACELIKE else 1


class DegenerateMetricError(ArithmeticError):
    pass


class NoAdmissibleSamplesError(ValueError):
    pass


class Profile(Protocol):
    def jet(self, t: float) -> Jet3: ...


@dataclass(frozen=True)
class ExprProfile:
    ast: Node

    @classmethod
    def parse(cls, source: str) -> "ExprProfile":
        return cls(parse_profile(source))

    @property
    def source(self) -> str:
        return to_source(self.ast)

    def jet(self, t: float) -> Jet3:
        return eval_jet(self.ast, t)


def as_profile(p: Any) -> Profile:
    if isinstance(p, str):
        return ExprProfile.parse(p)
    if hasattr(p, "jet"):
        return p
    return ExprProfile(p)


_UNBOUNDED = (-math.inf, math.inf)


@dataclass(frozen=True)
class TranslationSurface:
    f: Profile
    g: Profile
    ambient: Ambient = Ambient.EUCLIDEAN
    domain_f: tuple[float, float] = _UNBOUNDED
    domain_g: tuple[float, float] = _UNBOUNDED

    def __post_init__(self):
        object.__setattr__(self, "ambient", Ambient(self.ambient))
        object.__setattr__(self, "domain_f", tuple(float(v) for v in self.domain_f))
        object.__setattr__(self, "domain_g", tuple(float(v) for v in self.domain_g))

    @classmethod
    def from_expressions(
        cls,
        f: str | Node,
        g: str | Node,
        ambient: Ambient | str = Ambient.EUCLIDEAN,
        domain_f: Sequence[float] = _UNBOUNDED,
        domain_g: Sequence[float] = _UNBOUNDED,
    ) -> "TranslationSurface":
        return cls(as_profile(f), as_profile(g), Ambient(ambient), tuple(domain_f), tuple(domain_g))

    def contains(self, x: float, y: float) -> bool:
        return self.domain_f[0] <= x <= self.domain_f[1] and self.domain_g[0] <= y <= self.domain_g[1]

    def height(self, x: float, y: float) -> float:
        return self.f.jet(x).c0 + self.g.jet(y).c0

    def position(self, x: float, y: float) -> tuple[float, float, float]:
        """Ambient coordinates of the graph point over parameters (x, y)."""
        h = self.height(x, y)
        if self.ambient is Ambient.LORENTZ_TIMELIKE_XZ:
            return (x, h, y)
        if self.ambient is Ambient.LORENTZ_TIMELIKE_YZ:
            return (h, x, y)
        return (x, y, h)


@dataclass(frozen=True)
class CurvatureSample:
    x: float
    y: float
    H: float
    K: float
    W: float
    valid: bool = True
    reason: str = ""


def _curvature_from_jets(ambient: Ambient, fj: Jet3, gj: Jet3) -> tuple[float, float, float]:
    f1, f2 = fj.c1, fj.c2
    g1, g2 = gj.c1, gj.c2
    if ambient is Ambient.EUCLIDEAN:
        W = 1.0 + f1 * f1 + g1 * g1
        H = (f2 * (1.0 + g1 * g1) + g2 * (1.0 + f1 * f1)) / (2.0 * W ** 1.5)
        K = f2 * g2 / (W * W)
        return H, K, W
    eps = ambient.eps
    W = 1.0 + eps * f1 * f1 - g1 * g1
    if not W > 0.0:
        return math.nan, math.nan, W
    H = eps * (-eps * f2 * (1.0 - g1 * g1) + g2 * (1.0 + eps * f1 * f1)) / (2.0 * W ** 1.5)
    K = -f2 * g2 / (W * W)
    return H, K, W


def translation_curvature(s: TranslationSurface, x: float, y: float) -> CurvatureSample:
    """H, K and W of a translation surface at parameters (x, y).

    Profile domain errors and, for Lorentzian ambients, points with W <= 0
    yield a sample with ``valid=False`` rather than an exception.
    """
    if not s.contains(x, y):
        raise ValueError(f"point ({x!r}, {y!r}) outside the surface domain")
    try:
        fj = s.f.jet(x)
        gj = s.g.jet(y)
    except JetDomainError as exc:
        return CurvatureSample(x, y, math.nan, math.nan, math.nan, False, str(exc))
    H, K, W = _curvature_from_jets(s.ambient, fj, gj)
    if s.ambient.is_lorentzian and not W > 0.0:
        return CurvatureSample(x, y, H, K, W, False, "degenerate or wrong causal type: W <= 0")
    if not (math.isfinite(H) and math.isfinite(K)):
        return CurvatureSample(x, y, H, K, W, False, "non-finite curvature")
    return CurvatureSample(x, y, H, K, W)


# ---------------------------------------------------------------------------
# General parametrizations


@dataclass(frozen=True)
class Immersion:
    """Position and partial derivatives of a parametrized surface at one point."""

    position: np.ndarray
    xu: np.ndarray
    xv: np.ndarray
    xuu: np.ndarray
    xuv: np.ndarray
    xvv: np.ndarray
    orientation: int = 1
    u: float = 0.0
    v: float = 0.0


def _lorentz_dot(a: np.ndarray, b: np.ndarray) -> float:
    return float(a[0] * b[0] + a[1] * b[1] - a[2] * b[2])


def general_curvature(X: Immersion, ambient: Ambient | str = Ambient.EUCLIDEAN) -> CurvatureSample:
    """H and K from the first and second fundamental forms of ``X``.

    In Lorentzian ambients the causal sign is read off the sign of EG - F^2.
    """
    ambient = Ambient(ambient)
    xu, xv = np.asarray(X.xu, float), np.asarray(X.xv, float)
    if ambient.is_lorentzian:
        dot = _lorentz_dot
        n = np.cross(xu, xv) * np.array([1.0, 1.0, -1.0])
    else:
        dot = lambda a, b: float(np.dot(a, b))  # noqa: E731
        n = np.cross(xu, xv)
    E, F, G = dot(xu, xu), dot(xu, xv), dot(xv, xv)
    det = E * G - F * F
    if abs(det) < DEGENERACY_TOL:
        raise DegenerateMetricError(f"degenerate metric: EG - F^2 = {det!r}")
    n = X.orientation * n / math.sqrt(abs(dot(n, n)))
    e, f, g = dot(n, X.xuu), dot(n, X.xuv), dot(n, X.xvv)
    if ambient.is_lorentzian:
        eps = -1.0 if det > 0 else 1.0
        H = eps * 0.5 * (e * G - 2.0 * f * F + g * E) / det
        K = eps * (e * g - f * f) / det
        W = -eps * det
    else:
        H = (e * G - 2.0 * f * F + g * E) / (2.0 * det)
        K = (e * g - f * f) / det
        W = det
    return CurvatureSample(X.u, X.v, H, K, W)


def graph_immersion(s: TranslationSurface, x: float, y: float) -> Immersion:
    """Partials of the graph parametrization of ``s`` at (x, y)."""
    fj, gj = s.f.jet(x), s.g.jet(y)
    h = fj.c0 + gj.c0
    zero = np.zeros(3)
    if s.ambient is Ambient.LORENTZ_TIMELIKE_XZ:
        return Immersion(
            np.array([x, h, y]), np.array([1.0, fj.c1, 0.0]), np.array([0.0, gj.c1, 1.0]),
            np.array([0.0, fj.c2, 0.0]), zero, np.array([0.0, gj.c2, 0.0]), 1, x, y,
        )
    if s.ambient is Ambient.LORENTZ_TIMELIKE_YZ:
        return Immersion(
            np.array([h, x, y]), np.array([fj.c1, 1.0, 0.0]), np.array([gj.c1, 0.0, 1.0]),
            np.array([fj.c2, 0.0, 0.0]), zero, np.array([gj.c2, 0.0, 0.0]), -1, x, y,
        )
    return Immersion(
        np.array([x, y, h]), np.array([1.0, 0.0, fj.c1]), np.array([0.0, 1.0, gj.c1]),
        np.array([0.0, 0.0, fj.c2]), zero, np.array([0.0, 0.0, gj.c2]), 1, x, y,
    )


# ---------------------------------------------------------------------------
# Grids


@dataclass(frozen=True)
class GridSpec:
    x_start: float
    x_stop: float
    x_count: int
    y_start: float
    y_stop: float
    y_count: int

    def __post_init__(self):
        for axis in ("x", "y"):
            start, stop, count = (getattr(self, f"{axis}_{k}") for k in ("start", "stop", "count"))
            if int(count) != count or count < 1:
                raise ValueError(f"{axis}_count must be a positive integer, got {count!r}")
            if count >= 2 and not start < stop:
                raise ValueError(f"{axis}: start must be below stop, got {start!r}:{stop!r}")

    @classmethod
    def square(cls, start: float, stop: float, count: int) -> "GridSpec":
        return cls(start, stop, count, start, stop, count)

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """Parse ``x0:x1:nx,y0:y1:ny``."""
        try:
            xs, ys = text.split(",")
            x0, x1, nx = xs.split(":")
            y0, y1, ny = ys.split(":")
            return cls(float(x0), float(x1), int(nx), float(y0), float(y1), int(ny))
        except ValueError as exc:
            raise ValueError(f"bad grid {text!r}: expected start:stop:count,start:stop:count ({exc})") from None

    def xs(self) -> np.ndarray:
        if self.x_count == 1:
            return np.array([float(self.x_start)])
        return np.linspace(self.x_start, self.x_stop, self.x_count)

    def ys(self) -> np.ndarray:
        if self.y_count == 1:
            return np.array([float(self.y_start)])
        return np.linspace(self.y_start, self.y_stop, self.y_count)


def sample_grid(s: TranslationSurface, grid: GridSpec) -> list[CurvatureSample]:
    """Samples in row-major order: y is the row index, x varies fastest.

    Raises:
        ValueError: the grid leaves the surface domain.
        NoAdmissibleSamplesError: every sample is invalid.
    """
    xs, ys = grid.xs(), grid.ys()
    if not (s.contains(xs[0], ys[0]) and s.contains(xs[-1], ys[-1])):
        raise ValueError("grid extends outside the surface domain")
    samples = [translation_curvature(s, float(x), float(y)) for y in ys for x in xs]
    if not any(smp.valid for smp in samples):
        raise NoAdmissibleSamplesError("no admissible samples")
    return samples


# ---------------------------------------------------------------------------
# Surface JSON


def _profile_from_json(value: Any, role: str) -> Profile:
    if isinstance(value, str):
        return ExprProfile.parse(value)
    if isinstance(value, dict) and "family" in value:
        from .genesis import family_profile

        return ExprProfile(family_profile(value["family"], float(value.get("lambda", 1.0)), role))
    raise ValueError(f"profile {role!r} must be an expression string or a family object")


def surface_from_dict(doc: dict) -> TranslationSurface:
    ambient = Ambient(doc.get("ambient", "euclidean"))
    f = _profile_from_json(doc["f"], "f")
    g = _profile_from_json(doc["g"], "g")
    domain_f = tuple(float(v) for v in doc.get("domain_f", _UNBOUNDED))
    domain_g = tuple(float(v) for v in doc.get("domain_g", _UNBOUNDED))
    if len(domain_f) != 2 or len(domain_g) != 2:
        raise ValueError("domains must be [start, stop] pairs")
    return TranslationSurface(f, g, ambient, domain_f, domain_g)


def surface_to_dict(s: TranslationSurface) -> dict:
    def src(p: Profile) -> str:
        if not hasattr(p, "source"):
            raise TypeError("only expression profiles can be serialized")
        return p.source

    return {
        "ambient": s.ambient.value,
        "f": src(s.f),
        "g": src(s.g),
        "domain_f": [_json_float(v) for v in s.domain_f],
        "domain_g": [_json_float(v) for v in s.domain_g],
    }


def _json_float(v: float) -> float | None:
    # JSON has no infinities; an open end is written as null
    return v if math.isfinite(v) else None


def load_surface(text: str) -> TranslationSurface:
    doc = json.loads(text)
    for key in ("domain_f", "domain_g"):
        if key in doc:
            lo, hi = doc[key]
            doc[key] = [-math.inf if lo is None else lo, math.inf if hi is None else hi]
    return surface_from_dict(doc)


def dump_surface(s: TranslationSurface) -> str:
    return json.dumps(surface_to_dict(s), indent=2) + "\n"
