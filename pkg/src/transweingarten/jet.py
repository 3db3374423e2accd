"""Third-order jets: a value and its first three derivatives at a point.

Jets are the arithmetic carrier for every numeric curvature evaluation.  The
coordinates are plain derivatives (not Taylor coefficients), so the jet of
``t**2`` at ``t`` is ``(t**2, 2t, 2, 0)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

Number = Union[int, float]

# Distance from a pole of tan below which a lift is refused.
POLE_GUARD = 1e-8


class JetDomainError(ArithmeticError):
    """An elementary function or division was applied outside its domain."""

    def __init__(self, message: str, point: float | None = None):
        super().__init__(message)
        self.point = point


@dataclass(frozen=True)
class Jet3:
    c0: float
    c1: float = 0.0
    c2: float = 0.0
    c3: float = 0.0

    @classmethod
    def const(cls, value: Number) -> "Jet3":
        return cls(float(value), 0.0, 0.0, 0.0)

    @classmethod
    def variable(cls, t: Number) -> "Jet3":
        """Jet of the identity function at ``t``."""
        return cls(float(t), 1.0, 0.0, 0.0)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.c0, self.c1, self.c2, self.c3)

    def __iter__(self):
        return iter(self.as_tuple())

    def __add__(self, other: Jet3 | Number) -> Jet3:
        o = _coerce(other)
        return Jet3(self.c0 + o.c0, self.c1 + o.c1, self.c2 + o.c2, self.c3 + o.c3)

    __radd__ = __add__

    def __neg__(self) -> Jet3:
        return Jet3(-self.c0, -self.c1, -self.c2, -self.c3)

    def __sub__(self, other: Jet3 | Number) -> Jet3:
        return self + (-_coerce(other))

    def __rsub__(self, other: Number) -> Jet3:
        return _coerce(other) - self

    def __mul__(self, other: Jet3 | Number) -> Jet3:
        o = _coerce(other)
        u0, u1, u2, u3 = self.c0, self.c1, self.c2, self.c3
        v0, v1, v2, v3 = o.c0, o.c1, o.c2, o.c3
        return Jet3(
            u0 * v0,
            u1 * v0 + u0 * v1,
            u2 * v0 + 2.0 * u1 * v1 + u0 * v2,
            u3 * v0 + 3.0 * u2 * v1 + 3.0 * u1 * v2 + u0 * v3,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Jet3 | Number) -> Jet3:
        return self * reciprocal(_coerce(other))

    def __rtruediv__(self, other: Number) -> Jet3:
        return _coerce(other) * reciprocal(self)

    def __pow__(self, exponent: Number) -> Jet3:
        return power(self, exponent)


def _coerce(x: Jet3 | Number) -> Jet3:
    if isinstance(x, Jet3):
        return x
    return Jet3.const(x)


def compose(u: Jet3, d0: float, d1: float, d2: float, d3: float) -> Jet3:
    """Chain rule through order 3 given phi and its derivatives at ``u.c0``."""
    u1, u2, u3 = u.c1, u.c2, u.c3
    return Jet3(
        d0,
        d1 * u1,
        d2 * u1 * u1 + d1 * u2,
        d3 * u1 * u1 * u1 + 3.0 * d2 * u1 * u2 + d1 * u3,
    )


def reciprocal(v: Jet3) -> Jet3:
    x = v.c0
    if x == 0.0:
        raise JetDomainError("division by a jet with zero value", point=x)
    r = 1.0 / x
    return compose(v, r, -r * r, 2.0 * r ** 3, -6.0 * r ** 4)


def jet_add(u: Jet3, v: Jet3) -> Jet3:
    return u + v


def jet_mul(u: Jet3, v: Jet3) -> Jet3:
    return u * v


def jet_div(u: Jet3, v: Jet3) -> Jet3:
    return u / v


def jet_neg(u: Jet3) -> Jet3:
    return -u


def _sin(u: Jet3) -> Jet3:
    s, c = math.sin(u.c0), math.cos(u.c0)
    return compose(u, s, c, -s, -c)


def _cos(u: Jet3) -> Jet3:
    s, c = math.sin(u.c0), math.cos(u.c0)
    return compose(u, c, -s, -c, s)


def _tan(u: Jet3) -> Jet3:
    if abs(math.cos(u.c0)) < POLE_GUARD:
        raise JetDomainError(f"tan evaluated within {POLE_GUARD:g} of a pole at t={u.c0!r}", point=u.c0)
    t = math.tan(u.c0)
    sec2 = 1.0 + t * t
    return compose(u, t, sec2, 2.0 * t * sec2, sec2 * (2.0 + 6.0 * t * t))


def _exp(u: Jet3) -> Jet3:
    e = math.exp(u.c0)
    return compose(u, e, e, e, e)


def _log(u: Jet3) -> Jet3:
    x = u.c0
    if not x > 0.0:
        raise JetDomainError(f"log of non-positive value {x!r}", point=x)
    r = 1.0 / x
    return compose(u, math.log(x), r, -r * r, 2.0 * r ** 3)


def _sqrt(u: Jet3) -> Jet3:
    x = u.c0
    if not x > 0.0:
        # sqrt(0) has a value but no finite derivatives
        raise JetDomainError(f"sqrt of non-positive value {x!r}", point=x)
    s = math.sqrt(x)
    return compose(u, s, 0.5 / s, -0.25 / (s * x), 0.375 / (s * x * x))


def _sinh(u: Jet3) -> Jet3:
    sh, ch = math.sinh(u.c0), math.cosh(u.c0)
    return compose(u, sh, ch, sh, ch)


def _cosh(u: Jet3) -> Jet3:
    sh, ch = math.sinh(u.c0), math.cosh(u.c0)
    return compose(u, ch, sh, ch, sh)


def _tanh(u: Jet3) -> Jet3:
    t = math.tanh(u.c0)
    d = 1.0 - t * t
    return compose(u, t, d, -2.0 * t * d, d * (6.0 * t * t - 2.0))


def _atan(u: Jet3) -> Jet3:
    x = u.c0
    d = 1.0 + x * x
    return compose(u, math.atan(x), 1.0 / d, -2.0 * x / d ** 2, (6.0 * x * x - 2.0) / d ** 3)


ELEMENTARY: dict[str, Callable[[Jet3], Jet3]] = {
    "sin": _sin,
    "cos": _cos,
    "tan": _tan,
    "exp": _exp,
    "log": _log,
    "sqrt": _sqrt,
    "sinh": _sinh,
    "cosh": _cosh,
    "tanh": _tanh,
    "atan": _atan,
}


def power(u: Jet3, exponent: Number) -> Jet3:
    """``u ** exponent``; integer exponents work for any base, others need ``u.c0 > 0``."""
    p = float(exponent)
    if p.is_integer():
        n = int(p)
        if n < 0:
            return reciprocal(_int_power(u, -n))
        return _int_power(u, n)
    x = u.c0
    if not x > 0.0:
        raise JetDomainError(f"non-integer power {p!r} of non-positive value {x!r}", point=x)
    return compose(
        u,
        x ** p,
        p * x ** (p - 1.0),
        p * (p - 1.0) * x ** (p - 2.0),
        p * (p - 1.0) * (p - 2.0) * x ** (p - 3.0),
    )


def _int_power(u: Jet3, n: int) -> Jet3:
    result = Jet3.const(1.0)
    base = u
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def jet_lift(name: str, u: Jet3, exponent: Number | None = None) -> Jet3:
    """Compose an elementary function (or ``power``) with a jet.

    Raises:
        JetDomainError: the base point lies outside the function's domain.
        KeyError: unknown function tag.
    """
    if name == "power":
        if exponent is None:
            raise ValueError("power lift needs an exponent")
        return power(u, exponent)
    try:
        fn = ELEMENTARY[name]
    except KeyError:
        raise KeyError(f"unknown elementary function {name!r}") from None
    return fn(u)
