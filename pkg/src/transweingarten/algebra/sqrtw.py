"""Expressions ``A + B * sqrt(W)`` and the derivations acting on jets.

The square root of the metric factor is never expanded: ``S**2`` is reduced
to ``W`` on the fly, so every expression has exactly one rational part and
one part proportional to ``S``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from .poly import JetPoly
from .ratfunc import RatFunc

Scalar = Union[int, Fraction]


class JetOrderError(ValueError):
    """A derivative would need a jet entry beyond the tracked order."""


@dataclass(frozen=True)
class Derivation:
    """A derivation on the jet ring, fixed by the images of its generators.

    Variables missing from ``images`` are constants.  An image of ``None``
    marks a variable whose derivative is not representable.
    """

    name: str
    images: Mapping[str, JetPoly | None] = field(default_factory=dict)

    def __call__(self, p: JetPoly) -> JetPoly:
        out = JetPoly()
        for var in p.variables():
            if var not in self.images:
                continue
            image = self.images[var]
            if image is None:
                raise JetOrderError(f"{self.name}-derivative of {var} is beyond the tracked jet order")
            out = out + p.partial(var) * image
        return out


def _jet_chain(prefix: str) -> dict[str, JetPoly | None]:
    names = [f"{prefix}{k}" for k in range(1, 5)]
    chain: dict[str, JetPoly | None] = {n: JetPoly.var(nxt) for n, nxt in zip(names, names[1:])}
    chain[names[-1]] = None
    return chain


# d/dx moves along the f-jets, d/dy along the g-jets.
DX = Derivation("x", _jet_chain("f"))
DY = Derivation("y", _jet_chain("g"))


Operand = Union["SqrtWExpr", RatFunc, JetPoly, int, Fraction]


class SqrtWExpr:
    """``rational + coeff * S`` where ``S * S == W``."""

    __slots__ = ("rational", "coeff", "W")

    def __init__(self, rational: RatFunc | JetPoly | Scalar, coeff: RatFunc | JetPoly | Scalar, W: JetPoly):
        self.rational = RatFunc._coerce(rational)
        self.coeff = RatFunc._coerce(coeff)
        self.W = W

    @classmethod
    def sqrt(cls, W: JetPoly) -> "SqrtWExpr":
        return cls(0, 1, W)

    def _lift(self, other) -> "SqrtWExpr":
        if isinstance(other, SqrtWExpr):
            if other.W != self.W:
                raise ValueError("cannot combine expressions over different radicands")
            return other
        if isinstance(other, (RatFunc, JetPoly, int, Fraction)):
            return SqrtWExpr(other, 0, self.W)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.rational.is_zero() and self.coeff.is_zero()

    def variables(self) -> set[str]:
        used = self.rational.variables() | self.coeff.variables()
        if not self.coeff.is_zero():
            used |= self.W.variables()
        return used

    def __add__(self, other) -> "SqrtWExpr":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return SqrtWExpr(self.rational + other.rational, self.coeff + other.coeff, self.W)

    __radd__ = __add__

    def __neg__(self) -> "SqrtWExpr":
        return SqrtWExpr(-self.rational, -self.coeff, self.W)

    def __sub__(self, other) -> "SqrtWExpr":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "SqrtWExpr":
        return self._lift(other) - self

    def __mul__(self, other) -> "SqrtWExpr":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        a1, b1, a2, b2 = self.rational, self.coeff, other.rational, other.coeff
        rational = a1 * a2
        if not (b1.is_zero() or b2.is_zero()):
            rational = rational + b1 * b2 * self.W
        return SqrtWExpr(rational, a1 * b2 + a2 * b1, self.W)

    __rmul__ = __mul__

    def conjugate(self) -> "SqrtWExpr":
        return SqrtWExpr(self.rational, -self.coeff, self.W)

    def norm(self) -> RatFunc:
        """``A**2 - B**2 * W``, the product with the conjugate."""
        return self.rational * self.rational - self.coeff * self.coeff * self.W

    def inverse(self) -> "SqrtWExpr":
        if self.coeff.is_zero():
            return SqrtWExpr(1 / self.rational, 0, self.W)
        n = self.norm()
        if n.is_zero():
            raise ZeroDivisionError("expression is a zero divisor")
        inv = 1 / n
        return SqrtWExpr(self.rational * inv, -self.coeff * inv, self.W)

    def __truediv__(self, other) -> "SqrtWExpr":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "SqrtWExpr":
        return self._lift(other) * self.inverse()

    def __pow__(self, n: int) -> "SqrtWExpr":
        if n < 0:
            return self.inverse() ** (-n)
        out = SqrtWExpr(1, 0, self.W)
        for _ in range(n):
            out = out * self
        return out

    def derive(self, d: Derivation) -> "SqrtWExpr":
        """``D(A + B S) = DA + (DB + B DW / (2W)) S``."""
        coeff = self.coeff.derive(d)
        if not self.coeff.is_zero():
            dw = d(self.W)
            if not dw.is_zero():
                coeff = coeff + self.coeff * RatFunc(dw) / (2 * RatFunc(self.W))
        return SqrtWExpr(self.rational.derive(d), coeff, self.W)

    def substitute(self, mapping: Mapping[str, JetPoly | RatFunc]) -> "SqrtWExpr":
        """Substitute variables that do not occur in ``W``."""
        clash = set(mapping) & self.W.variables()
        if clash and not self.coeff.is_zero():
            raise ValueError(f"cannot substitute {sorted(clash)} inside the radicand")
        return SqrtWExpr(self.rational.substitute(mapping), self.coeff.substitute(mapping), self.W)

    def evaluate_parts(self, point: Mapping[str, Scalar]) -> tuple[Fraction, Fraction]:
        return self.rational.evaluate(point), self.coeff.evaluate(point)

    def __str__(self) -> str:
        if self.coeff.is_zero():
            return str(self.rational)
        return f"[{self.rational}] + [{self.coeff}]*sqrt({self.W})"

    def __repr__(self) -> str:
        return f"SqrtWExpr({self})"


def as_sqrtw(value: Operand, W: JetPoly) -> SqrtWExpr:
    if isinstance(value, SqrtWExpr):
        return value
    return SqrtWExpr(value, 0, W)
