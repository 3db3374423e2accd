"""Rational functions whose denominators are kept as products of atoms.

Expanding denominators would make every sum square the expression size, so a
denominator is stored as ``{atom: exponent}`` where each atom is a primitive
polynomial (positive leading coefficient, coprime integer coefficients) or a
single variable.  Sums use the least common multiple of the two factorizations
and every result is reduced by cancelling atoms that divide the numerator.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping, Union

from .poly import INDEX, VARS, JetPoly

Scalar = Union[int, Fraction]

# Non-variable atoms seen so far, in discovery order.  Inversion tries these
# first when splitting a polynomial into known factors.
_ATOMS: list[JetPoly] = []


def register_atom(p: JetPoly) -> JetPoly:
    """Normalize ``p`` to a primitive atom and remember it for factoring."""
    _, prim = p.primitive()
    if prim.is_constant():
        raise ValueError("constants are not atoms")
    if prim not in _ATOMS and not _is_variable(prim):
        _ATOMS.append(prim)
    return prim


def _is_variable(p: JetPoly) -> bool:
    if len(p.terms) != 1:
        return False
    (mono, c), = p.terms.items()
    return c == 1 and sum(mono) == 1


def _var_atom(i: int) -> JetPoly:
    return JetPoly.var(VARS[i])


def factor_known(p: JetPoly) -> tuple[Fraction, dict[JetPoly, int]]:
    """Write ``p`` as ``c * prod(atom ** e)`` using variables and registered atoms.

    Whatever does not split over the registry becomes a new atom.
    """
    if p.is_zero():
        raise ZeroDivisionError("zero has no factorization")
    c, prim = p.primitive()
    exps: dict[JetPoly, int] = {}
    mono = prim.monomial_content()
    if any(mono):
        prim = prim.divide_monomial(mono)
        for i, e in enumerate(mono):
            if e:
                exps[_var_atom(i)] = e
    for atom in list(_ATOMS):
        while not prim.is_constant():
            q = prim.exact_div(atom)
            if q is None:
                break
            prim = q
            exps[atom] = exps.get(atom, 0) + 1
    if prim.is_constant():
        c *= prim.constant_value()
    else:
        c2, prim = prim.primitive()
        c *= c2
        prim = register_atom(prim)
        exps[prim] = exps.get(prim, 0) + 1
    return c, exps


def _atom_key(atom: JetPoly):
    if _is_variable(atom):
        (mono,) = atom.terms
        return (0, mono.index(1), "")
    return (1, atom.degree(), str(atom))


class RatFunc:
    """``num / prod(atom ** e)``, reduced so no atom divides ``num``."""

    __slots__ = ("num", "den")

    def __init__(self, num: JetPoly | Scalar = 0, den: Mapping[JetPoly, int] | None = None, *, reduce: bool = True):
        if not isinstance(num, JetPoly):
            num = JetPoly.const(num)
        self.num = num
        self.den: dict[JetPoly, int] = {a: e for a, e in (den or {}).items() if e}
        if reduce:
            self._cancel()

    @classmethod
    def var(cls, name: str) -> "RatFunc":
        return cls(JetPoly.var(name))

    @classmethod
    def quotient(cls, num: JetPoly | Scalar, den: JetPoly | Scalar) -> "RatFunc":
        return cls(num) / cls(den)

    def _cancel(self) -> None:
        if self.num.is_zero():
            self.den = {}
            return
        num = self.num
        for atom in list(self.den):
            e = self.den[atom]
            if _is_variable(atom):
                (mono,) = atom.terms
                i = mono.index(1)
                k = min(e, num.monomial_content()[i])
                if k:
                    shift = [0] * len(VARS)
                    shift[i] = k
                    num = num.divide_monomial(tuple(shift))
                    e -= k
            else:
                while e:
                    q = num.exact_div(atom)
                    if q is None:
                        break
                    num = q
                    e -= 1
            if e:
                self.den[atom] = e
            else:
                del self.den[atom]
        self.num = num

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self.den

    def variables(self) -> set[str]:
        used = set(self.num.variables())
        for atom in self.den:
            used |= atom.variables()
        return used

    def denominator(self) -> JetPoly:
        out = JetPoly.const(1)
        for atom, e in self.den.items():
            out = out * atom ** e
        return out

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        d = Fraction(1)
        for atom, e in self.den.items():
            d *= atom.evaluate(point) ** e
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the sample point")
        return self.num.evaluate(point) / d

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (JetPoly, int, Fraction)):
            return RatFunc(other, reduce=False)
        return NotImplemented

    def __add__(self, other) -> "RatFunc":
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        common = dict(self.den)
        for atom, e in other.den.items():
            common[atom] = max(common.get(atom, 0), e)
        left = self.num
        right = other.num
        for atom, e in common.items():
            ls = e - self.den.get(atom, 0)
            rs = e - other.den.get(atom, 0)
            if ls:
                left = left * atom ** ls
            if rs:
                right = right * atom ** rs
        return RatFunc(left + right, common)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other) -> "RatFunc":
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        return RatFunc._coerce(other) - self

    def __mul__(self, other) -> "RatFunc":
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFunc()
        den = dict(self.den)
        for atom, e in other.den.items():
            den[atom] = den.get(atom, 0) + e
        return RatFunc(self.num * other.num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        c, exps = factor_known(self.num)
        num = JetPoly.const(1 / c)
        for atom, e in self.den.items():
            num = num * atom ** e
        return RatFunc(num, exps)

    def __truediv__(self, other) -> "RatFunc":
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return RatFunc._coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        out = RatFunc(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    # -- calculus and substitution -----------------------------------------

    def derive(self, d: Callable[[JetPoly], JetPoly]) -> "RatFunc":
        """Apply a derivation given by its action on polynomials."""
        moving = [(atom, e, d(atom)) for atom, e in self.den.items()]
        moving = [(atom, e, da) for atom, e, da in moving if not da.is_zero()]
        dnum = d(self.num)
        if not moving:
            return RatFunc(dnum, self.den)
        prod_all = JetPoly.const(1)
        for atom, _, _ in moving:
            prod_all = prod_all * atom
        num = dnum * prod_all
        for i, (atom, e, da) in enumerate(moving):
            others = JetPoly.const(e)
            for j, (other, _, _) in enumerate(moving):
                if j != i:
                    others = others * other
            num = num - self.num * da * others
        den = dict(self.den)
        for atom, e, _ in moving:
            den[atom] = e + 1
        return RatFunc(num, den)

    def substitute(self, mapping: Mapping[str, JetPoly | "RatFunc"]) -> "RatFunc":
        """Replace variables by polynomials or rational functions."""
        polys = {k: v for k, v in mapping.items() if isinstance(v, JetPoly)}
        rats = {k: v for k, v in mapping.items() if isinstance(v, RatFunc)}

        def sub(p: JetPoly) -> RatFunc:
            out = RatFunc(p.substitute(polys) if polys else p)
            if rats:
                out = _substitute_rational(out.num, rats)
            return out

        result = sub(self.num)
        for atom, e in self.den.items():
            result = result / sub(atom) ** e
        return result

    # -- printing ---------------------------------------------------------

    def __str__(self) -> str:
        num = str(self.num)
        if not self.den:
            return num
        if len(self.num.terms) > 1:
            num = f"({num})"
        parts = []
        for atom in sorted(self.den, key=_atom_key):
            e = self.den[atom]
            text = str(atom) if _is_variable(atom) else f"({atom})"
            parts.append(text if e == 1 else f"{text}^{e}")
        den = "*".join(parts)
        return f"{num} / ({den})" if len(parts) > 1 else f"{num} / {den}"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def _substitute_rational(p: JetPoly, rats: Mapping[str, RatFunc]) -> RatFunc:
    """Evaluate ``p`` with rational values for some variables (Horner-free, term by term)."""
    out = RatFunc()
    idx = {INDEX[k]: v for k, v in rats.items()}
    for mono, c in p.terms.items():
        kept = list(mono)
        term = RatFunc(c)
        for i, v in idx.items():
            if mono[i]:
                term = term * v ** mono[i]
                kept[i] = 0
        out = out + term * JetPoly({tuple(kept): 1})
    return out
