"""Sparse multivariate polynomials with exact rational coefficients.

The indeterminates are fixed: the jet variables ``f1..f4`` and ``g1..g4``
(first to fourth derivative of each profile) and the constants ``a``, ``b``,
``lam`` and ``m`` used by the identity suites.  A monomial is a tuple of
exponents aligned with :data:`VARS`; tuples compare lexicographically, which
is the monomial order used for leading terms and division.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

VARS = ("a", "b", "lam", "m", "f1", "f2", "f3", "f4", "g1", "g2", "g3", "g4")
INDEX = {name: i for i, name in enumerate(VARS)}
NVARS = len(VARS)
ZERO_MONO = (0,) * NVARS

Scalar = Union[int, Fraction]
Monomial = tuple


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(m1, m2))


def _divides(d: Monomial, m: Monomial) -> bool:
    return all(x <= y for x, y in zip(d, m))


class JetPoly:
    """Immutable polynomial; zero coefficients are never stored."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff != 0:
                    clean[mono] = Fraction(coeff)
        self.terms: dict[Monomial, Fraction] = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "JetPoly":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Scalar) -> "JetPoly":
        return cls({ZERO_MONO: c})

    @classmethod
    def var(cls, name: str) -> "JetPoly":
        mono = [0] * NVARS
        mono[INDEX[name]] = 1
        return cls({tuple(mono): 1})

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ZERO_MONO in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get(ZERO_MONO, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def variables(self) -> set[str]:
        used = set()
        for mono in self.terms:
            for i, e in enumerate(mono):
                if e:
                    used.add(VARS[i])
        return used

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def leading(self) -> tuple[Monomial, Fraction]:
        mono = max(self.terms)
        return mono, self.terms[mono]

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "JetPoly":
        if isinstance(other, JetPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return JetPoly.const(other)
        return NotImplemented

    def __add__(self, other) -> "JetPoly":
        other = JetPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for mono, c in other.terms.items():
            v = out.get(mono, 0) + c
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return JetPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "JetPoly":
        return JetPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "JetPoly":
        other = JetPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "JetPoly":
        return JetPoly._coerce(other) - self

    def __mul__(self, other) -> "JetPoly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return JetPoly()
            return JetPoly._raw({m: c * other for m, c in self.terms.items()})
        other = JetPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                v = out.get(mono, 0) + c1 * c2
                if v:
                    out[mono] = v
                else:
                    out.pop(mono, None)
        return JetPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "JetPoly":
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = JetPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        other = JetPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- calculus and substitution -----------------------------------------

    def partial(self, name: str) -> "JetPoly":
        i = INDEX[name]
        out = {}
        for mono, c in self.terms.items():
            e = mono[i]
            if e:
                m = list(mono)
                m[i] = e - 1
                out[tuple(m)] = c * e
        return JetPoly._raw(out)

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        values = [Fraction(point.get(name, 0)) for name in VARS]
        total = Fraction(0)
        for mono, c in self.terms.items():
            term = c
            for v, e in zip(values, mono):
                if e:
                    term *= v ** e
            total += term
        return total

    def substitute(self, mapping: Mapping[str, "JetPoly"]) -> "JetPoly":
        idx = [(INDEX[name], JetPoly._coerce(p)) for name, p in mapping.items()]
        result = JetPoly()
        cache: dict[tuple[int, int], JetPoly] = {}
        for mono, c in self.terms.items():
            kept = list(mono)
            factor = JetPoly.const(c)
            for i, p in idx:
                e = mono[i]
                if e:
                    kept[i] = 0
                    key = (i, e)
                    if key not in cache:
                        cache[key] = p ** e
                    factor = factor * cache[key]
            result = result + factor * JetPoly._raw({tuple(kept): Fraction(1)})
        return result

    # -- division ---------------------------------------------------------

    def exact_div(self, d: "JetPoly") -> "JetPoly | None":
        """Quotient if ``d`` divides ``self`` exactly, else None."""
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return JetPoly()
        lm_d, lc_d = d.leading()
        rem = dict(self.terms)
        quot: dict[Monomial, Fraction] = {}
        d_items = list(d.terms.items())
        while rem:
            lm = max(rem)
            if not _divides(lm_d, lm):
                return None
            shift = tuple(x - y for x, y in zip(lm, lm_d))
            q = rem[lm] / lc_d
            quot[shift] = q
            for mono, c in d_items:
                key = _mono_mul(mono, shift)
                v = rem.get(key, 0) - q * c
                if v:
                    rem[key] = v
                else:
                    rem.pop(key, None)
        return JetPoly._raw(quot)

    def monomial_content(self) -> Monomial:
        """Largest monomial dividing every term."""
        if not self.terms:
            return ZERO_MONO
        it = iter(self.terms)
        low = list(next(it))
        for mono in it:
            low = [min(x, y) for x, y in zip(low, mono)]
        return tuple(low)

    def divide_monomial(self, mono: Monomial) -> "JetPoly":
        return JetPoly._raw({tuple(x - y for x, y in zip(m, mono)): c for m, c in self.terms.items()})

    def primitive(self) -> tuple[Fraction, "JetPoly"]:
        """Split into ``c * p`` with ``p`` integral, coprime, positive leading coefficient."""
        from math import gcd, lcm

        if not self.terms:
            return Fraction(0), self
        den = 1
        for c in self.terms.values():
            den = lcm(den, c.denominator)
        num_gcd = 0
        for c in self.terms.values():
            num_gcd = gcd(num_gcd, (c * den).numerator)
        c = Fraction(num_gcd, den)
        if self.leading()[1] < 0:
            c = -c
        return c, JetPoly._raw({m: v / c for m, v in self.terms.items()})

    def proportional_to(self, other: "JetPoly") -> Fraction | None:
        """Constant ``c`` with ``self == c * other``, or None."""
        if other.is_zero():
            return Fraction(0) if self.is_zero() else None
        lm, lc = other.leading()
        c = self.terms.get(lm, Fraction(0)) / lc
        return c if (self - other * c).is_zero() else None

    # -- printing ---------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, reverse=True):
            c = self.terms[mono]
            body = format_monomial(mono)
            if not body:
                text = str(abs(c))
            elif abs(c) == 1:
                text = body
            else:
                text = f"{abs(c)}*{body}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, text))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self) -> str:
        return f"JetPoly({self})"


def format_monomial(mono: Monomial) -> str:
    return "*".join(VARS[i] if e == 1 else f"{VARS[i]}^{e}" for i, e in enumerate(mono) if e)


def variables(*names: str) -> tuple[JetPoly, ...]:
    return tuple(JetPoly.var(n) for n in names)


def poly_sum(polys: Iterable[JetPoly]) -> JetPoly:
    total = JetPoly()
    for p in polys:
        total = total + p
    return total
