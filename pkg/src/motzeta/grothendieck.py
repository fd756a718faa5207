"""
Exact arithmetic in Z[L, L^-1] and in the free Z[L, L^-1]-module spanned by
stratum classes.

A ``LaurentPoly`` is a polynomial in the Lefschetz symbol ``L`` with integer
coefficients and possibly negative exponents. A ``MotivicClass`` is a finite
formal sum ``sum_S p_S(L) [S]`` over opaque stratum symbols. Two classes can be
added and a class can be scaled by a Laurent polynomial, but two classes are
never multiplied: every formula in this package is a Laurent multiple of a
single stratum class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import MissingSymbolValue

Scalar = Union[int, "LaurentPoly"]


class LaurentPoly:
    """Immutable integer Laurent polynomial in L, stored as ``{exponent: coeff}``."""

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for exp, c in items:
            exp, c = int(exp), int(c)
            acc[exp] = acc.get(exp, 0) + c
        self._coeffs = {e: c for e, c in sorted(acc.items()) if c != 0}
        self._hash = None

    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def monomial(cls, exp: int, c: int = 1) -> LaurentPoly:
        return cls({exp: c})

    @classmethod
    def coerce(cls, x: Scalar) -> LaurentPoly:
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls.const(x)
        raise TypeError(f"cannot interpret {x!r} as a Laurent polynomial in L")

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def is_zero(self) -> bool:
        return not self._coeffs

    def degree(self) -> int | None:
        return max(self._coeffs) if self._coeffs else None

    def valuation(self) -> int | None:
        return min(self._coeffs) if self._coeffs else None

    def __bool__(self):
        return bool(self._coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._coeffs.items()))
        return self._hash

    def __add__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            # only units (signed monomials) are invertible in Z[L, L^-1]
            if len(self._coeffs) != 1:
                raise ValueError("only monomials can be raised to negative powers")
            (e, c), = self._coeffs.items()
            if c not in (1, -1):
                raise ValueError(f"{self} is not a unit in Z[L, L^-1]")
            return LaurentPoly({e * n: c ** (-n)})
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def evaluate(self, x) -> Fraction:
        """Exact value at ``L = x``; ``x`` must be nonzero if negative exponents occur."""
        x = Fraction(x)
        total = Fraction(0)
        for e, c in self._coeffs.items():
            total += c * x ** e
        return total

    def __repr__(self):
        return f"LaurentPoly({self._coeffs!r})"

    def __str__(self):
        return render_laurent(self)


def render_laurent(p: LaurentPoly, var: str = "L") -> str:
    """Canonical text: descending exponents, explicit signs, e.g. ``L^2 - 2*L + 1``."""
    if p.is_zero():
        return "0"
    parts = []
    for e, c in sorted(p.items(), reverse=True):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = str(a)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
L = LaurentPoly.monomial(1)
L_INV = LaurentPoly.monomial(-1)


def laurent_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


class MotivicClass:
    """
    Element of the free Z[L, L^-1]-module on stratum symbols.

    Terms with a zero coefficient are never stored, so two classes compare equal
    exactly when they are equal as module elements.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[str, Scalar] | Iterable[tuple[str, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[str, LaurentPoly] = {}
        for sym, p in items:
            p = LaurentPoly.coerce(p)
            acc[sym] = acc.get(sym, ZERO) + p
        self._terms = {s: p for s, p in acc.items() if not p.is_zero()}

    @classmethod
    def symbol(cls, sym: str, coeff: Scalar = 1) -> MotivicClass:
        return cls({sym: coeff})

    @property
    def terms(self) -> dict[str, LaurentPoly]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def symbols(self) -> set[str]:
        return set(self._terms)

    def coefficient(self, sym: str) -> LaurentPoly:
        return self._terms.get(sym, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, MotivicClass):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        if not isinstance(other, MotivicClass):
            return NotImplemented
        out = dict(self._terms)
        for s, p in other._terms.items():
            out[s] = out.get(s, ZERO) + p
        return MotivicClass(out)

    def __neg__(self):
        return MotivicClass({s: -p for s, p in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MotivicClass):
            return NotImplemented
        return self + (-other)

    def scale(self, p: Scalar) -> MotivicClass:
        p = LaurentPoly.coerce(p)
        return MotivicClass({s: c * p for s, c in self._terms.items()})

    def __mul__(self, other):
        # scalar action only; MotivicClass * MotivicClass is deliberately undefined
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __repr__(self):
        return f"MotivicClass({self._terms!r})"

    def __str__(self):
        return render_class(self)


EMPTY = MotivicClass()


def class_add(a: MotivicClass, b: MotivicClass) -> MotivicClass:
    return a + b


def class_scale(c: MotivicClass, p: Scalar) -> MotivicClass:
    return c.scale(p)


def class_sum(classes: Iterable[MotivicClass]) -> MotivicClass:
    acc: dict[str, LaurentPoly] = {}
    for c in classes:
        for s, p in c.items():
            acc[s] = acc.get(s, ZERO) + p
    return MotivicClass(acc)


def render_class(c: MotivicClass, order: Iterable[str] | None = None) -> str:
    """Render ``c`` as ``coeff*[S] + ...``; symbols follow ``order`` then sort order."""
    if c.is_zero():
        return "0"
    syms = list(order or [])
    syms = [s for s in syms if s in c.symbols()]
    syms += sorted(c.symbols() - set(syms))
    pieces = []
    for s in syms:
        p = c.coefficient(s)
        neg = False
        if len(p.coeffs) == 1:
            (e, k), = p.items()
            if k < 0:
                neg, p = True, -p
            text = "" if p == ONE else render_laurent(p) + "*"
        else:
            text = f"({render_laurent(p)})*"
        pieces.append((neg, f"{text}[{s}]"))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


@dataclass(frozen=True)
class Specialization:
    """Ring morphism data: a value per stratum symbol and a value for L."""

    symbol_values: Mapping[str, Fraction] = field(default_factory=dict)
    L_value: Fraction = Fraction(1)

    def __post_init__(self):
        if Fraction(self.L_value) == 0:
            raise ValueError("L is invertible; L_value must be nonzero")


def specialize_class(c: MotivicClass, s: Specialization) -> Fraction:
    total = Fraction(0)
    for sym, p in c.items():
        if sym not in s.symbol_values:
            raise MissingSymbolValue(sym)
        total += p.evaluate(s.L_value) * Fraction(s.symbol_values[sym])
    return total


def serre_reduce(c: MotivicClass) -> MotivicClass:
    """Image modulo (L - [X_s]): the base class is the unit, so L acts as 1."""
    return MotivicClass({s: p.evaluate(1).numerator for s, p in c.items()})


def substitute(c: MotivicClass, rewrite: Mapping[str, MotivicClass]) -> MotivicClass:
    """Replace every symbol by a class (a module map); unmapped symbols raise."""
    parts = []
    for sym, p in c.items():
        if sym not in rewrite:
            raise MissingSymbolValue(sym)
        parts.append(rewrite[sym].scale(p))
    return class_sum(parts)
