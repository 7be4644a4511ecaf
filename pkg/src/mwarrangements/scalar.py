"""Exact scalars over Q and odd prime fields GF(p)."""

from __future__ import annotations

import enum
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Union

from sympy import factorint, isprime

__all__ = [
    "Field",
    "Scalar",
    "SquareClass",
    "QQ",
    "GF",
    "square_class",
    "square_class_rep",
]


class SquareClass(enum.Enum):
    SQUARE = "Square"
    NONSQUARE = "NonSquare"


_GF_RE = re.compile(r"^\s*GF\(\s*(\d+)\s*\)\s*$")


@dataclass(frozen=True)
class Field:
    """The base field: ``p is None`` means the rationals."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if self.p == 2:
                raise ValueError("characteristic 2 is not supported")
            if self.p < 3 or not isprime(self.p):
                raise ValueError(f"GF({self.p}): modulus must be an odd prime")

    @classmethod
    def parse(cls, text: str) -> "Field":
        text = text.strip()
        if text in ("Q", "QQ"):
            return cls(None)
        m = _GF_RE.match(text)
        if not m:
            raise ValueError(f"unknown field {text!r}; expected 'Q' or 'GF(p)'")
        return cls(int(m.group(1)))

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    def __str__(self) -> str:
        return "Q" if self.p is None else f"GF({self.p})"

    def __repr__(self) -> str:
        return f"Field({str(self)!r})"

    def __call__(self, value) -> "Scalar":
        return Scalar(self, value)

    def zero(self) -> "Scalar":
        return Scalar(self, 0)

    def one(self) -> "Scalar":
        return Scalar(self, 1)

    def parse_scalar(self, text: str) -> "Scalar":
        text = text.strip()
        try:
            value = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad scalar {text!r}") from exc
        return Scalar(self, value)

    def elements(self) -> Iterator["Scalar"]:
        if self.p is None:
            raise ValueError("Q is infinite")
        for v in range(self.p):
            yield Scalar(self, v)

    def units(self) -> Iterator["Scalar"]:
        for a in self.elements():
            if a:
                yield a

    def random_element(self, rng: random.Random, nonzero: bool = False, bound: int = 5) -> "Scalar":
        while True:
            if self.p is None:
                num = rng.randint(-bound, bound)
                den = rng.randint(1, max(1, bound // 2))
                a = Scalar(self, Fraction(num, den))
            else:
                a = Scalar(self, rng.randrange(self.p))
            if a or not nonzero:
                return a

    def nonsquare(self) -> "Scalar":
        """Least non-square of GF(p)."""
        if self.p is None:
            raise ValueError("Q has no distinguished non-square")
        return Scalar(self, _least_nonsquare(self.p))


QQ = Field(None)


def GF(p: int) -> Field:
    return Field(p)


@lru_cache(maxsize=None)
def _least_nonsquare(p: int) -> int:
    for a in range(2, p):
        if pow(a, (p - 1) // 2, p) == p - 1:
            return a
    raise AssertionError("unreachable for odd p")


Number = Union[int, Fraction, "Scalar"]


class Scalar:
    """Immutable field element in canonical form.

    Over Q the value is a reduced ``Fraction``; over GF(p) an int in ``[0, p)``.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        if isinstance(value, Scalar):
            if value.field != field:
                raise ValueError(f"cannot coerce {value.field} scalar into {field}")
            value = value.value
        if field.p is None:
            value = Fraction(value)
        else:
            if isinstance(value, Fraction):
                if value.denominator % field.p == 0:
                    raise ZeroDivisionError(f"{value} has no image in {field}")
                value = value.numerator * pow(value.denominator, -1, field.p)
            value = int(value) % field.p
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _coerce(self, other: Number) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise ValueError(f"mixed fields {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(self.field, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.field, self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.field, self.value - other.value)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.field, self.value * other.value)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field, -self.value)

    def inv(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError(f"inverse of zero in {self.field}")
        if self.field.p is None:
            return Scalar(self.field, 1 / self.value)
        return Scalar(self.field, pow(self.value, -1, self.field.p))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        if self.field.p is None:
            return Scalar(self.field, self.value**n)
        return Scalar(self.field, pow(self.value, n, self.field.p))

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == Scalar(self.field, other).value
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.value))

    def sort_key(self):
        return self.value

    def __lt__(self, other: "Scalar"):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"Scalar({self.field}, {self.value})"


def _squarefree_part(n: int) -> int:
    sign = -1 if n < 0 else 1
    out = 1
    for prime, exp in factorint(abs(n)).items():
        if exp % 2:
            out *= prime
    return sign * out


def square_class(a: Scalar) -> Union[SquareClass, int]:
    """Class of ``a`` modulo squares.

    GF(p): Square/NonSquare by Euler's criterion. Q: the squarefree integer
    ``d`` with ``a = d * r**2``.
    """
    if not a:
        raise ValueError("square class of zero")
    p = a.field.p
    if p is not None:
        return SquareClass.SQUARE if pow(a.value, (p - 1) // 2, p) == 1 else SquareClass.NONSQUARE
    return _squarefree_part(a.value.numerator * a.value.denominator)


def square_class_rep(a: Scalar) -> Scalar:
    """Canonical scalar in the square class of ``a``."""
    cls = square_class(a)
    if a.field.p is None:
        return Scalar(a.field, cls)
    if cls is SquareClass.SQUARE:
        return a.field.one()
    return a.field.nonsquare()
