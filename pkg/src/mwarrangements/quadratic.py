"""Concrete model of Milnor-Witt K-theory of a prime field GF(q), q odd.

Degree >= 2 vanishes, degree 1 is GF(q)^x, degree 0 is GW(GF(q)) and every
negative degree is W(GF(q)).  GW classes are (rank, discriminant) with the
discriminant stored as a Legendre symbol; W classes are GW classes modulo the
hyperbolic plane <1> + <-1>.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .scalar import Field, Scalar


def legendre(a: Scalar) -> int:
    p = a.field.p
    if not a:
        raise ValueError("Legendre symbol of zero")
    return 1 if pow(a.value, (p - 1) // 2, p) == 1 else -1


def _pow_sign(d: int, r: int) -> int:
    return d if r % 2 else 1


@dataclass(frozen=True)
class GWClass:
    rank: int
    disc: int
    q: int

    def __add__(self, other: "GWClass") -> "GWClass":
        return GWClass(self.rank + other.rank, self.disc * other.disc, self.q)

    def __neg__(self) -> "GWClass":
        return GWClass(-self.rank, self.disc, self.q)

    def __sub__(self, other: "GWClass") -> "GWClass":
        return self + (-other)

    def __mul__(self, other: "GWClass") -> "GWClass":
        return GWClass(
            self.rank * other.rank,
            _pow_sign(self.disc, other.rank) * _pow_sign(other.disc, self.rank),
            self.q,
        )

    def scale(self, n: int) -> "GWClass":
        return GWClass(n * self.rank, _pow_sign(self.disc, n), self.q)

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and self.disc == 1

    def to_witt(self) -> "WittClass":
        return WittClass.reduce(self.rank, self.disc, self.q)

    @classmethod
    def one(cls, q: int) -> "GWClass":
        return cls(1, 1, q)

    @classmethod
    def form(cls, a: Scalar) -> "GWClass":
        """The class of the rank one form <a>."""
        return cls(1, legendre(a), a.field.p)


@dataclass(frozen=True)
class WittClass:
    rank: int  # 0 or 1
    disc: int
    q: int

    @classmethod
    def reduce(cls, rank: int, disc: int, q: int) -> "WittClass":
        k = rank // 2
        minus_one = 1 if q % 4 == 1 else -1
        return cls(rank - 2 * k, disc * _pow_sign(minus_one, k), q)

    def lift(self) -> GWClass:
        return GWClass(self.rank, self.disc, self.q)

    def __add__(self, other: "WittClass") -> "WittClass":
        return (self.lift() + other.lift()).to_witt()

    def __neg__(self) -> "WittClass":
        return (-self.lift()).to_witt()

    def __mul__(self, other: "WittClass") -> "WittClass":
        return (self.lift() * other.lift()).to_witt()

    def scale(self, n: int) -> "WittClass":
        return self.lift().scale(n).to_witt()

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and self.disc == 1


Value = Union[Scalar, GWClass, WittClass]


class GradedValue:
    """Element of the graded model: a map degree -> value, zeros dropped."""

    def __init__(self, field: Field, parts: dict[int, Value] | None = None):
        self.field = field
        self.parts: dict[int, Value] = {}
        for deg, v in (parts or {}).items():
            if not _value_is_zero(v) and deg <= 1:
                self.parts[deg] = v

    @property
    def q(self) -> int:
        return self.field.p

    def is_zero(self) -> bool:
        return not self.parts

    def __eq__(self, other):
        return isinstance(other, GradedValue) and self.field == other.field and self.parts == other.parts

    def __repr__(self):
        return f"GradedValue({self.parts})"

    def __add__(self, other: "GradedValue") -> "GradedValue":
        parts = dict(self.parts)
        for deg, v in other.parts.items():
            parts[deg] = _add(parts[deg], v) if deg in parts else v
        return GradedValue(self.field, parts)

    def __neg__(self) -> "GradedValue":
        return GradedValue(self.field, {d: _scale(v, -1) for d, v in self.parts.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, n: int) -> "GradedValue":
        return GradedValue(self.field, {d: _scale(v, n) for d, v in self.parts.items()})

    def __mul__(self, other: "GradedValue") -> "GradedValue":
        out = GradedValue(self.field)
        for d1, v1 in self.parts.items():
            for d2, v2 in other.parts.items():
                prod = _mul(d1, v1, d2, v2, self.q)
                if prod is not None:
                    out = out + GradedValue(self.field, {d1 + d2: prod})
        return out


def _value_is_zero(v: Value) -> bool:
    if isinstance(v, Scalar):
        return v == 1
    return v.is_zero


def _add(a: Value, b: Value) -> Value:
    if isinstance(a, Scalar):
        return a * b
    return a + b


def _scale(v: Value, n: int) -> Value:
    if isinstance(v, Scalar):
        return v**n
    return v.scale(n)


def _mul(d1: int, v1: Value, d2: int, v2: Value, q: int) -> Value | None:
    if d1 + d2 >= 2:
        return None
    if d1 < d2:
        d1, v1, d2, v2 = d2, v2, d1, v1
    if d1 == 1:
        a = v1
        if d2 == 0:
            return a ** v2.rank
        # [a] * (eta-multiple of a Witt class w) = (<a> - 1) w
        disc = _pow_sign(legendre(a), v2.rank)
        if d1 + d2 == 0:
            return GWClass(0, disc, q)
        return WittClass.reduce(0, disc, q)
    if d1 == 0 and d2 == 0:
        return v1 * v2
    w1 = v1.to_witt() if isinstance(v1, GWClass) else v1
    w2 = v2.to_witt() if isinstance(v2, GWClass) else v2
    return w1 * w2
