"""Symbolic Milnor-Witt K-theory of the base field.

An element is an integer combination of monomials ``eta^m [a_1]...[a_k]``
(degree ``k - m``).  Symbols are atoms: ``[ab]`` is never split on its own.
``mw_normalize`` rewrites with the defining relations to a fixpoint; over a
prime field the result is additionally reduced through the exact model in
:mod:`quadratic`, which makes zero-testing decisive there.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from typing import Iterable, Mapping

from sympy import nextprime

from .quadratic import GradedValue, GWClass, WittClass, legendre
from .rational import vanishes_over_q
from .scalar import Field, Scalar, square_class, square_class_rep

__all__ = [
    "MWElement",
    "Monomial",
    "ZeroTest",
    "symbol",
    "eta",
    "epsilon",
    "bracket_form",
    "mw_normalize",
    "eval_finite_field",
    "is_zero",
    "reduce_mod",
]

Monomial = tuple[int, tuple[Scalar, ...]]

_MAX_REWRITES = 20000


class ZeroTest(enum.Enum):
    ZERO = "Zero"
    NONZERO = "NonZero"
    UNKNOWN = "Unknown"


class MWElement:
    """Immutable element of K^MW_*(K); construct through the helpers below."""

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, field: Field, terms: Mapping[Monomial, int] | None = None, *, _raw: bool = False):
        object.__setattr__(self, "field", field)
        clean = {mono: c for mono, c in (terms or {}).items() if c}
        if not _raw:
            clean = _normalize_terms(field, clean)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MWElement is immutable")

    @classmethod
    def raw(cls, field: Field, terms: Mapping[Monomial, int]) -> "MWElement":
        """Build without normalizing (used to exercise the rewriter)."""
        return cls(field, terms, _raw=True)

    @classmethod
    def integer(cls, field: Field, n: int) -> "MWElement":
        return cls(field, {(0, ()): n})

    @classmethod
    def zero(cls, field: Field) -> "MWElement":
        return cls(field, {}, _raw=True)

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other: "MWElement") -> "MWElement":
        if isinstance(other, int):
            return MWElement.integer(self.field, other)
        if not isinstance(other, MWElement):
            return NotImplemented
        if other.field != self.field:
            raise ValueError(f"mixed base fields {self.field} and {other.field}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        terms = defaultdict(int, self.terms)
        for mono, c in other.terms.items():
            terms[mono] += c
        return MWElement(self.field, terms)

    __radd__ = __add__

    def __neg__(self):
        return MWElement(self.field, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return MWElement(self.field, {m: c * other for m, c in self.terms.items()})
        other = self._check(other)
        if other is NotImplemented:
            return other
        terms: dict = defaultdict(int)
        for (m1, s1), c1 in self.terms.items():
            for (m2, s2), c2 in other.terms.items():
                terms[(m1 + m2, s1 + s2)] += c1 * c2
        return MWElement(self.field, terms)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        out = MWElement.integer(self.field, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = MWElement.integer(self.field, other)
        if not isinstance(other, MWElement):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.field, frozenset(self.terms.items()))))
        return self._hash

    def degrees(self) -> set[int]:
        return {len(s) - m for (m, s) in self.terms}

    def homogeneous_parts(self) -> dict[int, "MWElement"]:
        parts: dict[int, dict] = defaultdict(dict)
        for (m, s), c in self.terms.items():
            parts[len(s) - m][(m, s)] = c
        return {d: MWElement(self.field, t, _raw=True) for d, t in parts.items()}

    def odd_part(self) -> "MWElement":
        return MWElement(self.field, {k: c for k, c in self.terms.items() if (len(k[1]) - k[0]) % 2}, _raw=True)

    def even_part(self) -> "MWElement":
        return MWElement(self.field, {k: c for k, c in self.terms.items() if not (len(k[1]) - k[0]) % 2}, _raw=True)

    def scalars(self) -> set[Scalar]:
        return {a for (_, s) in self.terms for a in s}

    def is_integer(self) -> bool:
        return all(mono == (0, ()) for mono in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for mono in sorted(self.terms, key=_mono_sort_key):
            c = self.terms[mono]
            body = _format_monomial(mono)
            if body:
                text = body if abs(c) == 1 else f"{abs(c)}*{body}"
            else:
                text = str(abs(c))
            pieces.append(("-" if c < 0 else "+", text))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, text in pieces[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self):
        return f"MWElement({self})"


def _mono_sort_key(mono: Monomial):
    m, syms = mono
    return (len(syms) - m, m, len(syms), tuple(_sym_key(a) for a in syms))


def _format_monomial(mono: Monomial) -> str:
    m, syms = mono
    parts = []
    if m == 1:
        parts.append("eta")
    elif m > 1:
        parts.append(f"eta^{m}")
    parts.extend(f"[{a}]" for a in syms)
    return "*".join(parts)


def _sym_key(a: Scalar):
    # [-1] sorts first
    return (0, 0) if a == -1 else (1, a.sort_key())


# -- constructors -----------------------------------------------------------


def symbol(a: Scalar) -> MWElement:
    if not isinstance(a, Scalar):
        raise TypeError(f"symbol needs a Scalar, got {a!r}")
    if not a:
        raise ValueError("[0] is undefined")
    return MWElement(a.field, {(0, (a,)): 1})


def eta(field: Field) -> MWElement:
    return MWElement(field, {(1, ()): 1})


def bracket_form(a: Scalar) -> MWElement:
    """<a> = 1 + eta[a]."""
    return MWElement.integer(a.field, 1) + eta(a.field) * symbol(a)


def epsilon(field: Field) -> MWElement:
    """eps = -<-1> = -1 - eta[-1]."""
    return MWElement(field, {(0, ()): -1, (1, (field(-1),)): -1})


# -- rewriting ----------------------------------------------------------------


def _rewrite(field: Field, mono: Monomial) -> list[tuple[Monomial, int]] | None:
    """One rewrite step on a monomial; ``None`` when it is already normal."""
    m, syms = mono
    one = field.one()
    minus_one = -one
    if any(a == one for a in syms):
        return []
    k = len(syms)
    if m >= 1:
        if k >= 2:
            # eta [a][b] = [ab] - [a] - [b]; symbols commute once eta is present
            a, b, rest = syms[0], syms[1], syms[2:]
            return [
                ((m - 1, (a * b,) + rest), 1),
                ((m - 1, (a,) + rest), -1),
                ((m - 1, (b,) + rest), -1),
            ]
        if k == 1:
            a = syms[0]
            rep = square_class_rep(a)
            if rep == one:
                return []
            if m >= 2 and square_class(a) == square_class(minus_one):
                return [((m - 1, ()), -2)]
            if rep != a:
                return [((m, (rep,)), 1)]
        return None
    for i in range(k - 1):
        a, b = syms[i], syms[i + 1]
        if b == one - a or b == -a:
            return []
        if a == b and a != minus_one:
            return [((0, syms[:i] + (minus_one, a) + syms[i + 2 :]), 1)]
    for i in range(k - 1):
        a, b = syms[i], syms[i + 1]
        if _sym_key(a) > _sym_key(b):
            swapped = syms[:i] + (b, a) + syms[i + 2 :]
            # [a][b] = eps [b][a] = -[b][a] - eta [-1][b][a]
            return [((0, swapped), -1), ((1, (minus_one,) + swapped), -1)]
    return None


def _eta_torsion(field: Field, terms: Mapping[Monomial, int]) -> dict[Monomial, int]:
    """When -1 is a square, eta[-1] = 0 turns eta(2 + eta[-1]) = 0 into 2 eta = 0."""
    minus_one_square = field.is_finite and square_class_rep(-field.one()) == field.one()
    out = {}
    for (m, syms), c in terms.items():
        if m >= 1 and minus_one_square:
            c %= 2
        if c:
            out[(m, syms)] = c
    return out


def _normalize_terms(field: Field, terms: dict[Monomial, int]) -> dict[Monomial, int]:
    pending = dict(terms)
    done: dict[Monomial, int] = defaultdict(int)
    steps = 0
    while pending:
        mono, c = pending.popitem()
        if not c:
            continue
        out = _rewrite(field, mono)
        if out is None:
            done[mono] += c
            continue
        steps += 1
        if steps > _MAX_REWRITES:
            raise RuntimeError("Milnor-Witt rewriting did not reach a fixpoint")
        for new, k in out:
            pending[new] = pending.get(new, 0) + c * k
    result = _eta_torsion(field, done)
    if field.is_finite:
        result = _canonical_from_value(field, _eval_terms(field, result)).terms
    return result


def mw_normalize(x: MWElement) -> MWElement:
    """Rewrite ``x`` to its canonical form (elements are kept canonical on
    construction, so this re-runs the rewriter on the raw terms)."""
    return MWElement(x.field, x.terms)


def mw_normalize_symbolic(x: MWElement) -> MWElement:
    """Apply only the symbolic rewrite rules, never the finite-field model."""
    pending = dict(x.terms)
    done: dict[Monomial, int] = defaultdict(int)
    while pending:
        mono, c = pending.popitem()
        out = _rewrite(x.field, mono) if c else []
        if out is None:
            done[mono] += c
            continue
        for new, k in out:
            pending[new] = pending.get(new, 0) + c * k
    return MWElement.raw(x.field, _eta_torsion(x.field, done))


# -- finite field model -----------------------------------------------------


def _eval_monomial(field: Field, mono: Monomial) -> GradedValue:
    m, syms = mono
    q = field.p
    k = len(syms)
    if k >= 2:
        return GradedValue(field)
    if k == 1:
        a = syms[0]
        if m == 0:
            return GradedValue(field, {1: a})
        if m == 1:
            return GradedValue(field, {0: GWClass(0, legendre(a), q)})
        return GradedValue(field, {1 - m: WittClass.reduce(0, legendre(a), q)})
    if m == 0:
        return GradedValue(field, {0: GWClass.one(q)})
    return GradedValue(field, {-m: WittClass.reduce(1, 1, q)})


def _eval_terms(field: Field, terms: Mapping[Monomial, int]) -> GradedValue:
    total = GradedValue(field)
    for mono, c in terms.items():
        total = total + _eval_monomial(field, mono).scale(c)
    return total


def _canonical_from_value(field: Field, value: GradedValue) -> MWElement:
    terms: dict[Monomial, int] = {}
    g = field.nonsquare()
    for deg, v in value.parts.items():
        if deg == 1:
            terms[(0, (v,))] = 1
        elif deg == 0:
            terms[(0, ())] = v.rank
            if v.disc == -1:
                terms[(1, (g,))] = 1
        else:
            n = -deg
            terms[(n, ())] = v.rank
            if v.disc == -1:
                terms[(n + 1, (g,))] = 1
    return MWElement.raw(field, terms)


def eval_finite_field(x: MWElement, q: int | None = None) -> GradedValue:
    """Evaluate in the (rank, discriminant) model of K^MW_*(GF(q))."""
    field = x.field
    if q is not None and field.p != q:
        if field.p is not None:
            raise ValueError(f"element lives over {field}, not GF({q})")
        return eval_finite_field(reduce_mod(x, q))
    if field.p is None:
        raise ValueError("evaluation needs a finite base field")
    return _eval_terms(field, x.terms)


def reduce_mod(x: MWElement, p: int) -> MWElement:
    """Image of a Q-element under reduction modulo a good prime ``p``."""
    target = Field(p)
    terms: dict = defaultdict(int)
    for (m, syms), c in x.terms.items():
        terms[(m, tuple(target(a.value) for a in syms))] += c
    return MWElement(target, terms)


def _good_primes(x: MWElement, count: int) -> list[int]:
    bad = 1
    for a in x.scalars():
        bad *= a.value.numerator * a.value.denominator
    primes, p = [], 2
    while len(primes) < count:
        p = nextprime(p)
        if bad % p:
            primes.append(p)
    return primes


def is_zero(x: MWElement, primes: int = 3, exact: bool = True) -> ZeroTest:
    """Zero / NonZero / Unknown.

    Over a prime field the canonical form decides.  Over Q, reductions at a
    few good primes can only certify NonZero; with ``exact`` the local
    invariants of :mod:`rational` settle the remaining cases.
    """
    if not mw_normalize(x):
        return ZeroTest.ZERO
    if x.field.is_finite:
        # the finite-field model is exact, so normalize already decided
        return ZeroTest.NONZERO
    for p in _good_primes(x, primes):
        if not eval_finite_field(reduce_mod(x, p)).is_zero():
            return ZeroTest.NONZERO
    if exact:
        return ZeroTest.ZERO if vanishes_over_q(x.terms) else ZeroTest.NONZERO
    return ZeroTest.UNKNOWN
