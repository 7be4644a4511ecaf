"""The unit presentation of Milnor-Witt motivic cohomology of an arrangement
complement: words in unit generators with Milnor-Witt coefficients, modulo
the relation ideal, reduced to coordinates over the nbc basis.

Coefficients always sit on the left of words.  Moving a homogeneous
coefficient of degree ``n`` left past a word of length ``k`` costs
``eps**(n*k)``.
"""

from __future__ import annotations

import enum
import itertools
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .arrangement import Arrangement, ArrangementError, Circuit, Unit, units_sum_to_zero
from .ktheory import MWElement, ZeroTest, bracket_form, epsilon, eta, is_zero, symbol
from .scalar import Field, Scalar

__all__ = [
    "PresElement",
    "NormalForm",
    "Family",
    "RelationInstance",
    "Engine",
    "engine",
    "r_polynomial",
    "r_minus_one_identity",
    "r_minus_one_expansion",
    "circuit_units",
    "circuit_steinberg_units",
    "j_generators",
    "j_prime_generators",
    "normal_form",
    "multiply",
    "basis",
    "rank",
    "restriction_boundary",
    "const_ident",
    "logarithm",
    "steinberg",
    "square",
    "anticomm",
    "rpoly",
]

Word = tuple[Unit, ...]
IndexWord = tuple[int, ...]
SForm = dict  # IndexWord -> MWElement over strictly increasing index words


def _one(field: Field) -> MWElement:
    return MWElement.integer(field, 1)


def move_left(c: MWElement, length: int) -> MWElement:
    """``w * c == move_left(c, len(w)) * w``."""
    if length % 2 == 0:
        return c
    odd = c.odd_part()
    if not odd:
        return c
    return c.even_part() + epsilon(c.field) * odd


class PresElement:
    """MW-coefficient combination of words of unit generators."""

    def __init__(self, arr: Arrangement, terms: Mapping[Word, MWElement] | None = None):
        self.arr = arr
        clean: dict[Word, MWElement] = {}
        for w, c in (terms or {}).items():
            if c:
                clean[tuple(w)] = c
        self.terms = clean

    @classmethod
    def zero(cls, arr: Arrangement) -> "PresElement":
        return cls(arr)

    @classmethod
    def scalar(cls, arr: Arrangement, c: MWElement | int) -> "PresElement":
        if isinstance(c, int):
            c = MWElement.integer(arr.field, c)
        return cls(arr, {(): c})

    @classmethod
    def word(cls, arr: Arrangement, units: Sequence[Unit], coeff: MWElement | int = 1) -> "PresElement":
        if isinstance(coeff, int):
            coeff = MWElement.integer(arr.field, coeff)
        for u in units:
            if len(u.exponents) != len(arr):
                raise ArrangementError(f"unit {u} is not a unit of this arrangement")
        return cls(arr, {tuple(units): coeff})

    @classmethod
    def gen(cls, arr: Arrangement, unit: Unit) -> "PresElement":
        return cls.word(arr, [unit])

    def _same(self, other: "PresElement") -> None:
        if self.arr != other.arr:
            raise ArrangementError("elements belong to different arrangements")

    def __add__(self, other: "PresElement") -> "PresElement":
        self._same(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms[w] + c if w in terms else c
        return PresElement(self.arr, terms)

    def __neg__(self) -> "PresElement":
        return PresElement(self.arr, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "PresElement") -> "PresElement":
        return self + (-other)

    def lmul(self, c: MWElement | int) -> "PresElement":
        if isinstance(c, int):
            c = MWElement.integer(self.arr.field, c)
        return PresElement(self.arr, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, MWElement)):
            return self * PresElement.scalar(self.arr, other)
        self._same(other)
        terms: dict[Word, MWElement] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                c = c1 * move_left(c2, len(w1))
                w = w1 + w2
                terms[w] = terms[w] + c if w in terms else c
        return PresElement(self.arr, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, MWElement)):
            return self.lmul(other)
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), [(u.exponents, u.scalar.sort_key()) for u in w])):
            c = self.terms[w]
            parts.append(_format_term(c, "*".join(_format_unit(u, self.arr) for u in w), "*"))
        return " + ".join(parts)

    def __repr__(self):
        return f"PresElement({self.format()})"


def _format_unit(u: Unit, arr: Arrangement) -> str:
    atom = u.atom_index()
    if atom is not None and u.scalar == 1:
        return f"({arr.hyperplanes[atom]})"
    if u.is_constant:
        return f"({u.scalar})"
    return u.format(arr)


def _format_term(c: MWElement, word: str, dot: str) -> str:
    if not word:
        return f"({c})" if len(c.terms) > 1 else str(c)
    if c == 1:
        return word
    if len(c.terms) > 1:
        return f"({c}){dot}{word}"
    return f"{c}{dot}{word}"


@dataclass
class NormalForm:
    """Coordinates over the nbc basis monomials ``(phi_i1)...(phi_ik)``."""

    arr: Arrangement
    coords: dict[IndexWord, MWElement]

    def __post_init__(self):
        self.coords = {w: c for w, c in self.coords.items() if c}

    def is_zero(self) -> ZeroTest:
        verdicts = {is_zero(c) for c in self.coords.values()}
        if not verdicts or verdicts == {ZeroTest.ZERO}:
            return ZeroTest.ZERO
        if ZeroTest.NONZERO in verdicts:
            return ZeroTest.NONZERO
        return ZeroTest.UNKNOWN

    def __sub__(self, other: "NormalForm") -> "NormalForm":
        coords = dict(self.coords)
        for w, c in other.coords.items():
            coords[w] = coords[w] - c if w in coords else -c
        return NormalForm(self.arr, coords)

    def equals(self, other: "NormalForm") -> ZeroTest:
        return (self - other).is_zero()

    def __eq__(self, other):
        return isinstance(other, NormalForm) and self.arr == other.arr and self.coords == other.coords

    def support(self) -> set[IndexWord]:
        return set(self.coords)

    def to_pres(self) -> PresElement:
        arr = self.arr
        return PresElement(
            arr, {tuple(arr.hyperplane_unit(i) for i in w): c for w, c in self.coords.items()}
        )

    def format(self) -> str:
        if not self.coords:
            return "0"
        parts = []
        for w in sorted(self.coords, key=lambda w: (len(w), w)):
            word = "".join(f"({self.arr.hyperplanes[i]})" for i in w)
            parts.append(_format_term(self.coords[w], word, "·"))
        return " + ".join(parts)

    def __str__(self):
        return self.format()


# -- relation instances -------------------------------------------------------


class Family(enum.Enum):
    CONST_IDENT = "ConstIdent(1)"
    LOGARITHM = "Logarithm(2)"
    STEINBERG = "Steinberg(3)"
    SQUARE = "Square(4)"
    ANTICOMM = "AntiComm(3')"
    RPOLY = "RPoly(4')"


@dataclass
class RelationInstance:
    family: Family
    units: tuple[Unit, ...]
    element: PresElement


def const_ident(arr: Arrangement, lam: Scalar | int) -> RelationInstance:
    u = arr.constant_unit(lam)
    el = PresElement.gen(arr, u) - PresElement.scalar(arr, symbol(u.scalar))
    return RelationInstance(Family.CONST_IDENT, (u,), el)


def logarithm(arr: Arrangement, f: Unit, g: Unit) -> RelationInstance:
    F, G = PresElement.gen(arr, f), PresElement.gen(arr, g)
    el = PresElement.gen(arr, f * g) - F - G - (F * G).lmul(eta(arr.field))
    return RelationInstance(Family.LOGARITHM, (f, g), el)


def steinberg(arr: Arrangement, units: Sequence[Unit]) -> RelationInstance:
    if not units_sum_to_zero(list(units) + [arr.constant_unit(-1)], arr):
        raise ArrangementError("Steinberg relation needs units summing to 1")
    return RelationInstance(Family.STEINBERG, tuple(units), PresElement.word(arr, units))


def square(arr: Arrangement, f: Unit) -> RelationInstance:
    F = PresElement.gen(arr, f)
    el = F * F - F.lmul(symbol(arr.field(-1)))
    return RelationInstance(Family.SQUARE, (f,), el)


def anticomm(arr: Arrangement, f: Unit, g: Unit) -> RelationInstance:
    F, G = PresElement.gen(arr, f), PresElement.gen(arr, g)
    el = F * G - (G * F).lmul(epsilon(arr.field))
    return RelationInstance(Family.ANTICOMM, (f, g), el)


def _r_terms(arr: Arrangement, units: Sequence[Unit]) -> PresElement:
    field = arr.field
    t = len(units) - 1
    eps = epsilon(field)
    out = PresElement.zero(arr)
    for i in range(t + 1):
        w = units[:i] + units[i + 1 :]
        out = out + PresElement.word(arr, w, eps ** ((t + i) % 2))
    minus_one = symbol(field(-1))
    for size in range(2, t + 2):
        k = size - 1
        coeff = minus_one**k * (-1) ** k
        for omit in itertools.combinations(range(t + 1), size):
            w = tuple(u for j, u in enumerate(units) if j not in omit)
            out = out + PresElement.word(arr, w, coeff)
    return out


def r_polynomial(arr: Arrangement, units: Sequence[Unit]) -> PresElement:
    """R(f_0, ..., f_t) for units summing to zero."""
    units = tuple(units)
    if not units_sum_to_zero(units, arr):
        raise ArrangementError("R(f_0..f_t) needs units summing to zero")
    return _r_terms(arr, units)


def rpoly(arr: Arrangement, units: Sequence[Unit]) -> RelationInstance:
    return RelationInstance(Family.RPOLY, tuple(units), r_polynomial(arr, units))


def circuit_units(arr: Arrangement, c: Circuit, scale: Scalar | int = 1) -> tuple[Unit, ...]:
    """Units ``lambda_0, lambda_j phi_j`` of a circuit's dependency, constant
    first when the circuit is affine."""
    units = [arr.hyperplane_unit(j, lam * scale) for j, lam in zip(c.members, c.coeffs)]
    if not c.is_central:
        units.insert(0, arr.constant_unit(c.const * scale))
    return tuple(units)


def circuit_steinberg_units(arr: Arrangement, c: Circuit, scale: Scalar | int = 1) -> tuple[Unit, ...]:
    """Units summing to 1 derived from a circuit.

    Affine: ``-lambda_j phi_j / lambda_0``.  Central: ratios against the least
    member, ``-lambda_j phi_j / (lambda_0 phi_0)``.
    """
    if not c.is_central:
        return tuple(arr.hyperplane_unit(j, -lam / c.const) for j, lam in zip(c.members, c.coeffs))
    j0, lam0 = c.members[0], c.coeffs[0] * scale
    base = arr.hyperplane_unit(j0, lam0)
    return tuple(
        arr.hyperplane_unit(j, -lam * scale) / base for j, lam in zip(c.members[1:], c.coeffs[1:])
    )


def r_minus_one_identity(arr: Arrangement, units: Sequence[Unit]) -> bool:
    """Whether ``R(f_1..f_t, -1) - eps (f_1)...(f_t)`` normalizes to zero.

    The expansion is formal (no sum condition on the units).
    """
    units = tuple(units)
    r = _r_terms(arr, units + (arr.constant_unit(-1),))
    diff = r - PresElement.word(arr, units, epsilon(arr.field))
    return normal_form(diff).is_zero() is ZeroTest.ZERO


def r_minus_one_expansion(arr: Arrangement, units: Sequence[Unit]) -> bool:
    """Whether ``R(f_1..f_t, -1) - (f_1)...(f_t)`` normalizes to zero."""
    units = tuple(units)
    r = _r_terms(arr, units + (arr.constant_unit(-1),))
    return normal_form(r - PresElement.word(arr, units)).is_zero() is ZeroTest.ZERO


def _sample_constants(field: Field) -> list[Scalar]:
    if field.is_finite:
        return [a for a in field.units() if a != 1]
    return [field(v) for v in (-1, 2, -2, 3, "1/2")]


def _atoms(arr: Arrangement) -> list[Unit]:
    return [arr.hyperplane_unit(i) for i in range(len(arr))]


def j_generators(arr: Arrangement) -> list[RelationInstance]:
    """Finite generator list for families (1)-(4): sampled constants, atom
    pairs for (2), one Steinberg word per circuit, squares of atoms."""
    gens = [const_ident(arr, lam) for lam in _sample_constants(arr.field)]
    atoms = _atoms(arr)
    minus = arr.constant_unit(-1)
    for f, g in itertools.product(atoms + [minus], repeat=2):
        gens.append(logarithm(arr, f, g))
    for c in arr.circuits:
        gens.append(steinberg(arr, circuit_steinberg_units(arr, c)))
    gens.extend(square(arr, f) for f in atoms)
    return gens


def j_prime_generators(arr: Arrangement) -> list[RelationInstance]:
    """Families (1), (2), (3') and (4'): one R-polynomial per circuit."""
    gens = [const_ident(arr, lam) for lam in _sample_constants(arr.field)]
    atoms = _atoms(arr)
    minus = arr.constant_unit(-1)
    for f, g in itertools.product(atoms + [minus], repeat=2):
        gens.append(logarithm(arr, f, g))
    for f, g in itertools.combinations(atoms, 2):
        gens.append(anticomm(arr, f, g))
    for c in arr.circuits:
        gens.append(rpoly(arr, circuit_units(arr, c)))
    return gens


# -- the rewriting engine -----------------------------------------------------


def _sform_add(target: SForm, word: IndexWord, c: MWElement) -> None:
    if word in target:
        s = target[word] + c
        if s:
            target[word] = s
        else:
            del target[word]
    elif c:
        target[word] = c


@dataclass(frozen=True)
class Rule:
    """``target`` word is congruent to ``replacement`` (all words smaller)."""

    circuit: Circuit
    target: IndexWord
    replacement: tuple[tuple[IndexWord, MWElement], ...]


class Engine:
    """Normal-form computation for one arrangement.

    ``rules="prime"`` reduces circuits with R-polynomials, ``rules="classic"``
    with Steinberg words; both share generator splitting and eps-sorting.
    """

    def __init__(self, arr: Arrangement, rules: str = "prime"):
        if rules not in ("prime", "classic"):
            raise ValueError(f"unknown rule set {rules!r}")
        self.arr = arr
        self.field = arr.field
        self.rules_kind = rules
        self._eps = epsilon(self.field)
        self._minus_one = symbol(self.field(-1))
        self._transform_cache: dict[IndexWord, SForm] = {}
        self._unit_cache: dict[Unit, SForm] = {}
        self._rules: list[Rule] | None = None

    # phase (ii): eps-sorting and squares
    def transform(self, word: IndexWord) -> SForm:
        if word in self._transform_cache:
            return self._transform_cache[word]
        out: SForm
        for j in range(len(word) - 1):
            if word[j] >= word[j + 1]:
                if word[j] == word[j + 1]:
                    coeff = self._minus_one if j % 2 == 0 else self._eps * self._minus_one
                    rest = word[: j + 1] + word[j + 2 :]
                else:
                    coeff = self._eps
                    rest = word[:j] + (word[j + 1], word[j]) + word[j + 2 :]
                out = {}
                for w, c in self.transform(rest).items():
                    _sform_add(out, w, coeff * c)
                break
        else:
            out = {word: _one(self.field)}
        self._transform_cache[word] = out
        return out

    def mul(self, a: SForm, b: SForm) -> SForm:
        out: SForm = {}
        for w1, c1 in a.items():
            for w2, c2 in b.items():
                c = c1 * move_left(c2, len(w1))
                if not c:
                    continue
                for w, t in self.transform(w1 + w2).items():
                    _sform_add(out, w, c * t)
        return out

    def _oplus(self, a: SForm, b: SForm) -> SForm:
        """Expansion of (fg) from those of (f) and (g): a + b + eta a b."""
        out = dict(a)
        for w, c in b.items():
            _sform_add(out, w, c)
        n = eta(self.field)
        for w, c in self.mul(a, b).items():
            _sform_add(out, w, n * c)
        return out

    # phase (i): split unit generators into atoms
    def expand_unit(self, u: Unit) -> SForm:
        if u in self._unit_cache:
            return self._unit_cache[u]
        if len(u.exponents) != len(self.arr):
            raise ArrangementError(f"{u} is not a unit of {self.arr}")
        acc: SForm = {}
        if u.scalar != 1:
            acc = {(): symbol(u.scalar)}
        for i, e in enumerate(u.exponents):
            atom = {(i,): _one(self.field) if e > 0 else self._eps}
            for _ in range(abs(e)):
                acc = self._oplus(acc, atom)
        self._unit_cache[u] = acc
        return acc

    def expand(self, x: PresElement) -> SForm:
        """Phases (i) and (ii): sorted square-free words, no circuit reduction."""
        out: SForm = {}
        for word, c in x.terms.items():
            acc: SForm = {(): c}
            for u in word:
                acc = self.mul(acc, self.expand_unit(u))
            for w, v in acc.items():
                _sform_add(out, w, v)
        return out

    # phase (iii): circuits
    @property
    def rules(self) -> list[Rule]:
        if self._rules is None:
            self._rules = [self._make_rule(c) for c in self.arr.circuits]
        return self._rules

    def _relation(self, c: Circuit) -> PresElement:
        arr = self.arr
        if self.rules_kind == "prime":
            return r_polynomial(arr, circuit_units(arr, c))
        word = PresElement.word(arr, circuit_steinberg_units(arr, c))
        if not c.is_central:
            return word
        f0 = arr.hyperplane_unit(c.members[0], c.coeffs[0])
        twist = PresElement.scalar(arr, 1) + PresElement.gen(arr, f0.scaled(-1)).lmul(eta(self.field))
        out = word
        for _ in range(len(c.members) - 1):
            out = twist * out
        return out

    def _make_rule(self, c: Circuit) -> Rule:
        rel = self.expand(self._relation(c))
        target = c.broken if c.is_central else c.members
        lead = rel.get(target)
        if lead is None or lead * lead != 1:
            raise ArrangementError(f"circuit {c.members}: leading coefficient {lead} is not a unit")
        key = (len(target), target)
        repl = []
        for w, v in rel.items():
            if w == target:
                continue
            if (len(w), w) >= key:
                raise ArrangementError(f"circuit {c.members}: relation term {w} is not below {target}")
            repl.append((w, -(lead * v)))
        return Rule(c, target, tuple(repl))

    def reduce(self, form: SForm) -> SForm:
        work = dict(form)
        rules = self.rules
        while True:
            best = None
            for w in work:
                if best is not None and (len(w), w) <= (len(best[0]), best[0]):
                    continue
                s = set(w)
                rule = next((r for r in rules if s.issuperset(r.target)), None)
                if rule is not None:
                    best = (w, rule)
            if best is None:
                return work
            w, rule = best
            coeff = work.pop(w)
            tset = set(rule.target)
            rest = tuple(i for i in w if i not in tset)
            inversions = sum(1 for b in rule.target for r in rest if r < b)
            if inversions % 2:
                coeff = coeff * self._eps
            repl = dict(rule.replacement)
            for v, t in self.mul(repl, {rest: _one(self.field)}).items():
                _sform_add(work, v, coeff * t)

    def normal_form(self, x: PresElement) -> NormalForm:
        if x.arr != self.arr:
            raise ArrangementError("element belongs to a different arrangement")
        return NormalForm(self.arr, self.reduce(self.expand(x)))

    def multiply(self, x: PresElement, y: PresElement) -> NormalForm:
        if x.arr != self.arr or y.arr != self.arr:
            raise ArrangementError("arrangement mismatch")
        return self.normal_form(x * y)


@lru_cache(maxsize=256)
def engine(arr: Arrangement, rules: str = "prime") -> Engine:
    return Engine(arr, rules)


def normal_form(x: PresElement, rules: str = "prime") -> NormalForm:
    return engine(x.arr, rules).normal_form(x)


def multiply(x: PresElement, y: PresElement) -> NormalForm:
    if x.arr != y.arr:
        raise ArrangementError("arrangement mismatch")
    return engine(x.arr).multiply(x, y)


# -- basis via deletion-restriction -------------------------------------------


def basis(arr: Arrangement) -> list[IndexWord]:
    """Basis index sets from the split Gysin recursion on the last hyperplane."""
    out = _basis(arr)
    if sorted(out, key=lambda w: (len(w), w)) != list(arr.nbc_sets):
        raise AssertionError(f"recursive basis {out} disagrees with nbc sets {arr.nbc_sets}")
    return sorted(out, key=lambda w: (len(w), w))


def _basis(arr: Arrangement) -> list[IndexWord]:
    n = len(arr)
    if n == 0:
        return [()]
    y = n - 1
    deleted = _basis(arr.deletion(y))
    restricted, rmap = arr.restriction(y)
    lifted = []
    for mono in _basis(restricted):
        lift = tuple(sorted(min(rmap.preimages(k)) for k in mono))
        lifted.append(lift + (y,))
    return deleted + lifted


def rank(arr: Arrangement) -> list[int]:
    counts: dict[int, int] = defaultdict(int)
    for w in basis(arr):
        counts[len(w)] += 1
    top = max(counts)
    return [counts[d] for d in range(top + 1)]


def restriction_boundary(x: PresElement, y: int | None = None) -> tuple[PresElement, Arrangement]:
    """Image of ``x`` on the restriction to hyperplane ``y`` (default: last).

    With ``Y`` ordered last, the normal form splits as ``alpha(x0) +
    alpha(x1) (phi_Y)``; the result is ``x1`` with its units restricted.
    For another ``y`` the computation runs on a copy with ``Y`` moved last;
    the restricted arrangement is the same either way.
    """
    arr = x.arr
    n = len(arr)
    if y is None:
        y = n - 1
    if not 0 <= y < n:
        raise ArrangementError(f"hyperplane index {y} out of range")
    if y != n - 1:
        order = [i for i in range(n) if i != y] + [y]
        moved = Arrangement(arr.field, arr.dim, [arr.hyperplanes[i] for i in order])
        perm = lambda u: Unit(u.scalar, tuple(u.exponents[i] for i in order))
        x = PresElement(moved, {tuple(perm(u) for u in w): c for w, c in x.terms.items()})
        return restriction_boundary(x)
    restricted, rmap = arr.restriction(y)
    nf = normal_form(x)
    terms: dict[Word, MWElement] = {}
    for w, c in nf.coords.items():
        if not w or w[-1] != y:
            continue
        units = tuple(arr.hyperplane_unit(i).restrict(rmap, restricted) for i in w[:-1])
        terms[units] = terms[units] + c if units in terms else c
    return PresElement(restricted, terms), restricted
