"""Affine hyperplane arrangements, their combinatorics, and the unit group of
the complement.

Hyperplane order is the input order; it drives every basis choice downstream.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, Sequence

from .linalg import kernel, rank, rref
from .scalar import Field, Scalar

__all__ = [
    "ArrangementError",
    "Hyperplane",
    "normalize",
    "Arrangement",
    "Flat",
    "Circuit",
    "RestrictionMap",
    "Unit",
    "units_sum_to_zero",
]


class ArrangementError(ValueError):
    pass


@dataclass(frozen=True)
class Hyperplane:
    """Affine form ``c0 + c1*x1 + ... + cN*xN`` scaled so its first nonzero
    linear coefficient is 1."""

    coeffs: tuple[Scalar, ...]

    @property
    def field(self) -> Field:
        return self.coeffs[0].field

    @property
    def dim(self) -> int:
        return len(self.coeffs) - 1

    @property
    def constant(self) -> Scalar:
        return self.coeffs[0]

    @property
    def linear(self) -> tuple[Scalar, ...]:
        return self.coeffs[1:]

    @property
    def pivot(self) -> int:
        """1-based coordinate of the leading (unit) coefficient."""
        return next(i for i, c in enumerate(self.coeffs) if i > 0 and c)

    def __str__(self) -> str:
        return format_affine(self.coeffs)


def format_affine(coeffs: Sequence[Scalar]) -> str:
    parts: list[str] = []
    for i, c in enumerate(coeffs[1:], start=1):
        if not c:
            continue
        if c == 1:
            term, neg = f"x{i}", False
        elif c == -1:
            term, neg = f"x{i}", True
        else:
            v = c.value
            if coeffs[0].field.p is None and v < 0:
                term, neg = f"{-v}*x{i}", True
            else:
                term, neg = f"{v}*x{i}", False
        parts.append(("- " if neg else "+ ") + term)
    c0 = coeffs[0]
    if c0 or not parts:
        v = c0.value
        if c0.field.p is None and v < 0:
            parts.append(f"- {-v}")
        else:
            parts.append(f"+ {v}")
    text = " ".join(parts)
    if text.startswith("+ "):
        return text[2:]
    return "-" + text[2:]


def normalize(raw: Sequence[Scalar]) -> tuple[Hyperplane, Scalar]:
    """Return ``(H, factor)`` with ``raw = factor * H``."""
    raw = tuple(raw)
    lead = next((c for c in raw[1:] if c), None)
    if lead is None:
        raise ArrangementError(f"affine form {format_affine(raw)} has zero linear part")
    inv = lead.inv()
    return Hyperplane(tuple(c * inv for c in raw)), lead


@dataclass(frozen=True)
class Flat:
    """Nonempty intersection of a subfamily, with its Möbius value."""

    members: frozenset[int]
    codim: int
    equations: tuple[tuple[Scalar, ...], ...]
    moebius: int = 0


@dataclass(frozen=True)
class Circuit:
    """Minimal family with ``sum(coeffs[j] * phi[members[j]]) + const == 0``.

    ``const == 0`` is a central circuit (nonempty intersection); otherwise the
    members have empty common intersection.
    """

    members: tuple[int, ...]
    coeffs: tuple[Scalar, ...]
    const: Scalar

    @property
    def is_central(self) -> bool:
        return not self.const

    @property
    def broken(self) -> tuple[int, ...]:
        return self.members[1:]


@dataclass(frozen=True)
class RestrictionMap:
    """How each form restricts to ``Y``.

    ``entries[j]`` is ``None`` for ``Y`` itself, ``("const", c)`` when
    ``phi_j|_Y = c``, and ``("hyp", k, mu)`` when ``phi_j|_Y = mu * phi'_k``.
    """

    index: int
    entries: tuple[tuple | None, ...]

    def preimages(self, k: int) -> list[int]:
        return [j for j, e in enumerate(self.entries) if e and e[0] == "hyp" and e[1] == k]


class Arrangement:
    """Ordered family of distinct affine hyperplanes in ``A^dim``."""

    def __init__(self, field: Field, dim: int, hyperplanes: Iterable[Hyperplane]):
        self.field = field
        self.dim = dim
        self.hyperplanes: tuple[Hyperplane, ...] = tuple(hyperplanes)
        for h in self.hyperplanes:
            if h.dim != dim or h.field != field:
                raise ArrangementError(f"hyperplane {h} does not live in {field}^{dim}")
        if len(set(self.hyperplanes)) != len(self.hyperplanes):
            raise ArrangementError("hyperplanes must be pairwise distinct")

    @classmethod
    def from_forms(cls, field: Field, dim: int, forms: Iterable[Sequence]) -> "Arrangement":
        hs = []
        for raw in forms:
            raw = [c if isinstance(c, Scalar) else (field.parse_scalar(c) if isinstance(c, str) else field(c)) for c in raw]
            if len(raw) != dim + 1:
                raise ArrangementError(f"form {raw} needs {dim + 1} coefficients")
            hs.append(normalize(raw)[0])
        return cls(field, dim, hs)

    @classmethod
    def from_json(cls, data) -> "Arrangement":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            field = Field.parse(data["field"])
            dim = int(data["dim"])
            forms = data["hyperplanes"]
        except KeyError as exc:
            raise ArrangementError(f"arrangement JSON missing key {exc}") from exc
        return cls.from_forms(field, dim, [[str(c) for c in f] for f in forms])

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "field": str(self.field),
            "hyperplanes": [[str(c) for c in h.coeffs] for h in self.hyperplanes],
        }

    def __len__(self) -> int:
        return len(self.hyperplanes)

    def __eq__(self, other):
        return (
            isinstance(other, Arrangement)
            and self.field == other.field
            and self.dim == other.dim
            and self.hyperplanes == other.hyperplanes
        )

    def __hash__(self):
        return hash((self.field, self.dim, self.hyperplanes))

    def __repr__(self):
        forms = ", ".join(str(h) for h in self.hyperplanes)
        return f"Arrangement({self.field}, dim={self.dim}, [{forms}])"

    def index_of(self, h: Hyperplane) -> int | None:
        try:
            return self.hyperplanes.index(h)
        except ValueError:
            return None

    def _check_index(self, y: int) -> None:
        if not 0 <= y < len(self):
            raise ArrangementError(f"hyperplane index {y} not in arrangement of size {len(self)}")

    # -- deletion / restriction -------------------------------------------

    def deletion(self, y: int) -> "Arrangement":
        self._check_index(y)
        return Arrangement(self.field, self.dim, self.hyperplanes[:y] + self.hyperplanes[y + 1 :])

    def restriction(self, y: int) -> tuple["Arrangement", RestrictionMap]:
        """Restrict to ``Y = H_y``, identified with ``A^(dim-1)`` by eliminating
        the pivot coordinate of ``phi_y``."""
        self._check_index(y)
        hy = self.hyperplanes[y]
        p = hy.pivot
        restricted: list[Hyperplane] = []
        entries: list[tuple | None] = []
        for j, h in enumerate(self.hyperplanes):
            if j == y:
                entries.append(None)
                continue
            cp = h.coeffs[p]
            sub = [a - cp * b for a, b in zip(h.coeffs, hy.coeffs)]
            del sub[p]
            if not any(sub[1:]):
                entries.append(("const", sub[0]))
                continue
            g, mu = normalize(sub)
            if g in restricted:
                k = restricted.index(g)
            else:
                k = len(restricted)
                restricted.append(g)
            entries.append(("hyp", k, mu))
        return Arrangement(self.field, self.dim - 1, restricted), RestrictionMap(y, tuple(entries))

    # -- combinatorics ------------------------------------------------------

    def _system(self, subset: Iterable[int]) -> list[tuple[Scalar, ...]]:
        # rows (c1..cN | c0) so pivots on the constant column flag inconsistency
        return [self.hyperplanes[j].linear + (self.hyperplanes[j].constant,) for j in subset]

    def intersection(self, subset: Iterable[int]) -> tuple[bool, int, tuple]:
        """``(nonempty, codim, canonical equations)`` of the intersection."""
        rows = self._system(subset)
        if not rows:
            return True, 0, ()
        reduced, pivots = rref(rows, self.field, self.dim + 1)
        if self.dim in pivots:
            return False, -1, ()
        return True, len(pivots), tuple(reduced)

    def linear_rank(self, subset: Iterable[int]) -> int:
        rows = [self.hyperplanes[j].linear for j in subset]
        return rank(rows, self.field, self.dim)

    def is_independent(self, subset: Sequence[int]) -> bool:
        """Nonempty intersection of codimension ``len(subset)``."""
        nonempty, codim, _ = self.intersection(subset)
        return nonempty and codim == len(subset)

    @cached_property
    def flats(self) -> tuple[Flat, ...]:
        """Intersection poset, bottom (ambient space) first, with Möbius values."""
        n = len(self)
        found: dict[tuple, tuple[int, frozenset[int]]] = {}
        for size in range(n + 1):
            for subset in itertools.combinations(range(n), size):
                nonempty, codim, eqs = self.intersection(subset)
                if not nonempty or eqs in found:
                    continue
                members = frozenset(
                    j for j in range(n) if self.intersection(subset + (j,))[:2] == (True, codim)
                )
                found[eqs] = (codim, members)
        items = sorted(found.items(), key=lambda kv: (kv[1][0], sorted(kv[1][1])))
        flats: list[Flat] = []
        for eqs, (codim, members) in items:
            below = [f for f in flats if f.members < members]
            mu = 1 if not members else -sum(f.moebius for f in below)
            flats.append(Flat(members, codim, eqs, mu))
        return tuple(flats)

    def poincare_polynomial(self) -> list[int]:
        """Coefficients of ``sum |mu(X)| t^codim(X)``, constant term first."""
        top = max((f.codim for f in self.flats), default=0)
        coeffs = [0] * (top + 1)
        for f in self.flats:
            coeffs[f.codim] += abs(f.moebius)
        return coeffs

    @cached_property
    def circuits(self) -> tuple[Circuit, ...]:
        """Minimal subsets whose linear parts are dependent."""
        n = len(self)
        out: list[Circuit] = []
        for size in range(1, n + 1):
            for subset in itertools.combinations(range(n), size):
                if self.linear_rank(subset) != size - 1:
                    continue
                if any(set(c.members) <= set(subset) for c in out):
                    continue
                cols = [self.hyperplanes[j].linear for j in subset]
                rows = [tuple(col[i] for col in cols) for i in range(self.dim)]
                (vec,) = kernel(rows, self.field, size)
                lam = tuple(v / vec[0] for v in vec)
                const = -sum((l * self.hyperplanes[j].constant for l, j in zip(lam, subset)), self.field.zero())
                out.append(Circuit(subset, lam, const))
        return tuple(out)

    @cached_property
    def broken_circuits(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c.broken for c in self.circuits if c.is_central)

    @cached_property
    def nbc_sets(self) -> tuple[tuple[int, ...], ...]:
        """Independent subsets containing no broken circuit, sorted by (size, lex)."""
        n = len(self)
        out = []
        for size in range(n + 1):
            for subset in itertools.combinations(range(n), size):
                s = set(subset)
                if any(set(b) <= s for b in self.broken_circuits):
                    continue
                if self.is_independent(subset):
                    out.append(subset)
        return tuple(out)

    def hyperplane_unit(self, j: int, scalar: Scalar | int = 1, power: int = 1) -> "Unit":
        exps = [0] * len(self)
        exps[j] = power
        return Unit(self.field(scalar), tuple(exps))

    def constant_unit(self, scalar: Scalar | int) -> "Unit":
        return Unit(self.field(scalar), (0,) * len(self))


@dataclass(frozen=True)
class Unit:
    """``scalar * prod(phi_i ** exponents[i])``, an element of G_m(U)."""

    scalar: Scalar
    exponents: tuple[int, ...]

    def __post_init__(self):
        if not self.scalar:
            raise ArrangementError("unit scalar must be nonzero")

    @property
    def is_constant(self) -> bool:
        return not any(self.exponents)

    def atom_index(self) -> int | None:
        """Index ``i`` if the unit is ``lambda * phi_i``, else ``None``."""
        nz = [i for i, e in enumerate(self.exponents) if e]
        if len(nz) == 1 and self.exponents[nz[0]] == 1:
            return nz[0]
        return None

    def __mul__(self, other: "Unit") -> "Unit":
        if len(self.exponents) != len(other.exponents):
            raise ArrangementError("units from different arrangements")
        return Unit(self.scalar * other.scalar, tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def inverse(self) -> "Unit":
        return Unit(self.scalar.inv(), tuple(-e for e in self.exponents))

    def __truediv__(self, other: "Unit") -> "Unit":
        return self * other.inverse()

    def __pow__(self, n: int) -> "Unit":
        return Unit(self.scalar**n, tuple(n * e for e in self.exponents))

    def scaled(self, lam: Scalar | int) -> "Unit":
        return Unit(self.scalar * lam, self.exponents)

    def restrict(self, rmap: RestrictionMap, target: Arrangement) -> "Unit":
        if self.exponents[rmap.index]:
            raise ArrangementError("unit has a zero or pole along the restriction hyperplane")
        lam = self.scalar
        exps = [0] * len(target)
        for e, entry in zip(self.exponents, rmap.entries):
            if not e:
                continue
            if entry[0] == "const":
                lam = lam * entry[1] ** e
            else:
                _, k, mu = entry
                lam = lam * mu**e
                exps[k] += e
        return Unit(lam, tuple(exps))

    def format(self, arr: Arrangement) -> str:
        factors = []
        for i, e in enumerate(self.exponents):
            if e:
                factors.append(f"{i + 1}^{e}" if e != 1 else f"{i + 1}")
        return f"u({self.scalar}; {' * '.join(factors)})" if factors else f"u({self.scalar})"


# -- sum-to-zero test via polynomial arithmetic ----------------------------


def _poly_mul(a: dict, b: dict, field: Field) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = out.get(m, field.zero()) + ca * cb
    return {m: c for m, c in out.items() if c}


def _form_poly(h: Hyperplane) -> dict:
    n = h.dim
    poly = {}
    if h.constant:
        poly[(0,) * n] = h.constant
    for i, c in enumerate(h.linear):
        if c:
            poly[tuple(1 if k == i else 0 for k in range(n))] = c
    return poly


def units_sum_to_zero(units: Sequence[Unit], arr: Arrangement) -> bool:
    """Whether ``sum(units) == 0`` as rational functions on the ambient space."""
    if not units:
        return True
    field = arr.field
    n = len(arr)
    shift = [max(0, max(-u.exponents[i] for u in units)) for i in range(n)]
    forms = [_form_poly(h) for h in arr.hyperplanes]
    total: dict = {}
    for u in units:
        poly = {(0,) * arr.dim: u.scalar}
        for i in range(n):
            for _ in range(u.exponents[i] + shift[i]):
                poly = _poly_mul(poly, forms[i], field)
        for m, c in poly.items():
            total[m] = total.get(m, field.zero()) + c
    return not any(total.values())
