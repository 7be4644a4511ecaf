"""Exterior-algebra model over Z[eta]/2eta: the twisted divisor map, the
quotient by the Orlik-Solomon type ideal L, and the maps psi / phi to and
from the unit presentation.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Mapping

from .arrangement import Arrangement, Unit
from .ktheory import MWElement
from .linalg import rank as field_rank
from .presentation import IndexWord, PresElement
from .scalar import QQ

__all__ = [
    "EtaInt",
    "ExtElement",
    "wedge",
    "tilde_div",
    "oplus",
    "nf_mod_L",
    "collapse",
    "psi",
    "phi",
    "rank_mod_L",
    "l_generators",
    "rank_by_span",
]


class EtaInt:
    """``z + sum eta^m`` with the eta-part 2-torsion (``2 eta = 0``)."""

    __slots__ = ("z", "higher")

    def __init__(self, z: int = 0, higher=()):
        self.z = z
        self.higher = frozenset(higher)
        if any(m < 1 for m in self.higher):
            raise ValueError("eta powers start at 1")

    @classmethod
    def eta_power(cls, m: int, n: int = 1) -> "EtaInt":
        if m == 0:
            return cls(n)
        return cls(0, {m} if n % 2 else ())

    def __add__(self, other):
        other = _eta_int(other)
        return EtaInt(self.z + other.z, self.higher ^ other.higher)

    __radd__ = __add__

    def __neg__(self):
        return EtaInt(-self.z, self.higher)

    def __sub__(self, other):
        return self + (-_eta_int(other))

    def __mul__(self, other):
        other = _eta_int(other)
        higher: set[int] = set()
        parts = []
        if self.z % 2:
            parts.extend(other.higher)
        if other.z % 2:
            parts.extend(self.higher)
        parts.extend(a + b for a in self.higher for b in other.higher)
        for m in parts:
            higher ^= {m}
        return EtaInt(self.z * other.z, higher)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.z) or bool(self.higher)

    def __eq__(self, other):
        if isinstance(other, int):
            other = EtaInt(other)
        return isinstance(other, EtaInt) and self.z == other.z and self.higher == other.higher

    def __hash__(self):
        return hash((self.z, self.higher))

    def __str__(self):
        parts = [str(self.z)] if self.z or not self.higher else []
        for m in sorted(self.higher):
            parts.append("eta" if m == 1 else f"eta^{m}")
        return " + ".join(parts)

    def __repr__(self):
        return f"EtaInt({self})"


def _eta_int(x) -> EtaInt:
    return x if isinstance(x, EtaInt) else EtaInt(int(x))


class ExtElement:
    """Element of the exterior algebra on ``Y_1..Y_n`` over ``Z[eta]/2eta``."""

    def __init__(self, terms: Mapping[IndexWord, EtaInt | int] | None = None):
        clean = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            if any(a >= b for a, b in zip(w, w[1:])):
                raise ValueError(f"wedge monomial {w} is not strictly increasing")
            c = _eta_int(c)
            if c:
                clean[w] = c
        self.terms: dict[IndexWord, EtaInt] = clean

    @classmethod
    def monomial(cls, indices, coeff: EtaInt | int = 1) -> "ExtElement":
        return cls({tuple(indices): coeff})

    @classmethod
    def one(cls) -> "ExtElement":
        return cls({(): 1})

    def __add__(self, other: "ExtElement") -> "ExtElement":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms[w] + c if w in terms else c
        return ExtElement(terms)

    def __neg__(self):
        return ExtElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: EtaInt | int) -> "ExtElement":
        c = _eta_int(c)
        return ExtElement({w: c * v for w, v in self.terms.items()})

    def __xor__(self, other: "ExtElement") -> "ExtElement":
        return wedge(self, other)

    def __eq__(self, other):
        return isinstance(other, ExtElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def degree_part(self, k: int) -> "ExtElement":
        return ExtElement({w: c for w, c in self.terms.items() if len(w) == k})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            mono = "^".join(f"Y{i + 1}" for i in w)
            if not mono:
                parts.append(str(c))
                continue
            # eta-parts carry no sign, so splitting off the integer part is safe
            if c.z:
                parts.append({1: mono, -1: f"-{mono}"}.get(c.z, f"{c.z}*{mono}"))
            for m in sorted(c.higher):
                parts.append(f"{'eta' if m == 1 else f'eta^{m}'}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"ExtElement({self})"


def _merge_sign(a: IndexWord, b: IndexWord) -> tuple[int, IndexWord] | None:
    if set(a) & set(b):
        return None
    inversions = sum(1 for x in a for y in b if y < x)
    return (-1 if inversions % 2 else 1), tuple(sorted(a + b))


def wedge(x: ExtElement, y: ExtElement) -> ExtElement:
    terms: dict[IndexWord, EtaInt] = {}
    for w1, c1 in x.terms.items():
        for w2, c2 in y.terms.items():
            merged = _merge_sign(w1, w2)
            if merged is None:
                continue
            sign, w = merged
            c = c1 * c2 * sign
            terms[w] = terms[w] + c if w in terms else c
    return ExtElement(terms)


def oplus(a: ExtElement, b: ExtElement) -> ExtElement:
    """``a + b + eta a^b``, the twisted sum matching multiplication of units."""
    return a + b + wedge(a, b).scale(EtaInt.eta_power(1))


def _oplus_inverse(x: ExtElement) -> ExtElement:
    # solve x + y + eta x^y = 0; the correction is nilpotent in wedge degree
    y = -x
    for _ in range(len(max(x.terms, key=len, default=())) + 2):
        nxt = -x - wedge(x, y).scale(EtaInt.eta_power(1))
        if nxt == y:
            return y
        y = nxt
    raise ArithmeticError("inverse of twisted sum did not stabilize")


def tilde_div(u: Unit) -> ExtElement:
    """Twisted divisor, folding one atomic factor at a time."""
    acc = ExtElement()
    for i, e in enumerate(u.exponents):
        atom = ExtElement.monomial((i,))
        if e < 0:
            atom = _oplus_inverse(atom)
        for _ in range(abs(e)):
            acc = oplus(acc, atom)
    return acc


def tilde_div_word(units) -> ExtElement:
    acc = ExtElement.one()
    for u in units:
        acc = wedge(acc, tilde_div(u))
    return acc


# -- quotient by L ------------------------------------------------------------


@lru_cache(maxsize=None)
def _mono_nf(arr: Arrangement, mono: IndexWord) -> tuple[tuple[IndexWord, int], ...]:
    ok, codim, _ = arr.intersection(mono)
    if not ok or codim < len(mono):
        # empty intersection, or a dependent family (e_S = +-e_i ^ d e_S)
        return ()
    s = set(mono)
    for c in arr.circuits:
        if not c.is_central or not s.issuperset(c.broken):
            continue
        rest = tuple(i for i in mono if i not in c.broken)
        sign = -1 if sum(1 for b in c.broken for r in rest if r < b) % 2 else 1
        out: dict[IndexWord, int] = {}
        # e_B = -sum_{j >= 1} (-1)^j e_{C - c_j}
        for j in range(1, len(c.members)):
            face = c.members[:j] + c.members[j + 1 :]
            merged = _merge_sign(face, rest)
            if merged is None:
                continue
            s2, w = merged
            coeff = sign * s2 * (-1) * (-1) ** j
            for v, d in _mono_nf(arr, w):
                out[v] = out.get(v, 0) + coeff * d
        return tuple((w, d) for w, d in sorted(out.items()) if d)
    return ((mono, 1),)


def nf_mod_L(x: ExtElement, arr: Arrangement) -> ExtElement:
    terms: dict[IndexWord, EtaInt] = {}
    for w, c in x.terms.items():
        for v, d in _mono_nf(arr, w):
            contrib = c * d
            terms[v] = terms[v] + contrib if v in terms else contrib
    return ExtElement(terms)


def collapse(c: MWElement) -> EtaInt:
    """Image in Z[eta]/2eta killing every symbol [lambda]."""
    out = EtaInt()
    for (m, syms), n in c.terms.items():
        if not syms:
            out = out + EtaInt.eta_power(m, n)
    return out


def psi(x: PresElement) -> ExtElement:
    acc = ExtElement()
    for word, c in x.terms.items():
        k = collapse(c)
        if k:
            acc = acc + tilde_div_word(word).scale(k)
    return nf_mod_L(acc, x.arr)


def phi(mono: IndexWord, arr: Arrangement) -> PresElement:
    return PresElement.word(arr, [arr.hyperplane_unit(i) for i in mono])


def phi_element(x: ExtElement, arr: Arrangement) -> PresElement:
    """Linear extension of phi; eta^m maps to eta^m."""
    from .ktheory import eta

    out = PresElement.zero(arr)
    for w, c in x.terms.items():
        coeff = MWElement.integer(arr.field, c.z)
        for m in c.higher:
            coeff = coeff + eta(arr.field) ** m
        out = out + phi(w, arr).lmul(coeff)
    return out


def rank_mod_L(arr: Arrangement) -> list[int]:
    counts = [0] * (max((len(s) for s in arr.nbc_sets), default=0) + 1)
    for s in arr.nbc_sets:
        counts[len(s)] += 1
    return counts


def l_generators(arr: Arrangement, k: int) -> list[dict[IndexWord, int]]:
    """Integral generators of L in wedge degree ``k`` (as a module)."""
    n = len(arr)
    gens = []
    for size in range(1, k + 2):
        for s in itertools.combinations(range(n), size):
            ok, codim, _ = arr.intersection(s)
            if not ok and size <= k:
                base = {s: 1}
            elif ok and codim < size:
                base = {}
                for j in range(size):
                    base[s[:j] + s[j + 1 :]] = (-1) ** j
            else:
                continue
            deg = len(next(iter(base)))
            for t in itertools.combinations(range(n), k - deg):
                prod: dict[IndexWord, int] = {}
                for w, c in base.items():
                    merged = _merge_sign(w, t)
                    if merged is not None:
                        sign, v = merged
                        prod[v] = prod.get(v, 0) + sign * c
                prod = {v: c for v, c in prod.items() if c}
                if prod:
                    gens.append(prod)
    return gens


def _gf2_rank(rows: list[int]) -> int:
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


def rank_by_span(arr: Arrangement, k: int, modulus: int | None = None) -> int:
    """Rank of degree ``k`` of the quotient by direct span computation, over
    Q (``modulus=None``) or GF(2)."""
    monos = list(itertools.combinations(range(len(arr)), k))
    col = {m: i for i, m in enumerate(monos)}
    gens = l_generators(arr, k)
    if modulus == 2:
        rows = [sum(1 << col[w] for w, c in g.items() if c % 2) for g in gens]
        return len(monos) - _gf2_rank(rows)
    if modulus is not None:
        raise ValueError("span rank is computed over Q or GF(2)")
    rows = []
    for g in gens:
        row = [QQ(0)] * len(monos)
        for w, c in g.items():
            row[col[w]] = QQ(c)
        rows.append(row)
    return len(monos) - field_rank(rows, QQ, len(monos))
