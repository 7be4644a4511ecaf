"""Exact zero test in K^MW_*(Q) through local invariants.

K^MW_n is the fibre product of I^n and K^M_n over I^n/I^{n+1} (GW and W in
degrees 0 and below), so an element vanishes iff its images in W(Q) and in
K^M_n(Q) (or the rank, in degree 0) vanish.  Both are detected locally:

* W(Q) = W(R) + sum_p W(F_p): signature and second residues at every prime;
* K^M_1(Q) = Q^x; K^M_2(Q) = {+-1} + sum_{p odd} F_p^x (real symbol and tame
  symbols); K^M_n(Q) = Z/2 for n >= 3, detected by the real symbol.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from fractions import Fraction
from typing import Mapping

from sympy import factorint

from .quadratic import GWClass
from .scalar import GF, square_class

__all__ = ["vanishes_over_q", "witt_image", "milnor_image_vanishes"]


def _valuation(x: Fraction, p: int) -> int:
    v, n, d = 0, x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _primes(values) -> set[int]:
    out: set[int] = set()
    for x in values:
        for n in (abs(x.numerator), x.denominator):
            if n > 1:
                out.update(factorint(n))
    return out


def witt_image(terms: Mapping[tuple, int], degree: int) -> dict[int, int]:
    """Virtual form ``sum n_d <d>`` (``d`` squarefree) of the degree part:
    ``eta^m [a_1]...[a_k]`` maps to ``prod (<a_i> - 1)``."""
    out: dict[int, int] = defaultdict(int)
    for (m, syms), c in terms.items():
        if len(syms) - m != degree:
            continue
        classes = [square_class(a) for a in syms]
        for keep in itertools.product((0, 1), repeat=len(classes)):
            d, sign = 1, 1
            for k, cls in zip(keep, classes):
                if k:
                    d *= cls
                else:
                    sign = -sign
            out[_squarefree(d)] += sign * c
    return {d: n for d, n in out.items() if n}


def _squarefree(d: int) -> int:
    sign = -1 if d < 0 else 1
    out = 1
    for p, e in factorint(abs(d)).items():
        if e % 2:
            out *= p
    return sign * out


def _witt_vanishes(form: Mapping[int, int]) -> bool:
    if sum(n * (1 if d > 0 else -1) for d, n in form.items()):
        return False
    for p in _primes(Fraction(d) for d in form):
        if p == 2:
            # W(F_2) = Z/2, counted by rank
            if sum(n for d, n in form.items() if d % 2 == 0) % 2:
                return False
            continue
        F = GF(p)
        residue = GWClass(0, 1, p)
        for d, n in form.items():
            if d % p == 0:
                residue = residue + GWClass.form(F(d // p)).scale(n)
        if not residue.to_witt().is_zero:
            return False
    return True


def _tame(a: Fraction, b: Fraction, p: int) -> int:
    va, vb = _valuation(a, p), _valuation(b, p)
    x = Fraction((-1) ** (va * vb)) * a**vb / b**va
    return x.numerator * pow(x.denominator, -1, p) % p


def milnor_image_vanishes(terms: Mapping[tuple, int], degree: int) -> bool:
    """Whether the image in K^M_degree(Q) of the eta-free part vanishes."""
    parts = [(syms, c) for (m, syms), c in terms.items() if m == 0 and len(syms) == degree]
    if degree == 1:
        prod = Fraction(1)
        for (a,), c in parts:
            prod *= a.value**c
        return prod == 1
    real = sum(c for syms, c in parts if all(a.value < 0 for a in syms)) % 2
    if real or degree != 2:
        return not real
    for p in _primes(a.value for syms, _ in parts for a in syms):
        if p == 2:
            continue
        acc = 1
        for (a, b), c in parts:
            acc = acc * pow(_tame(a.value, b.value, p), c, p) % p
        if acc != 1:
            return False
    return True


def vanishes_over_q(terms: Mapping[tuple, int]) -> bool:
    """Exact zero test for a Q-element given by its monomial terms."""
    degrees = {len(syms) - m for m, syms in terms}
    for n in degrees:
        if not _witt_vanishes(witt_image(terms, n)):
            return False
        if n == 0:
            rank = sum(c for (m, syms), c in terms.items() if m == 0 and not syms)
            if rank:
                return False
        elif n > 0 and not milnor_image_vanishes(terms, n):
            return False
    return True
