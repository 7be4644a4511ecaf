import itertools
from collections import Counter
from functools import lru_cache

import pytest

from mwarrangements.quadratic import GWClass, WittClass, legendre
from mwarrangements.scalar import GF

PRIMES = [3, 5, 7, 11, 13]


def histogram(diag, q):
    """Number of solutions of sum a_i x_i^2 = c for every c in GF(q)."""
    return _histogram(tuple(sorted(a % q for a in diag)), q)


@lru_cache(maxsize=None)
def _histogram(diag, q):
    counts = Counter()
    for xs in itertools.product(range(q), repeat=len(diag)):
        counts[sum(a * x * x for a, x in zip(diag, xs)) % q] += 1
    return tuple(counts[c] for c in range(q))


def gw(diag, q):
    F = GF(q)
    total = GWClass(0, 1, q)
    for a in diag:
        total = total + GWClass.form(F(a))
    return total


def diagonal_forms(q, max_rank):
    units = range(1, q)
    for n in range(1, max_rank + 1):
        yield from itertools.combinations_with_replacement(units, n)


@pytest.mark.parametrize("q", PRIMES)
def test_gw_classification_matches_histograms(q):
    max_rank = 3 if q <= 7 else 2
    forms = list(diagonal_forms(q, max_rank))
    for f, g in itertools.combinations(forms, 2):
        if len(f) != len(g):
            continue
        assert (gw(f, q) == gw(g, q)) == (histogram(f, q) == histogram(g, q)), (f, g)


@pytest.mark.parametrize("q", PRIMES)
def test_gw_product_is_tensor(q):
    for f in diagonal_forms(q, 2):
        for g in diagonal_forms(q, 1 if q > 7 else 2):
            tensor = [a * b % q for a in f for b in g]
            assert gw(f, q) * gw(g, q) == gw(tensor, q)


def _hyperbolic(k):
    return [1, -1] * k


@pytest.mark.parametrize("q", PRIMES)
def test_witt_equivalence_by_hyperbolicity(q):
    # f ~ g in W iff f + (-g) is hyperbolic (same histogram as k copies of H)
    forms = list(diagonal_forms(q, 2 if q <= 7 else 1))
    for f, g in itertools.product(forms, repeat=2):
        if (len(f) + len(g)) % 2:
            assert gw(f, q).to_witt() != gw(g, q).to_witt()
            continue
        k = (len(f) + len(g)) // 2
        combo = [a % q for a in f] + [(-b) % q for b in g]
        hyperbolic = histogram(combo, q) == histogram([a % q for a in _hyperbolic(k)], q)
        assert (gw(f, q).to_witt() == gw(g, q).to_witt()) == hyperbolic, (f, g)


def _witt_group(q):
    g = GF(q).nonsquare().value
    seen = set()
    for n1 in range(4):
        for n2 in range(4):
            seen.add(gw([1] * n1 + [g] * n2, q).to_witt())
    return seen


def _order(w):
    k, acc = 1, w
    while not acc.is_zero:
        acc, k = acc + w, k + 1
    return k


def test_witt_f3_cyclic_of_order_four():
    group = _witt_group(3)
    assert len(group) == 4
    assert _order(gw([1], 3).to_witt()) == 4


def test_witt_f5_klein_four():
    group = _witt_group(5)
    assert len(group) == 4
    assert all(_order(w) <= 2 for w in group)


@pytest.mark.parametrize("q", PRIMES)
def test_hyperbolic_plane_is_witt_zero(q):
    assert gw([1, q - 1], q).to_witt().is_zero


def test_legendre():
    F = GF(11)
    assert [legendre(F(a)) for a in range(1, 11)] == [1, -1, 1, 1, 1, -1, -1, -1, 1, -1]
