import itertools

import pytest

from mwarrangements import Arrangement, ArrangementError, GF, QQ
from mwarrangements.arrangement import normalize, units_sum_to_zero

from corpus import boolean, braid, named, pencil, random_corpus, triangle


def _points(arr):
    q = arr.field.p
    return list(itertools.product(range(q), repeat=arr.dim))


def _vanishes(h, pt, q):
    v = h.coeffs[0].value + sum(c.value * x for c, x in zip(h.coeffs[1:], pt))
    return v % q == 0


def brute_poincare(arr):
    """Intersection lattice from point sets over GF(q), Möbius by recursion."""
    q = arr.field.p
    pts = _points(arr)
    zero = [frozenset(p for p in pts if _vanishes(h, p, q)) for h in arr.hyperplanes]
    flats = {frozenset(pts)}
    for size in range(1, len(arr) + 1):
        for sub in itertools.combinations(range(len(arr)), size):
            s = frozenset(pts).intersection(*(zero[i] for i in sub))
            if s:
                flats.add(s)
    order = sorted(flats, key=len, reverse=True)
    mu = {}
    for x in order:
        mu[x] = 1 if len(x) == len(pts) else -sum(mu[y] for y in mu if x < y)
    coeffs = {}
    for x in order:
        codim = arr.dim - round(__import__("math").log(len(x), q))
        coeffs[codim] = coeffs.get(codim, 0) + abs(mu[x])
    return [coeffs.get(k, 0) for k in range(max(coeffs) + 1)]


def complement_count(arr):
    q = arr.field.p
    return sum(1 for p in _points(arr) if not any(_vanishes(h, p, q) for h in arr.hyperplanes))


def test_normalize():
    h, factor = normalize([QQ(1), QQ(0), QQ(3)])
    assert [str(c) for c in h.coeffs] == ["1/3", "0", "1"]
    assert factor == 3
    assert str(h) == "x2 + 1/3"


def test_zero_form_rejected():
    with pytest.raises(ArrangementError):
        normalize([QQ(1), QQ(0)])


def test_duplicate_rejected():
    with pytest.raises(ArrangementError):
        Arrangement.from_forms(QQ, 2, [[0, 1, 0], [0, 2, 0]])


def test_json_round_trip():
    arr = triangle()
    assert Arrangement.from_json(arr.to_json()) == arr
    with pytest.raises(ArrangementError):
        Arrangement.from_json({"dim": 2, "field": "Q"})


@pytest.mark.parametrize(
    "name,expected",
    [("boolean1", [1, 1]), ("boolean2", [1, 2, 1]), ("boolean3", [1, 3, 3, 1]), ("boolean4", [1, 4, 6, 4, 1]),
     ("pencil", [1, 3, 2]), ("triangle", [1, 3, 3]), ("braid", [1, 3, 2])],
)
def test_poincare_named(name, expected):
    assert named()[name].poincare_polynomial() == expected
    assert named(GF(5))[name].poincare_polynomial() == expected


@pytest.mark.parametrize("idx", range(0, 50, 3))
def test_poincare_against_point_lattice(idx):
    arr = random_corpus()[idx]
    assert arr.poincare_polynomial() == brute_poincare(arr)


@pytest.mark.parametrize("arr", list(named(GF(7)).values()) + random_corpus(20), ids=str)
def test_complement_point_count(arr):
    # |U(F_q)| = sum_k (-1)^k b_k q^(N-k)
    q, n = arr.field.p, arr.dim
    b = arr.poincare_polynomial()
    assert complement_count(arr) == sum((-1) ** k * c * q ** (n - k) for k, c in enumerate(b))


def test_pencil_circuit():
    (c,) = pencil().circuits
    assert c.members == (0, 1, 2)
    assert [str(x) for x in c.coeffs] == ["1", "1", "-1"]
    assert c.is_central and c.broken == (1, 2)
    assert pencil().flats[-1].moebius == 2


def test_triangle_circuit_is_affine():
    (c,) = triangle().circuits
    # x1 + x2 - (x1 + x2 - 1) - 1 = 0
    assert str(c.const) == "-1" and not c.is_central
    assert triangle().broken_circuits == ()


def test_nbc_sets():
    assert len(pencil().nbc_sets) == 6
    assert len(triangle().nbc_sets) == 7
    assert (1, 2) not in pencil().nbc_sets
    assert len(boolean(4).nbc_sets) == 16


def test_parallel_pair_circuit():
    arr = Arrangement.from_forms(QQ, 1, [[0, 1], [-1, 1]])
    (c,) = arr.circuits
    assert c.members == (0, 1) and not c.is_central
    assert arr.poincare_polynomial() == [1, 2]


def test_restriction_pencil():
    r, rmap = pencil().restriction(0)
    assert len(r) == 1
    assert rmap.entries[1][:2] == ("hyp", 0) and rmap.entries[2][:2] == ("hyp", 0)
    assert rmap.entries[1][2] == 1 and rmap.entries[2][2] == 1


def test_restriction_constant_entry():
    arr = Arrangement.from_forms(QQ, 2, [[0, 1, 0], [-1, 1, 0], [0, 0, 1]])
    r, rmap = arr.restriction(0)
    assert rmap.entries[1] == ("const", QQ(-1))
    assert [str(h) for h in r.hyperplanes] == ["x1"]


def test_braid_restriction_dedupes():
    r, rmap = braid().restriction(2)
    assert len(r) == 1


def test_units():
    arr = pencil()
    u = arr.hyperplane_unit(0, 2) * arr.hyperplane_unit(1, 1, -1)
    assert u.format(arr) == "u(2; 1 * 2^-1)"
    assert (u * u.inverse()).is_constant
    assert arr.hyperplane_unit(2, 3).atom_index() == 2


def test_units_sum_to_zero():
    arr = pencil()
    x1, x2, x3 = (arr.hyperplane_unit(i) for i in range(3))
    assert units_sum_to_zero([x1, x2, x3.scaled(-1)], arr)
    assert not units_sum_to_zero([x1, x2, x3], arr)
    # x1/x3 + x2/x3 - 1 = 0
    assert units_sum_to_zero([x1 / x3, x2 / x3, arr.constant_unit(-1)], arr)
