"""Shared test arrangements."""

from mwarrangements import QQ, Arrangement, GF
from mwarrangements.harness import case_arrangement


def boolean(n, field=QQ):
    return Arrangement.from_forms(field, n, [[0] + [1 if j == i else 0 for j in range(n)] for i in range(n)])


def pencil(field=QQ):
    return Arrangement.from_forms(field, 2, [[0, 1, 0], [0, 0, 1], [0, 1, 1]])


def triangle(field=QQ):
    return Arrangement.from_forms(field, 2, [[0, 1, 0], [0, 0, 1], [-1, 1, 1]])


def braid(field=QQ):
    return Arrangement.from_forms(field, 3, [[0, 1, -1, 0], [0, 1, 0, -1], [0, 0, 1, -1]])


def named(field=QQ):
    out = {f"boolean{n}": boolean(n, field) for n in range(1, 5)}
    out.update(pencil=pencil(field), triangle=triangle(field), braid=braid(field))
    return out


def random_corpus(count=50):
    return [case_arrangement(seed) for seed in range(count)]


def full_corpus():
    """Named arrangements over Q and GF(5), then 50 seeded random ones."""
    items = [(f"{k}/Q", a) for k, a in named(QQ).items()]
    items += [(f"{k}/GF5", a) for k, a in named(GF(5)).items()]
    items += [(f"random{i}", a) for i, a in enumerate(random_corpus())]
    return items
