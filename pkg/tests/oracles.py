"""Raw (unnormalized) instances of the defining Milnor-Witt relations."""

from collections import defaultdict

from mwarrangements.ktheory import MWElement, eta, symbol


def _unit(field, rng, avoid=()):
    while True:
        a = field.random_element(rng, nonzero=True, bound=9)
        if a not in avoid:
            return a


def relation_instances(field, rng):
    """Yield (name, element) for each relation; elements are built raw so the
    rewriter sees the relation itself, not a pre-simplified version."""
    one = field.one()
    a = _unit(field, rng, avoid=(one,))
    yield "steinberg", MWElement.raw(field, {(0, (a, one - a)): 1})
    a, b = _unit(field, rng), _unit(field, rng)
    terms = defaultdict(int)
    for mono, c in (((0, (a * b,)), 1), ((0, (a,)), -1), ((0, (b,)), -1), ((1, (a, b)), -1)):
        terms[mono] += c
    yield "logarithm", MWElement.raw(field, dict(terms))
    a = _unit(field, rng)
    yield "eta-central", eta(field) * symbol(a) - symbol(a) * eta(field)
    yield "hyperbolic", MWElement.raw(field, {(1, ()): 2, (2, (-one,)): 1})
