"""Random arrangements, random elements and the named consistency suites."""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field as dc_field
from typing import Callable

from .arrangement import Arrangement, ArrangementError, Unit, normalize
from .ktheory import MWElement, ZeroTest, eta, symbol
from .osmodel import (
    ExtElement,
    collapse,
    nf_mod_L,
    oplus,
    phi,
    phi_element,
    psi,
    rank_by_span,
    rank_mod_L,
    tilde_div,
)
from .presentation import (
    PresElement,
    basis,
    j_generators,
    j_prime_generators,
    normal_form,
    rank,
    restriction_boundary,
)
from .scalar import Field, Scalar

__all__ = [
    "random_arrangement",
    "random_unit",
    "random_mw",
    "random_pres",
    "lift_unit",
    "VerifyReport",
    "Failure",
    "SUITES",
    "run_suite",
    "minimize",
]


class CaseFailure(AssertionError):
    """A suite check failed; ``expression`` is the offending element text."""

    def __init__(self, message: str, expression: str = ""):
        super().__init__(message)
        self.expression = expression


def available_forms(field: Field, dim: int) -> int | None:
    if not field.is_finite:
        return None
    q = field.p
    return q * (q**dim - 1) // (q - 1)


def random_arrangement(seed: int, field: Field, dim: int, count: int) -> Arrangement:
    if dim < 1 or dim > 3:
        raise ArrangementError("random arrangements live in dimension 1..3")
    if count < 0 or count > 5:
        raise ArrangementError("random arrangements have at most 5 hyperplanes")
    avail = available_forms(field, dim)
    if avail is not None and count > avail:
        raise ArrangementError(
            f"cannot place {count} distinct hyperplanes in {field}^{dim}: only {avail} exist"
        )
    rng = random.Random(seed)
    seen = []
    while len(seen) < count:
        linear = [field.random_element(rng) for _ in range(dim)]
        if not any(linear):
            continue
        # zero constants a third of the time so central circuits show up
        const = field.zero() if rng.random() < 1 / 3 else field.random_element(rng)
        h, _ = normalize([const] + linear)
        if h not in seen:
            seen.append(h)
    return Arrangement(field, dim, seen)


def random_unit(rng: random.Random, arr: Arrangement, max_exp: int = 1, avoid=()) -> Unit:
    exps = tuple(
        0 if i in avoid else rng.randint(-max_exp, max_exp) for i in range(len(arr))
    )
    return Unit(arr.field.random_element(rng, nonzero=True), exps)


def random_mw(rng: random.Random, field: Field, terms: int = 2) -> MWElement:
    out = MWElement.zero(field)
    for _ in range(terms):
        c = MWElement.integer(field, rng.randint(-2, 2))
        for _ in range(rng.randint(0, 1)):
            c = c * eta(field)
        for _ in range(rng.randint(0, 2)):
            c = c * symbol(field.random_element(rng, nonzero=True))
        out = out + c
    return out


def random_pres(rng: random.Random, arr: Arrangement, terms: int = 2, length: int = 2, avoid=()) -> PresElement:
    out = PresElement.zero(arr)
    for _ in range(terms):
        units = [random_unit(rng, arr, avoid=avoid) for _ in range(rng.randint(0, length))]
        out = out + PresElement.word(arr, units, random_mw(rng, arr.field, 1) + MWElement.integer(arr.field, 1))
    return out


def lift_unit(v: Unit, arr: Arrangement, y: int) -> Unit:
    """A unit on ``arr`` away from hyperplane ``y`` restricting to ``v``."""
    restricted, rmap = arr.restriction(y)
    exps = [0] * len(arr)
    for k, e in enumerate(v.exponents):
        if e:
            exps[min(rmap.preimages(k))] += e
    u = Unit(arr.field.one(), tuple(exps))
    r = u.restrict(rmap, restricted)
    return u.scaled(v.scalar / r.scalar)


def _require_zero(nf, message: str, expression: str = "") -> None:
    verdict = nf.is_zero()
    if verdict is not ZeroTest.ZERO:
        raise CaseFailure(f"{message}: {nf} ({verdict.name})", expression)


# -- suites ----------------------------------------------------------------------


def _suite_tildediv(arr: Arrangement, rng: random.Random) -> None:
    for _ in range(4):
        f = random_unit(rng, arr, 2)
        g = random_unit(rng, arr, 2)
        h = random_unit(rng, arr, 2)
        whole = f * g
        f2, g2 = whole / h, h
        a = oplus(tilde_div(f), tilde_div(g))
        b = oplus(tilde_div(f2), tilde_div(g2))
        if a != tilde_div(whole) or b != a:
            raise CaseFailure(f"tilde_div depends on factorization: {a} vs {b}", whole.format(arr))
        if oplus(tilde_div(g), tilde_div(f)) != a:
            raise CaseFailure("tilde_div(fg) != tilde_div(gf)", whole.format(arr))
        if oplus(tilde_div(f), tilde_div(f.inverse())):
            raise CaseFailure("tilde_div(f f^-1) != 0", f.format(arr))


def _suite_equiv(arr: Arrangement, rng: random.Random) -> None:
    for g in j_generators(arr):
        _require_zero(normal_form(g.element, "prime"), f"J generator {g.family.value} not in J'", g.element.format())
    for g in j_prime_generators(arr):
        _require_zero(normal_form(g.element, "classic"), f"J' generator {g.family.value} not in J", g.element.format())
    for _ in range(3):
        x = random_pres(rng, arr)
        d = normal_form(x, "prime") - normal_form(x, "classic")
        _require_zero(d, "prime and classic normal forms differ", x.format())


def _suite_short_exact(arr: Arrangement, rng: random.Random) -> None:
    n = len(arr)
    if n == 0:
        return
    y = n - 1
    deleted = arr.deletion(y)
    restricted, rmap = arr.restriction(y)
    full, dr, rr = rank(arr), rank(deleted), rank(restricted)
    top = max(len(full), len(dr), len(rr) + 1)
    pad = lambda r: r + [0] * (top - len(r))
    full, dr, rr = pad(full), pad(dr), [0] + pad(rr)[: top - 1]
    if any(a != b + c for a, b, c in zip(full, dr, rr)):
        raise CaseFailure(f"rank {full} != {dr} + shifted {rr}")
    # alpha-images die under the boundary
    for _ in range(2):
        x = random_pres(rng, arr, avoid=(y,))
        b, _ = restriction_boundary(x)
        _require_zero(normal_form(b), "boundary of an alpha-image", x.format())
    # lifted restricted elements times (phi_Y) come back
    ty = arr.hyperplane_unit(y)
    for mono in basis(restricted):
        c = random_mw(rng, arr.field, 1) + MWElement.integer(arr.field, 1)
        target = PresElement.word(restricted, [restricted.hyperplane_unit(k) for k in mono], c)
        lift = PresElement.word(arr, [lift_unit(restricted.hyperplane_unit(k), arr, y) for k in mono] + [ty], c)
        b, _ = restriction_boundary(lift)
        _require_zero(normal_form(b) - normal_form(target), f"boundary misses {mono}", lift.format())
    for _ in range(2):
        v = random_pres(rng, restricted)
        lift = PresElement.zero(arr)
        for w, c in v.terms.items():
            lift = lift + PresElement.word(arr, [lift_unit(u, arr, y) for u in w] + [ty], c)
        b, _ = restriction_boundary(lift)
        _require_zero(normal_form(b) - normal_form(v), "boundary is not a left inverse", lift.format())


def _suite_psi_phi(arr: Arrangement, rng: random.Random) -> None:
    for mono in arr.nbc_sets:
        back = psi(phi(mono, arr))
        if back != ExtElement.monomial(mono):
            raise CaseFailure(f"psi(phi({mono})) = {back}")
    for mono in basis(arr):
        img = psi(phi(mono, arr))
        if psi(phi_element(img, arr)) != img:
            raise CaseFailure(f"phi(psi) not identity on the class of {mono}")
    for g in j_prime_generators(arr):
        if psi(g.element):
            raise CaseFailure(f"psi does not kill {g.family.value}", g.element.format())
    for _ in range(3):
        x = random_pres(rng, arr)
        nf = normal_form(x)
        collapsed = ExtElement({w: collapse(c) for w, c in nf.coords.items()})
        if collapsed != psi(x):
            raise CaseFailure(f"A_0 image of NF {collapsed} != psi {psi(x)}", x.format())


def _suite_rank_triple(arr: Arrangement, rng: random.Random) -> None:
    rec = rank(arr)
    nbc = rank_mod_L(arr)
    poin = arr.poincare_polynomial()
    if not (rec == nbc == poin):
        raise CaseFailure(f"recursion {rec}, nbc {nbc}, Poincare {poin}")
    for k in range(len(nbc)):
        if len(arr) <= 5 and not (rank_by_span(arr, k) == rank_by_span(arr, k, 2) == nbc[k]):
            raise CaseFailure(f"span rank in degree {k} differs from nbc count {nbc[k]}")


SUITES: dict[str, Callable[[Arrangement, random.Random], None]] = {
    "lem:tildediv": _suite_tildediv,
    "equiv": _suite_equiv,
    "short-exact": _suite_short_exact,
    "psi-phi": _suite_psi_phi,
    "rank-triple": _suite_rank_triple,
}

_FIELDS = (5, 7, 11)


def case_arrangement(seed: int) -> Arrangement:
    rng = random.Random(seed)
    q = _FIELDS[seed % len(_FIELDS)]
    dim = rng.choice((1, 2, 2, 3, 3))
    count = rng.randint(2, 5)
    return random_arrangement(seed, Field(q), dim, count)


@dataclass
class Failure:
    case: int
    seed: int
    arrangement: dict
    expression: str
    message: str
    minimized: dict | None = None


@dataclass
class VerifyReport:
    suite: str
    cases: int
    failures: list[Failure] = dc_field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> str:
        data = {
            "suite": self.suite,
            "cases": self.cases,
            "failures": [f.__dict__ for f in self.failures],
            "seconds": round(self.seconds, 3),
        }
        return json.dumps(data, sort_keys=True, indent=2)

    def to_text(self) -> str:
        lines = [f"suite {self.suite}: {self.cases} cases, {len(self.failures)} failures ({self.seconds:.2f}s)"]
        for f in self.failures:
            lines.append(f"  case {f.case} (seed {f.seed}): {f.message}")
            lines.append(f"    arrangement: {json.dumps(f.arrangement, sort_keys=True)}")
            if f.expression:
                lines.append(f"    expression: {f.expression}")
            if f.minimized is not None:
                lines.append(f"    minimized: {json.dumps(f.minimized, sort_keys=True)}")
        return "\n".join(lines)


def _fails(check, arr: Arrangement, seed: int) -> bool:
    try:
        check(arr, random.Random(seed))
    except (AssertionError, ArrangementError, ArithmeticError):
        return True
    return False


def minimize(check, arr: Arrangement, seed: int) -> Arrangement:
    """Greedy shrink: drop hyperplanes, then pull coefficients to 0 or 1."""
    changed = True
    while changed:
        changed = False
        for y in range(len(arr)):
            smaller = arr.deletion(y)
            if _fails(check, smaller, seed):
                arr, changed = smaller, True
                break
    for i in range(len(arr)):
        for j in range(arr.dim + 1):
            for v in (0, 1):
                raw = [list(h.coeffs) for h in arr.hyperplanes]
                if raw[i][j] == v:
                    continue
                raw[i][j] = arr.field(v)
                try:
                    cand = Arrangement.from_forms(arr.field, arr.dim, raw)
                except (ArrangementError, ZeroDivisionError):
                    continue
                if _fails(check, cand, seed):
                    arr = cand
    return arr


def run_suite(name: str, seeds=20, minimize_failures: bool = True) -> VerifyReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    check = SUITES[name]
    seed_list = list(range(seeds)) if isinstance(seeds, int) else list(seeds)
    report = VerifyReport(name, len(seed_list))
    start = time.perf_counter()
    for case, seed in enumerate(seed_list):
        arr = case_arrangement(seed)
        try:
            check(arr, random.Random(seed))
        except (AssertionError, ArrangementError, ArithmeticError) as exc:
            failure = Failure(case, seed, arr.to_json(), getattr(exc, "expression", ""), str(exc))
            if minimize_failures:
                failure.minimized = minimize(check, arr, seed).to_json()
            report.failures.append(failure)
    report.seconds = time.perf_counter() - start
    return report


def replay(name: str, arrangement: dict, seed: int) -> None:
    """Re-run one serialized case; raises on failure."""
    SUITES[name](Arrangement.from_json(arrangement), random.Random(seed))
