"""Text syntax for units, Milnor-Witt elements and presentation elements.

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "·")? factor)*
    factor := atom ("^" int)?
    atom   := int | "[" scalar "]" | "<" scalar ">" | "eta" | "eps"
            | "(" affine form ")" | "(" expr ")" | "u(" scalar [";" index powers] ")"

Affine forms are written in ``x1..xN`` and must be a scalar multiple of a
member hyperplane or a nonzero constant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .arrangement import Arrangement, ArrangementError, Unit, format_affine, normalize
from .ktheory import MWElement, bracket_form, epsilon, eta, symbol
from .presentation import PresElement

__all__ = ["ParseError", "parse_expression", "parse_mw", "parse_unit", "parse_pres", "parse_monomial"]


class ParseError(ValueError):
    def __init__(self, message: str, pos: int | None = None, text: str = ""):
        self.pos = pos
        if pos is not None:
            message = f"{message} at position {pos}"
            if text:
                message += f"\n  {text}\n  {' ' * pos}^"
        super().__init__(message)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>eta|eps|u(?=\s*\()|x\d+|Y\d+)|(?P<op>[\[\]<>()+\-*·^;∧,]))"
)


@dataclass
class Tok:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad, text)
        kind = m.lastgroup
        toks.append(Tok(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(Tok("end", "", len(text)))
    return toks


# -- syntax tree ----------------------------------------------------------------


@dataclass
class Num:
    value: Fraction
    pos: int


@dataclass
class Sym:
    scalar: Fraction
    bracket: bool  # [a] if True, <a> otherwise
    pos: int


@dataclass
class Const:
    name: str  # eta | eps
    pos: int


@dataclass
class Form:
    const: Fraction
    linear: dict  # variable index (1-based) -> Fraction
    pos: int
    text: str


@dataclass
class ULit:
    scalar: Fraction
    exponents: dict  # hyperplane index (1-based) -> int
    pos: int


@dataclass
class Pow:
    base: object
    n: int
    pos: int


@dataclass
class Mul:
    factors: list
    pos: int


@dataclass
class Add:
    terms: list  # (sign, node)
    pos: int


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self, k: int = 0) -> Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self) -> Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: Tok | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.pos, self.text)

    def expect(self, text: str) -> Tok:
        t = self.peek()
        if t.text != text:
            self.error(f"expected {text!r}, found {t.text or 'end of input'!r}")
        return self.next()

    def parse(self):
        if self.peek().kind == "end":
            self.error("empty expression")
        node = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().text!r}")
        return node

    def expr(self):
        pos = self.peek().pos
        terms = []
        sign = 1
        if self.peek().text in "+-" and self.peek().kind == "op":
            sign = -1 if self.next().text == "-" else 1
        terms.append((sign, self.term()))
        while self.peek().kind == "op" and self.peek().text in ("+", "-"):
            sign = -1 if self.next().text == "-" else 1
            terms.append((sign, self.term()))
        return terms[0][1] if len(terms) == 1 and terms[0][0] == 1 else Add(terms, pos)

    def term(self):
        pos = self.peek().pos
        factors = [self.factor()]
        while True:
            t = self.peek()
            if t.kind == "op" and t.text in ("*", "·"):
                self.next()
            elif not (t.text in ("(", "[", "<") or t.kind == "name" and t.text in ("u", "eta", "eps")):
                break  # juxtaposition such as (x1)(x2) is a product
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Mul(factors, pos)

    def signed_int(self) -> int:
        neg = False
        if self.peek().text == "-":
            self.next()
            neg = True
        t = self.next()
        if t.kind != "num" or "/" in t.text:
            self.error("expected an integer exponent", t)
        return -int(t.text) if neg else int(t.text)

    def factor(self):
        base = self.atom()
        if self.peek().text == "^":
            pos = self.next().pos
            return Pow(base, self.signed_int(), pos)
        return base

    def scalar(self) -> Fraction:
        neg = False
        while self.peek().text in ("-", "+"):
            neg ^= self.next().text == "-"
        t = self.next()
        if t.kind != "num":
            self.error("expected a scalar", t)
        v = Fraction(t.text)
        return -v if neg else v

    def atom(self):
        t = self.peek()
        if t.kind == "num":
            self.next()
            return Num(Fraction(t.text), t.pos)
        if t.text in ("eta", "eps"):
            self.next()
            return Const(t.text, t.pos)
        if t.text in ("[", "<"):
            self.next()
            a = self.scalar()
            self.expect("]" if t.text == "[" else ">")
            return Sym(a, t.text == "[", t.pos)
        if t.text == "u":
            return self.unit_literal()
        if t.text == "(":
            return self.paren()
        self.error(f"unexpected {t.text or 'end of input'!r}")

    def unit_literal(self):
        start = self.next().pos
        self.expect("(")
        lam = self.scalar()
        exps: dict[int, int] = {}
        if self.peek().text == ";":
            self.next()
            while True:
                t = self.next()
                if t.kind != "num" or "/" in t.text:
                    self.error("expected a hyperplane index", t)
                e = 1
                if self.peek().text == "^":
                    self.next()
                    e = self.signed_int()
                exps[int(t.text)] = exps.get(int(t.text), 0) + e
                if self.peek().text != "*":
                    break
                self.next()
        self.expect(")")
        return ULit(lam, exps, start)

    def paren(self):
        open_tok = self.next()
        save = self.i
        form = self.try_form(open_tok)
        if form is not None:
            return form
        self.i = save
        node = self.expr()
        self.expect(")")
        return node

    def try_form(self, open_tok: Tok):
        """Affine form ``c0 + c1*x1 + ...``; None if the contents are not one."""
        const = Fraction(0)
        linear: dict[int, Fraction] = {}
        first = True
        while True:
            sign = 1
            t = self.peek()
            if t.text in ("+", "-") and t.kind == "op":
                sign = -1 if self.next().text == "-" else 1
            elif not first:
                break
            first = False
            t = self.peek()
            coef = Fraction(sign)
            if t.kind == "num":
                self.next()
                coef *= Fraction(t.text)
                if self.peek().text == "*" and self.peek(1).kind == "name" and self.peek(1).text.startswith("x"):
                    self.next()
                    t = self.peek()
                else:
                    const += coef
                    continue
            if t.kind == "name" and t.text.startswith("x"):
                self.next()
                k = int(t.text[1:])
                if k < 1:
                    self.error("variables are numbered from x1", t)
                linear[k] = linear.get(k, Fraction(0)) + coef
                continue
            return None
        if self.peek().text != ")":
            return None
        close = self.next()
        return Form(const, linear, open_tok.pos, self.text[open_tok.pos : close.pos + 1])


def parse_tree(text: str):
    return _Parser(text).parse()


# -- interpretation -------------------------------------------------------------


def _scalar(field, value: Fraction, pos: int, text: str):
    try:
        return field(value)
    except (ZeroDivisionError, ValueError) as exc:
        raise ParseError(f"scalar {value} is not in {field}: {exc}", pos, text) from None


def _form_unit(node: Form, arr: Arrangement, text: str) -> Unit:
    field = arr.field
    for k in node.linear:
        if k > arr.dim:
            raise ParseError(f"variable x{k} out of range in {node.text} (dimension {arr.dim})", node.pos, text)
    raw = [_scalar(field, node.const, node.pos, text)] + [
        _scalar(field, node.linear.get(k, Fraction(0)), node.pos, text) for k in range(1, arr.dim + 1)
    ]
    if not any(raw[1:]):
        if not raw[0]:
            raise ParseError(f"zero is not a unit: {node.text}", node.pos, text)
        return arr.constant_unit(raw[0])
    h, factor = normalize(raw)
    j = arr.index_of(h)
    if j is None:
        raise ParseError(
            f"unbound form {node.text}: {format_affine(raw)} is not a multiple of a hyperplane of the arrangement",
            node.pos,
            text,
        )
    return arr.hyperplane_unit(j, factor)


def _ulit_unit(node: ULit, arr: Arrangement, text: str) -> Unit:
    exps = [0] * len(arr)
    for k, e in node.exponents.items():
        if not 1 <= k <= len(arr):
            raise ParseError(f"hyperplane index {k} out of range (1..{len(arr)})", node.pos, text)
        exps[k - 1] += e
    lam = _scalar(arr.field, node.scalar, node.pos, text)
    if not lam:
        raise ParseError("unit scalar must be nonzero", node.pos, text)
    return Unit(lam, tuple(exps))


def _to_mw(node, field, text: str) -> MWElement:
    if isinstance(node, Num):
        if node.value.denominator != 1:
            raise ParseError("Milnor-Witt coefficients are integers; use [a] or <a> for scalars", node.pos, text)
        return MWElement.integer(field, int(node.value))
    if isinstance(node, Sym):
        a = _scalar(field, node.scalar, node.pos, text)
        if not a:
            raise ParseError("symbols need a nonzero scalar", node.pos, text)
        return symbol(a) if node.bracket else bracket_form(a)
    if isinstance(node, Const):
        return eta(field) if node.name == "eta" else epsilon(field)
    if isinstance(node, Pow):
        if node.n < 0:
            raise ParseError("negative powers of Milnor-Witt elements are not defined", node.pos, text)
        return _to_mw(node.base, field, text) ** node.n
    if isinstance(node, Mul):
        out = MWElement.integer(field, 1)
        for f in node.factors:
            out = out * _to_mw(f, field, text)
        return out
    if isinstance(node, Add):
        out = MWElement.zero(field)
        for sign, t in node.terms:
            v = _to_mw(t, field, text)
            out = out + v if sign > 0 else out - v
        return out
    raise ParseError("generators are not Milnor-Witt elements", node.pos, text)


def _to_unit(node, arr: Arrangement, text: str) -> Unit:
    if isinstance(node, Form):
        return _form_unit(node, arr, text)
    if isinstance(node, ULit):
        return _ulit_unit(node, arr, text)
    if isinstance(node, Num):
        if not node.value:
            raise ParseError("zero is not a unit", node.pos, text)
        return arr.constant_unit(_scalar(arr.field, node.value, node.pos, text))
    if isinstance(node, Pow):
        return _to_unit(node.base, arr, text) ** node.n
    if isinstance(node, Mul):
        out = arr.constant_unit(1)
        for f in node.factors:
            out = out * _to_unit(f, arr, text)
        return out
    if isinstance(node, Add) and len(node.terms) == 1:
        return _to_unit(node.terms[0][1], arr, text).scaled(node.terms[0][0])
    raise ParseError("expected a unit", node.pos, text)


def _is_generator(node) -> bool:
    if isinstance(node, (Form, ULit)):
        return True
    return isinstance(node, Pow) and _is_generator(node.base)


def _to_pres(node, arr: Arrangement, text: str) -> PresElement:
    if _is_generator(node):
        return PresElement.gen(arr, _to_unit(node, arr, text))
    if isinstance(node, (Num, Sym, Const)):
        return PresElement.scalar(arr, _to_mw(node, arr.field, text))
    if isinstance(node, Pow):
        if node.n < 0:
            raise ParseError("negative powers apply to units only", node.pos, text)
        base = _to_pres(node.base, arr, text)
        out = PresElement.scalar(arr, 1)
        for _ in range(node.n):
            out = out * base
        return out
    if isinstance(node, Mul):
        out = PresElement.scalar(arr, 1)
        for f in node.factors:
            out = out * _to_pres(f, arr, text)
        return out
    if isinstance(node, Add):
        out = PresElement.zero(arr)
        for sign, t in node.terms:
            v = _to_pres(t, arr, text)
            out = out + v if sign > 0 else out - v
        return out
    raise ParseError("cannot interpret expression", getattr(node, "pos", 0), text)


def parse_mw(text: str, field) -> MWElement:
    return _to_mw(parse_tree(text), field, text)


def parse_unit(text: str, arr: Arrangement) -> Unit:
    return _to_unit(parse_tree(text), arr, text)


def parse_pres(text: str, arr: Arrangement) -> PresElement:
    return _to_pres(parse_tree(text), arr, text)


def parse_expression(text: str, arr: Arrangement | None = None, kind: str = "pres", field=None):
    """Parse in context ``kind``: "pres", "mw" or "unit"."""
    if kind == "mw":
        return parse_mw(text, field if field is not None else arr.field)
    if arr is None:
        raise ValueError(f"parsing a {kind} expression needs an arrangement")
    if kind == "unit":
        return parse_unit(text, arr)
    if kind == "pres":
        return parse_pres(text, arr)
    raise ValueError(f"unknown expression kind {kind!r}")


def parse_monomial(text: str, arr: Arrangement) -> tuple[int, ...]:
    """``Y1^Y3`` (or ``1 3``/``1,3``) to a sorted 0-based index tuple."""
    idx = [int(m) for m in re.findall(r"\d+", text)]
    if re.sub(r"[\sYy\d^∧,]", "", text):
        raise ParseError(f"bad wedge monomial {text!r}")
    for k in idx:
        if not 1 <= k <= len(arr):
            raise ParseError(f"index {k} out of range (1..{len(arr)})")
    if len(set(idx)) != len(idx):
        raise ParseError(f"repeated index in {text!r}")
    return tuple(sorted(k - 1 for k in idx))
