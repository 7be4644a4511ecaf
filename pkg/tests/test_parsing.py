import pytest

from mwarrangements import GF, QQ, ParseError
from mwarrangements.ktheory import epsilon, eta, symbol
from mwarrangements.parsing import parse_expression, parse_monomial, parse_mw, parse_pres, parse_unit
from mwarrangements.presentation import PresElement, normal_form

from corpus import boolean, pencil, triangle


def test_word_of_generators():
    arr = boolean(2)
    x = parse_pres("(x1)*(x2)", arr)
    assert x == PresElement.word(arr, [arr.hyperplane_unit(0), arr.hyperplane_unit(1)]) or x.terms == PresElement.word(
        arr, [arr.hyperplane_unit(0), arr.hyperplane_unit(1)]
    ).terms


def test_mw_element():
    F = QQ
    x = parse_mw("eps*[2] + eta*[3]*[5]", F)
    assert x == epsilon(F) * symbol(F(2)) + eta(F) * symbol(F(3)) * symbol(F(5))
    assert parse_mw("<2>", F) == 1 + eta(F) * symbol(F(2))
    assert parse_mw("eta^2*[-1] + 2*eta", GF(7)) == 0


def test_scaled_form_and_constants():
    arr = pencil()
    u = parse_unit("(2*x1 + 2*x2)", arr)
    assert u == arr.hyperplane_unit(2, 2)
    assert parse_unit("(5)", arr) == arr.constant_unit(5)
    assert parse_unit("(x1)^2*(x2)^-1", arr).exponents == (2, -1, 0)
    assert parse_unit("u(3; 1^2 * 3)", arr) == arr.hyperplane_unit(0, 3, 2) * arr.hyperplane_unit(2)


def test_out_of_range_variable():
    with pytest.raises(ParseError, match="x3"):
        parse_pres("(x1 + x3)", boolean(2))


def test_unbound_form():
    with pytest.raises(ParseError, match=r"unbound form \(x1 - x2\)"):
        parse_pres("(x1 - x2)", pencil())


@pytest.mark.parametrize("text", ["(x1)*[", "[2", "(x1", "eta^x", "", "(x1) + + ", "3 @ 4"])
def test_syntax_errors_have_positions(text):
    with pytest.raises(ParseError) as info:
        parse_pres(text, pencil())
    assert info.value.pos is not None


def test_rational_coefficient_rejected_in_mw():
    with pytest.raises(ParseError):
        parse_mw("1/2*eta", QQ)


def test_kinds():
    arr = pencil()
    assert parse_expression("[2]", kind="mw", field=QQ) == symbol(QQ(2))
    assert parse_expression("(x1)", arr, kind="unit") == arr.hyperplane_unit(0)
    with pytest.raises(ValueError):
        parse_expression("(x1)", arr, kind="bogus")


@pytest.mark.parametrize("arr", [pencil(), triangle(GF(7)), boolean(3, GF(5))], ids=str)
def test_round_trip_printing(arr):
    texts = ["(x1)*(x2)", "(2*x1)*(x2)^-1 + eps*[3]*(x2)", "<3>*(x1)(x2) - eta*[2]", "(x2)^2*(x1)"]
    for text in texts:
        x = parse_pres(text, arr)
        again = parse_pres(x.format(), arr)
        assert again.terms == x.terms
        nf = normal_form(x)
        assert normal_form(parse_pres(str(nf), arr)) == nf


def test_monomials():
    arr = pencil()
    assert parse_monomial("Y1^Y3", arr) == (0, 2)
    assert parse_monomial("3 1", arr) == (0, 2)
    with pytest.raises(ParseError):
        parse_monomial("Y1^Y4", arr)
    with pytest.raises(ParseError):
        parse_monomial("Y1^Y1", arr)
