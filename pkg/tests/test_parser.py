import pytest

from symtens.genmat import FreeElement
from symtens.parser import (
    COMMUTATIVE,
    WORD,
    Num,
    ParseError,
    Pow,
    Prod,
    Sum,
    Var,
    parse,
    parse_polynomial,
    parse_word,
    render,
)
from symtens.polyring import Context
from symtens.ringcore import ZZ

CORPUS = [
    "y1*y2 + y1",
    "x[1,1]^2 + x[2,1]^2",
    "3*x[1,1]^2*x[2,1] - x[1,2]",
    "(y1 + y2)^3 - 2*(y1 - 1)*y2",
    "-y1 + 4",
    "-(y1*y2)",
    "xi[1,1,2]*xi[2,2,1] - 7",
    "y1 - (y2 - y1)",
    "((y1))",
    "2*-y1",
    "(-y1)^2",
]

WORD_CORPUS = ["z1*z2 - z2*z1", "z1^3 + 2", "(z1 + z2)^2", "z2*(z1 - 3)*z2"]


def test_sum_of_product_structure():
    assert parse("y1*y2 + y1") == Sum(((1, Prod((Var("y", (1,)), Var("y", (2,))))), (1, Var("y", (1,)))))


def test_word_mode_commutator():
    f = parse_word("z1*z2 - z2*z1", ZZ)
    assert f == FreeElement.word(ZZ, (1, 2)) - FreeElement.word(ZZ, (2, 1))


def test_word_power_is_repetition():
    assert parse_word("z2^3", ZZ) == FreeElement.word(ZZ, (2, 2, 2))


def test_double_caret_error_position():
    with pytest.raises(ParseError) as exc:
        parse("y1^^2")
    assert (exc.value.line, exc.value.column) == (1, 4)


def test_error_position_on_second_line():
    with pytest.raises(ParseError) as exc:
        parse("y1 +\n  * y2")
    assert (exc.value.line, exc.value.column) == (2, 3)


@pytest.mark.parametrize(
    "text",
    ["", "y1 +", "(y1", "y1)", "x[1]", "x[1,1", "y", "q1", "y1^-2", "y1 y2", "3 ^"],
)
def test_syntax_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_index_bounds_checked():
    with pytest.raises(ParseError):
        parse("y3", n=2, m=2)
    with pytest.raises(ParseError):
        parse("x[3,1]", n=2, m=2)
    with pytest.raises(ParseError):
        parse("z0", WORD)
    with pytest.raises(ParseError):
        parse("xi[1,1,3]", n=2, m=1)


def test_namespace_by_mode():
    with pytest.raises(ParseError):
        parse("z1", COMMUTATIVE)
    with pytest.raises(ParseError):
        parse("y1", WORD)
    with pytest.raises(ParseError):
        parse("x[1,1]", WORD)


def test_whitespace_insignificant():
    assert parse(" y1 *\ty2\n+ 3 ") == parse("y1*y2+3")


@pytest.mark.parametrize("text", CORPUS)
def test_render_round_trip(text):
    ast = parse(text)
    assert parse(render(ast)) == ast


@pytest.mark.parametrize("text", WORD_CORPUS)
def test_render_round_trip_words(text):
    ast = parse(text, WORD)
    assert parse(render(ast), WORD) == ast


def test_pow_and_num_nodes():
    assert parse("y2^3") == Pow(Var("y", (2,)), 3)
    assert parse("12") == Num(12)


def test_polynomial_value():
    ctx = Context(ZZ, 2, 2)
    p = parse_polynomial("(y1 + y2)^2 - 2*y1*y2", ctx)
    assert p == ctx.y(1) ** 2 + ctx.y(2) ** 2


def test_rendered_polynomials_reparse():
    ctx = Context(ZZ, 2, 2)
    for text in CORPUS:
        p = parse_polynomial(text, ctx)
        assert parse_polynomial(str(p), ctx) == p
