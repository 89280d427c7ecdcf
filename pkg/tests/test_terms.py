import pytest

from catalan_semiring.errors import ParseError
from catalan_semiring.terms import (
    Identity,
    Power,
    Product,
    Sum,
    Var,
    format_term,
    normalize,
    parse_identity,
    parse_term,
    variables_of,
)

x, y = Var("x"), Var("y")


def test_parse_eq2_text():
    ident = parse_identity("x^2 y^2 = x^3 y^2 + x^2 y^3")
    assert ident.lhs == Product((Power(x, 2), Power(y, 2)))
    assert ident.rhs == Sum((Product((Power(x, 3), Power(y, 2))), Product((Power(x, 2), Power(y, 3)))))
    assert ident.variables == ("x", "y")
    assert not ident.multiplicative_only


@pytest.mark.parametrize(
    "text,expected",
    [
        ("x", x),
        ("x^1", x),
        ("x*y", Product((x, y))),
        ("(x y) z", Product((x, y, Var("z")))),
        ("(x^2)^3", Power(x, 6)),
        ("x (y + x)", Product((x, Sum((y, x))))),
        ("((x))", x),
    ],
)
def test_parse_terms(text, expected):
    assert parse_term(text) == expected


@pytest.mark.parametrize("text", ["", "x^0", "x +", "x = y = z", "x ^ y", "2x", "(x", "x)"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        if "=" in text:
            parse_identity(text)
        else:
            parse_term(text)


def test_roundtrip_format():
    for text in ["x^2 y^2", "x^3 y^2 + x^2 y^3", "x (x + y)^2", "(x y)^3"]:
        t = parse_term(text)
        assert parse_term(format_term(t)) == t


def test_normalize_flattens():
    t = Sum((Sum((x, y)), Product((Product((x, y)), x))))
    assert normalize(t) == Sum((x, y, Product((x, y, x))))


def test_identity_variables():
    assert variables_of(parse_term("y x y")) == ["y", "x"]
    ident = parse_identity("x = x")
    assert ident.multiplicative_only and ident.variables == ("x",)
    with pytest.raises(ValueError):
        Identity(x, y, ("x",))
    with pytest.raises(ValueError):
        Power(x, 0)
