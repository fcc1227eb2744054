from fractions import Fraction

import pytest

from obstructa.errors import ParseError
from obstructa.rationals import Scalar, format_scalar, parse_scalar


def test_scalar_is_fraction():
    assert Scalar is Fraction


def test_parse_integer_and_fraction():
    assert parse_scalar("3") == Fraction(3)
    assert parse_scalar("-7") == Fraction(-7)
    assert parse_scalar("22/7") == Fraction(22, 7)
    assert parse_scalar("-1/3") == Fraction(-1, 3)


def test_parse_zero_forms():
    assert parse_scalar("0") == 0
    assert parse_scalar("-0") == 0


@pytest.mark.parametrize("bad", ["", "1.5", "1/0", "1/-2", "2/04", "+3",
                                 " 1", "1 ", "a", "1/2/3", "0x10"])
def test_parse_rejects_off_grammar(bad):
    with pytest.raises(ParseError):
        parse_scalar(bad)


def test_parse_error_carries_location():
    with pytest.raises(ParseError) as ei:
        parse_scalar("nope", line=4, column=9)
    assert ei.value.line == 4
    assert ei.value.column == 9
    assert str(ei.value).startswith("4:9:")


def test_parse_accepts_non_lowest_terms():
    # grammar only; canonical form is the document layer's business
    assert parse_scalar("2/4") == Fraction(1, 2)


def test_format_canonical():
    assert format_scalar(Fraction(1, 2)) == "1/2"
    assert format_scalar(Fraction(-3)) == "-3"
    assert format_scalar(Fraction(0)) == "0"
    assert format_scalar(Fraction(4, 2)) == "2"


def test_format_parse_roundtrip():
    for num in range(-8, 9):
        for den in range(1, 7):
            q = Fraction(num, den)
            assert parse_scalar(format_scalar(q)) == q
