"""Exact scalar type and its text form.

Scalar is fractions.Fraction.  The whole engine is float-free: every
coefficient that enters or leaves is an exact rational, and the textual
grammar below is the only serialization.

Grammar:  -?[0-9]+(/[1-9][0-9]*)?
The denominator, when present, is positive and the printed form is always
normalized (gcd 1, sign on the numerator), so parse(format(q)) == q and
format(parse(s)) is the canonical spelling of s.
"""

from __future__ import annotations

import re
from fractions import Fraction

from obstructa.errors import ParseError

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^-?[0-9]+(/[1-9][0-9]*)?$")


def parse_scalar(text: str, line: int = 0, column: int = 0) -> Scalar:
    """Parse the exact-rational grammar; reject anything else.

    Floats, whitespace padding, '+' signs and zero denominators are all
    rejected with kind="rational" so format errors stay distinguishable
    from structural ones.
    """
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ParseError(f"not a rational literal: {text!r}",
                         line=line, column=column, kind="rational")
    if "/" in text:
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_scalar(q: Scalar) -> str:
    """Canonical spelling: '3', '-2', '1/3', '-5/7'."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
