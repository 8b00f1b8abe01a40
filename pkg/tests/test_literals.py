import pytest

from nctorus.field import Scalar
from nctorus.literals import ParseError, parse_scalar_expr, parse_vector, parse_word_literal
from nctorus.words import format_scaled_word


def test_expressions():
    assert parse_vector("chi1 * chi1") == parse_vector("chi2 + 4*<identity>")
    assert parse_scalar_expr("(1/2 + 3/2*s3)*d^-2") == (Scalar.of(1) / 2 + Scalar.sqrt3() * 3 / 2) * Scalar.d_power(-2)
    assert parse_scalar_expr("s3 * s3") == Scalar.of(3)
    assert parse_vector("u1 u1^-1") == parse_vector("1")


@pytest.mark.parametrize("text, column", [("u1 + * u2", 6), ("u3", 1), ("u1 )", 4), ("(u1", 4)])
def test_parse_errors_report_column(text, column):
    with pytest.raises(ParseError) as err:
        parse_vector(text)
    assert err.value.column == column
    assert f"column {column}" in str(err.value)


def test_word_literal_round_trip():
    for text in ("v1 u1", "u1 v1 u1 v1^-1", "u2^-3 v2 u1"):
        sw = parse_word_literal(text)
        assert parse_word_literal(format_scaled_word(sw)) == sw
