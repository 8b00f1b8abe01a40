import cmath
import math

import pytest
from hypothesis import given

from conftest import GOLDEN_THETA, nonzero_scalars, scalars
from nctorus.field import D, ONE, ZERO, PoleError, Scalar, conj, eval_numeric, format_scalar, parse_scalar

d = D
s3 = Scalar.sqrt3()


def test_addition_of_d_and_inverse():
    x = d + d ** -1
    assert x == (d ** 2 + 1) / d
    assert x.den == Scalar.of(1).den
    assert format_scalar(x) == "d + d^-1"


def test_reduction_to_lowest_terms():
    assert (d - 1) / (d - 1) == ONE
    assert ((d - 1) / (d - 1)).num == ONE.num


def test_inverse_cancellation():
    g = Scalar.of(2) / (d ** -1 - d)
    assert g * (d ** -1 - d) == Scalar.of(2)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_canonical_denominator_is_monic_at_exponent_zero():
    x = Scalar.of(3) / (d ** 2 * 2 - d ** 4 * 6)
    assert x.den.min_exp() == 0
    assert x.den.leading().is_one()


def test_conj_examples():
    assert conj(d ** 2) == d ** -2
    assert conj(3 + s3) == 3 + s3
    assert conj((1 + d) / (1 - d)) == (1 + d ** -1) / (1 - d ** -1)


def test_numeric_examples():
    assert abs(eval_numeric(d, 0.25) - 1j) < 1e-15
    assert eval_numeric(Scalar.of(4), 0.123) == 4
    x = Scalar.of(2) / (d ** -1 - d)
    q = cmath.exp(2j * math.pi * GOLDEN_THETA)
    expected = 2 / (1 / q - q)
    assert abs(eval_numeric(x, GOLDEN_THETA) - expected) <= 1e-13 * abs(expected)


def test_pole_is_reported():
    with pytest.raises(PoleError):
        eval_numeric(ONE / (d - 1), 0.0)


@given(scalars(), scalars(), scalars())
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x - x == ZERO


@given(nonzero_scalars())
def test_inverses(x):
    assert x * x.inverse() == ONE
    assert (ONE / x) * x == ONE


@given(scalars(), scalars())
def test_conj_is_involutive_homomorphism(x, y):
    assert conj(conj(x)) == x
    assert conj(x * y) == conj(x) * conj(y)
    assert conj(x + y) == conj(x) + conj(y)


@given(scalars(), scalars())
def test_equality_is_representation_equality(x, y):
    assert (x == y) == ((x.num, x.den) == (y.num, y.den))
    if x == y:
        assert hash(x) == hash(y)


@given(scalars(), scalars())
def test_eval_numeric_is_a_homomorphism(x, y):
    theta = GOLDEN_THETA
    try:
        ex, ey = eval_numeric(x, theta), eval_numeric(y, theta)
        ep, es = eval_numeric(x * y, theta), eval_numeric(x + y, theta)
    except PoleError:
        return
    scale = max(1.0, abs(ex) * abs(ey))
    assert abs(ep - ex * ey) <= 1e-12 * scale
    assert abs(es - (ex + ey)) <= 1e-12 * max(1.0, abs(ex) + abs(ey))


@given(scalars())
def test_text_form_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x
