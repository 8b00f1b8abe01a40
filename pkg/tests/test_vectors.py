import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import GOLDEN_THETA, laurent_scalars, words
from nctorus.field import Scalar, conj, eval_numeric
from nctorus.literals import parse_vector
from nctorus.vectors import (
    GradedClass,
    Vector,
    ZERO_VECTOR,
    format_vector,
    inner,
    mul_vec,
    project_class,
    project_length,
    trace,
    vec_combine,
    vector_from_json,
    vector_to_json,
)
from nctorus.words import IDENTITY, adjoint, enumerate_words, multiply, word_length

V = parse_vector
d = Scalar.d_power(1)


@st.composite
def vectors(draw, max_terms=4):
    x = ZERO_VECTOR
    for _ in range(draw(st.integers(0, max_terms))):
        x = x + Vector.word(draw(words(max_letters=4)), draw(laurent_scalars(max_terms=2)))
    return x


def trace_form(x, y):
    """``tau(y^* x)`` by full expansion (independent of the coefficient-wise inner product)."""
    return trace(mul_vec(y.adjoint(), x))


def test_vec_combine_examples():
    assert vec_combine([1, -1], [V("u1"), V("u1")]).is_zero()
    x = vec_combine([2, 3], [V("u1"), V("u2")])
    assert dict(x.items()) == {V("u1").sorted_items()[0][0]: Scalar.of(2),
                               V("u2").sorted_items()[0][0]: Scalar.of(3)}
    assert vec_combine([d], [V("u1 v1")]) == V("d * u1 v1")


def test_mul_vec_examples():
    chi1 = V("u1 + u1^-1 + u2 + u2^-1")
    assert mul_vec(chi1, chi1) == V("chi2 + 4")
    x = V("u1 v1 + 3*u2")
    assert mul_vec(x, Vector.scalar(1)) == x
    assert mul_vec(V("u1 - u1^-1"), V("u1 + u1^-1")) == V("u1^2 - u1^-2")


def test_trace_examples():
    assert trace(Vector.scalar(1)) == Scalar.of(1)
    assert trace(V("u1 v1 u2")).is_zero()
    assert trace(V("chi1 * chi1")) == Scalar.of(4)


def test_inner_examples():
    assert inner(V("u1 v1"), V("u1 v1")) == Scalar.of(1)
    assert inner(V("u1"), V("u2")).is_zero()
    x = V("chi1 u1 chi1")
    assert inner(x, x) == trace_form(x, x)


def test_project_length_examples():
    assert project_length(V("chi1 * chi1"), 0) == Vector.scalar(4)
    assert project_length(V("chi1 u1"), 2) == V("u1^2 + u2 u1 + u2^-1 u1")
    assert project_length(V("u1"), 5).is_zero()


def test_project_class_examples():
    assert project_class(V("chi2"), GradedClass(2, "Zero")) == V("chi2")
    assert project_class(V("u1 v1^2 u2 + u1 u2"), GradedClass(4, "One")) == V("u1 v1^2 u2")
    assert project_class(V("v1^3"), GradedClass(3, "Two")).is_zero()
    with pytest.raises(ValueError):
        project_class(V("u1"), GradedClass(0, "OneBeta"))


@given(vectors(), vectors())
def test_inner_is_hermitian_and_matches_trace_form(x, y):
    assert inner(x, y) == conj(inner(y, x))
    assert inner(x, y) == trace_form(x, y)


@given(vectors())
def test_positivity_at_golden_theta(x):
    value = eval_numeric(inner(x, x), GOLDEN_THETA)
    assert abs(value.imag) <= 1e-9 * max(1.0, abs(value))
    if x.is_zero():
        assert value == 0
    else:
        assert value.real > 0


@given(words(max_letters=4), vectors(), vectors())
def test_left_multiplication_is_adjointable(a, x, y):
    aw = Vector.word(a)
    assert inner(mul_vec(aw, x), y) == inner(x, mul_vec(aw.adjoint(), y))


@given(vectors(), vectors())
def test_trace_property(x, y):
    assert trace(mul_vec(x, y)) == trace(mul_vec(y, x))


def test_free_null_moments():
    for l in range(1, 6):
        for w in enumerate_words(l):
            assert trace(Vector.word(w)).is_zero()


@given(vectors())
def test_length_grading(x):
    lengths = sorted({word_length(w) for w in x.words()})
    parts = [project_length(x, l) for l in lengths]
    total = ZERO_VECTOR
    for p in parts:
        assert project_length(p, word_length(next(iter(p.words())))) == p
        total = total + p
    assert total == x
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            assert inner(parts[i], parts[j]).is_zero()


@given(vectors())
def test_parseval(x):
    expected = Scalar.of(0)
    for _, c in x.items():
        expected = expected + conj(c) * c
    assert inner(x, x) == expected


@given(vectors())
def test_text_and_json_round_trip(x):
    assert V(format_vector(x)) == x
    assert vector_from_json(vector_to_json(x)) == x


def test_adjoint_of_word_vector():
    w = V("u1 v1").sorted_items()[0][0]
    a = adjoint(w)
    assert Vector.word(w).adjoint() == Vector.word(a.word, a.coeff)
    assert multiply(w, a.word).word == IDENTITY
