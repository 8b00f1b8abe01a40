import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import letters, words
from nctorus.field import Scalar
from nctorus.words import (
    IDENTITY,
    Word,
    adjoint,
    enumerate_words,
    format_scaled_word,
    format_word,
    grade,
    length,
    letters_of,
    monomial,
    multiply,
    parse_word,
    reduce_letters,
    uv_exponent_counts,
)

d = Scalar.d_power(1)


def oracle_reduce(letter_list):
    """Independent rewriting: sort each same-factor run into u^k v^l, then cancel empty runs.

    Moving v^e right past u^f costs d^(-e f) (from u v = d v u).
    """
    runs = []  # [factor, k, l, phase]
    phase = 0
    for f, g, e in letter_list:
        if runs and runs[-1][0] == f:
            run = runs[-1]
        else:
            runs.append([f, 0, 0])
            run = runs[-1]
        if g == "u":
            phase -= run[2] * e
            run[1] += e
        else:
            run[2] += e
        # an emptied run lets its neighbours meet
        while runs and runs[-1][1] == 0 and runs[-1][2] == 0:
            runs.pop()
    return phase, tuple((f, k, l) for f, k, l in runs)


def oracle_word(letter_list):
    p, blocks = oracle_reduce(letter_list)
    return d ** p, blocks


@pytest.mark.parametrize("text, coeff, blocks", [
    ([(1, "v", 1), (1, "u", 1)], d ** -1, ((1, 1, 1),)),
    ([(1, "u", 1), (1, "u", -1)], Scalar.of(1), ()),
    ([(1, "u", 1), (1, "v", 1), (1, "u", 1), (1, "v", -1)], d ** -1, ((1, 2, 0),)),
])
def test_reduce_letters_examples(text, coeff, blocks):
    sw = reduce_letters(text)
    assert sw.coeff == coeff
    assert tuple(sw.word) == blocks


def test_multiply_examples():
    u1v1 = parse_word("u1 v1").word
    sw = multiply(u1v1, parse_word("u1 v1^-1").word)
    assert (sw.coeff, format_word(sw.word)) == (d ** -1, "u1^2")
    sw = multiply(u1v1, parse_word("u2").word)
    assert (sw.coeff, format_word(sw.word)) == (Scalar.of(1), "u1 v1 u2")


def test_adjoint_examples():
    sw = adjoint(parse_word("u1 v1").word)
    assert sw.coeff == d ** -1 and format_word(sw.word) == "u1^-1 v1^-1"
    assert sw == reduce_letters([(1, "v", -1), (1, "u", -1)])
    sw = adjoint(parse_word("u1").word)
    assert sw.coeff == Scalar.of(1) and format_word(sw.word) == "u1^-1"
    assert adjoint(IDENTITY) == (Scalar.of(1), IDENTITY)


@pytest.mark.parametrize("text, n", [("u1 v1^2 u2", 4), ("u1^3 v1^-2", 5)])
def test_length_examples(text, n):
    assert length(parse_word(text).word) == n
    assert length(IDENTITY) == 0


@pytest.mark.parametrize("text, expected", [
    ("u1 u2^-1", (2, "Zero")),
    ("u1 v1^2 u2", (4, "One")),
    ("v1 u2 v2", (3, "Two")),
])
def test_grade_examples(text, expected):
    assert grade(parse_word(text).word) == expected
    assert grade(IDENTITY)[0] == 0


def test_exponent_counts():
    w = multiply(monomial(1, 2, 3), monomial(2, 2, 3)).word
    assert uv_exponent_counts(w) == (4, 6)
    assert uv_exponent_counts(IDENTITY) == (0, 0)
    assert uv_exponent_counts(parse_word("u1 v2^-1").word) == (1, 1)


def test_word_counts():
    assert [format_word(w) for w in enumerate_words(1, "Zero")] == ["u1^-1", "u1", "u2^-1", "u2"]
    assert sorted(format_word(w) for w in enumerate_words(1, "One")) == ["v1", "v1^-1", "v2", "v2^-1"]
    for l in range(1, 6):
        assert len(enumerate_words(l, "Zero")) == 4 * 3 ** (l - 1)


@given(st.lists(letters, max_size=10))
def test_reduce_letters_matches_oracle(ls):
    sw = reduce_letters(ls)
    coeff, blocks = oracle_word(ls)
    assert sw.coeff == coeff
    assert tuple(sw.word) == blocks


@given(words(), words(), words())
def test_associativity_with_phases(x, y, z):
    xy = multiply(x, y)
    left = multiply(xy.word, z)
    yz = multiply(y, z)
    right = multiply(x, yz.word)
    assert left.word == right.word
    assert xy.coeff * left.coeff == yz.coeff * right.coeff


@given(words(), words())
def test_multiply_matches_letter_concatenation(x, y):
    sw = multiply(x, y)
    coeff, blocks = oracle_word(letters_of(x) + letters_of(y))
    assert (sw.coeff, tuple(sw.word)) == (coeff, blocks)
    assert length(sw.word) <= length(x) + length(y)
    if x and y and x[-1][0] != y[0][0]:
        assert length(sw.word) == length(x) + length(y)


@given(words())
def test_normal_form_idempotence(x):
    assert multiply(IDENTITY, x) == (Scalar.of(1), x)
    assert reduce_letters(letters_of(x)) == (Scalar.of(1), x)
    a = adjoint(x)
    again = adjoint(a.word)
    # (c z)^* = conj(c) z^*, so applying the adjoint twice gives back (1, x)
    assert again.word == x and a.coeff.conj() * again.coeff == Scalar.of(1)


def test_unitarity_on_enumerated_words():
    for l in range(6):
        for w in enumerate_words(l):
            a = adjoint(w)
            prod = multiply(w, a.word)
            assert prod.word == IDENTITY
            assert prod.coeff * a.coeff == Scalar.of(1)


@given(words(), words())
def test_product_coefficient_is_a_single_power_of_d(x, y):
    c = multiply(x, y).coeff
    assert c.den.is_one() and c.num.is_monomial() and c.num.leading().is_one()


@given(words())
def test_word_text_round_trip(x):
    sw = parse_word(format_word(x))
    assert sw == (Scalar.of(1), x)
    assert parse_word(format_scaled_word(sw).split(" * ", 1)[1]).word == x


def test_word_ordering_is_length_then_lexicographic():
    ws = sorted([parse_word(t).word for t in ("u1 u2", "v1", "u1", "u2^-1 v2")], key=Word.sort_key)
    assert [length(w) for w in ws] == sorted(length(w) for w in ws)
