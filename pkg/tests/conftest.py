import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from nctorus.field import Scalar
from nctorus.words import reduce_letters

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

GOLDEN_THETA = (5 ** 0.5 - 1) / 2

small_ints = st.integers(min_value=-4, max_value=4)


@st.composite
def laurent_scalars(draw, max_terms=3, with_sqrt3=True):
    """Laurent polynomials in d over Q(sqrt 3) with small coefficients."""
    x = Scalar.of(0)
    for _ in range(draw(st.integers(0, max_terms))):
        c = Scalar.of(draw(small_ints))
        if with_sqrt3 and draw(st.booleans()):
            c = c + Scalar.sqrt3() * draw(small_ints)
        x = x + c * Scalar.d_power(draw(st.integers(-3, 3)))
    return x


@st.composite
def scalars(draw):
    """Elements of K: quotients of small Laurent polynomials."""
    num = draw(laurent_scalars())
    den = draw(laurent_scalars(max_terms=2))
    if den.is_zero():
        return num
    return num / den


@st.composite
def nonzero_scalars(draw):
    x = draw(scalars())
    return x if not x.is_zero() else Scalar.of(1)


letters = st.tuples(st.sampled_from((1, 2)), st.sampled_from(("u", "v")), st.sampled_from((1, -1)))


@st.composite
def words(draw, max_letters=6):
    return reduce_letters(draw(st.lists(letters, max_size=max_letters))).word
