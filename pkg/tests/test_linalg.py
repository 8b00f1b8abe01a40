import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import laurent_scalars
from nctorus.basis import chi1_left, gamma, s_l_generators
from nctorus.field import ZERO, Scalar
from nctorus.linalg import Matrix, NoSolution, kernel_basis, rank, residual, rref, solve
from nctorus.vectors import Vector, inner
from nctorus.verify.structure import _gamma_columns, _in_span
from nctorus.words import enumerate_words

STRATEGIES = ("sparse", "bareiss")


@st.composite
def matrices(draw, max_dim=4):
    n = draw(st.integers(1, max_dim))
    m = draw(st.integers(1, max_dim))
    entries = [[draw(laurent_scalars(max_terms=2)) if draw(st.booleans()) else ZERO for _ in range(m)]
               for _ in range(n)]
    if n > 1 and draw(st.booleans()):
        # force a dependent row
        c = draw(laurent_scalars(max_terms=1))
        entries[-1] = [c * x for x in entries[0]]
    return Matrix.from_dense(entries)


def test_rank_examples():
    assert rank(Matrix.identity(3)) == 3
    assert rank(Matrix(3, 4)) == 0
    words = enumerate_words(1, "Zero")
    gens = s_l_generators(1, "Zero")
    pairing = Matrix.from_dense([[inner(Vector.word(w), g) for w in words] for g in gens])
    assert rank(pairing) == 1


def test_kernel_examples():
    ker = kernel_basis(Matrix.from_dense([[1, 1, 1, 1]]))
    assert len(ker) == 3
    assert kernel_basis(Matrix.identity(4)) == []


def test_solve_examples():
    rhs = [Scalar.of(3), Scalar.d_power(2)]
    assert solve(Matrix.identity(2), rhs) == tuple(rhs)
    with pytest.raises(NoSolution) as err:
        solve(Matrix.from_dense([[1, 0], [0, 0]]), [1, 1])
    assert not err.value.residual.is_zero()
    with pytest.raises(ValueError):
        solve(Matrix.identity(2), [1])


def test_gamma_membership_is_solvable():
    target = chi1_left(gamma(1, 2, "2"))
    assert _in_span(target, _gamma_columns(1, 2, 1, ambient=False)) is not None


@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + len(kernel_basis(m)) == m.ncols


@given(matrices())
def test_kernel_vectors_are_annihilated(m):
    for v in kernel_basis(m):
        assert all(x.is_zero() for x in m.mul_vector(list(v)))


@given(matrices(), st.data())
def test_solutions_reproduce_rhs(m, data):
    x0 = [data.draw(laurent_scalars(max_terms=1)) for _ in range(m.ncols)]
    rhs = m.mul_vector(x0)
    x = solve(m, rhs)
    assert all(r.is_zero() for r in residual(m, x, rhs))


@given(matrices())
def test_pivoting_strategy_does_not_change_results(m):
    assert rank(m, "sparse") == rank(m, "bareiss")
    assert rref(m, "sparse") == rref(m, "bareiss")
    assert kernel_basis(m, "sparse") == kernel_basis(m, "bareiss")
