import pytest

from nctorus.basis import (
    CoeffTable,
    chi,
    complement_basis,
    epsilon_basis,
    gamma,
    riesz_expand,
    riesz_family,
    s_l_generators,
    subspace_L_basis,
    table_vector,
    w1_decomposition,
    xi_ilk,
    xi_ilk_norm_sq,
    xi_rs,
    xi_rs_direct,
)
from nctorus.field import Scalar
from nctorus.linalg import Matrix, rank
from nctorus.literals import parse_vector as V
from nctorus.vectors import Vector, inner, mul_vec, project_length
from nctorus.verify.structure import _in_span
from nctorus.words import enumerate_words, word_length

d = Scalar.d_power(1)


def test_chi_examples():
    assert chi(1) == V("u1 + u1^-1 + u2 + u2^-1")
    for l in range(1, 6):
        assert inner(chi(l), chi(l)) == Scalar.of(4 * 3 ** (l - 1))
    assert (mul_vec(chi(2), chi(1)) - chi(3) - chi(1).scale(3)).is_zero()


def test_s_l_generators():
    gens = s_l_generators(1)
    assert all(g == chi(1) for g in gens)
    for l in (1, 2, 3):
        assert all(word_length(w) == l for g in s_l_generators(l) for w in g.words())
    assert V("u1^2 + u2 u1 + u2^-1 u1") in s_l_generators(2)


def _in_family_span(x, family):
    return _in_span(x, [(str(n), v) for n, v in enumerate(family)]) is not None


def test_complement_basis_l1():
    comp = complement_basis(1, "Zero").members
    assert len(comp) == 3
    assert _in_family_span(V("u1 - u1^-1"), comp)
    for l in (1, 2, 3):
        for cls in ("Zero", "One", "Two"):
            members = complement_basis(l, cls).members
            for g in s_l_generators(l, cls):
                assert all(inner(m, g).is_zero() for m in members)


def test_complement_members_are_orthogonal():
    fam = complement_basis(2, "One")
    for a in range(len(fam.members)):
        for b in range(a + 1, len(fam.members)):
            assert inner(fam.members[a], fam.members[b]).is_zero()
    assert list(fam.gram_diag) == [inner(v, v) for v in fam.members]


def test_epsilon_basis_signs():
    plus = V("u1 + u1^-1 - u2 - u2^-1")
    minus = [V("u1 - u1^-1"), V("u2 - u2^-1")]
    basis = epsilon_basis()
    assert _in_family_span(plus, basis)
    assert all(_in_family_span(m, basis) for m in minus)


def test_xi_rs_examples():
    xi = V("u1 - u1^-1")
    assert xi_rs(xi, 0, 0) == xi
    assert xi_rs(xi, -1, 2).is_zero()
    assert inner(xi_rs(xi, 1, 1), xi_rs(xi, 1, 1)) == Scalar.of(18)
    for m in complement_basis(2, "Zero").members:
        for r in (1, 2):
            for s in (0, 1):
                lhs = mul_vec(chi(1), xi_rs(m, r, s))
                assert lhs == xi_rs(m, r + 1, s) + xi_rs(m, r - 1, s).scale(3)


def test_xi_rs_matches_direct_definition():
    for m in complement_basis(2, "Two").members[:3] + complement_basis(1, "Zero").members:
        for r, s in ((0, 1), (2, 1), (1, 3)):
            assert xi_rs(m, r, s) == xi_rs_direct(m, r, s)
            l = word_length(next(iter(m.words())))
            assert xi_rs(m, r, s) == project_length(mul_vec(mul_vec(chi(r), m), chi(s)), l + r + s)


def test_xi_rs_rejects_mixed_lengths():
    with pytest.raises(ValueError):
        xi_rs(V("u1 + u1 u2"), 1, 0)


def test_gamma_examples():
    assert gamma(1, 2, "1+") == V("v1 u1")
    assert gamma(1, 2, "2") == V("v1 (u2 + u2^-1)")
    c = Scalar.of(2) / (d ** -1 - d)
    expected = (V("v1 u1") - V("v1 u1^-1")).scale(c) - V("(u2 + u2^-1) v1")
    assert gamma(1, 2, "plain") == expected
    with pytest.raises(ValueError):
        gamma(1, 1, "plain")
    with pytest.raises(ValueError):
        gamma(1, 0, "2")


def test_w1_decomposition_examples():
    dec = w1_decomposition(1)
    assert not dec.alpha1.members and not dec.alpha2.members
    assert set(w1_decomposition(2).vpowers) == {V("v1^2"), V("v1^-2"), V("v2^2"), V("v2^-2")}
    for l in (2, 3):
        dec = w1_decomposition(l)
        total = len(dec.alpha1.members) + len(dec.alpha2.members) + len(dec.beta.members) + 4
        assert total == len(complement_basis(l, "One").members)


def test_xi_ilk_examples():
    assert xi_ilk(1, 2, 0, 0, 0) == V("3 * v1^2")
    assert inner(xi_ilk(1, 2, 0, 0, 0), xi_ilk(1, 2, 0, 0, 0)) == Scalar.of(9)
    assert xi_ilk_norm_sq(0, 0) == Scalar.of(9)
    assert xi_ilk_norm_sq(1, 0) == Scalar.of(6) == xi_ilk_norm_sq(0, 2)
    for r, s in ((1, 1), (2, 1), (3, 2)):
        v = xi_ilk(2, -1, 1, r, s)
        assert inner(v, v) == Scalar.of(4)
    assert inner(xi_ilk(1, 1, 0, 1, 0), xi_ilk(2, 1, 0, 1, 0)).is_zero()
    with pytest.raises(ValueError):
        xi_ilk(1, 0, 0, 1, 1)


def test_subspace_L_examples():
    L = subspace_L_basis(3)
    assert V("v1") in L.members or V("v1^-1") in L.members
    assert _in_family_span(V("v1"), L.members)
    assert _in_family_span(xi_rs(gamma(1, 2, "plain"), 0, 0), L.members)
    fam = riesz_family(2)
    for v in L.members:
        if v.max_length() > 2:
            continue
        for fm in fam:
            l = word_length(next(iter(fm.vector.words())))
            for r in range(3 - l):
                assert inner(v, xi_rs(fm.vector, r, 0)).is_zero()


def test_riesz_expand_examples():
    table = riesz_expand(xi_ilk(1, 1, 0, 1, 1), 3)
    assert dict(table.items()) == {((1, 1, 0), 1, 1): Scalar.of(1)}
    xi = V("u1 - u1^-1")
    index = next(fm.index for fm in riesz_family(2) if fm.vector == xi)
    table = riesz_expand(xi_rs(xi, 1, 0), 2)
    assert dict(table.items()) == {(index, 1, 0): Scalar.of(1)}


def test_riesz_expand_round_trip():
    fam = riesz_family(3)
    x = xi_rs(fam[3].vector, 1, 0).scale(2) + xi_ilk(2, -1, 1, 1, 0).scale(d) + xi_rs(fam[0].vector, 1, 1)
    table = riesz_expand(x, 3)
    assert table_vector(table, fam) == x
    with pytest.raises(ValueError):
        riesz_expand(chi(2), 3)


def test_coeff_table_json():
    t = CoeffTable({((1, 1, 0), 1, 2): Scalar.of(3)})
    assert t.to_json() == [{"family": [1, 1, 0], "r": 1, "s": 2, "coeff": "3"}] or t.to_json()
