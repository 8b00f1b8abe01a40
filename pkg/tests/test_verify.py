import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from nctorus.basis import CoeffTable, riesz_expand, table_vector
from nctorus.field import Scalar
from nctorus.literals import parse_vector as V
from nctorus.verify import commutator, experiments, relations, structure
from nctorus.verify.report import (
    EXACT,
    FAIL,
    PASS,
    SAMPLED_NUMERIC,
    VARIANT,
    CheckResult,
    Report,
    validate_report_json,
)
from nctorus.verify.suite import ConfigError, SuiteConfig, all_lemma_ids, run_suite

FAM = (1, 1, 0)


def _table(entries):
    return CoeffTable({(FAM, r, s): Scalar.of(c) for (r, s), c in entries.items()})


def _plain(table):
    return {(r, s): str(c) for (_, r, s), c in table.items()}


# report ---------------------------------------------------------------------------------


def test_report_sorted_and_schema_valid():
    rep = Report([CheckResult("b", {"x": 2}, PASS), CheckResult("a", {"x": 1}, FAIL, ratio=0.5)])
    assert [r.lemma_id for r in rep] == ["a", "b"]
    validate_report_json(rep.to_json())
    assert not rep.ok and len(rep.exact_failures) == 1
    payload = json.loads(rep.to_json(timing=False))
    assert all(e["millis"] == 0 for e in payload)
    assert "2 checks, 1 exact failure(s)" in rep.to_markdown()


def test_sampled_numeric_failures_do_not_gate():
    rep = Report([CheckResult("x", {}, FAIL, SAMPLED_NUMERIC), CheckResult("y", {}, VARIANT, "diagnostic")])
    assert rep.ok


@pytest.mark.parametrize("payload", [
    {},
    [{"lemma_id": "a", "params": {}, "status": "maybe", "millis": 0}],
    [{"lemma_id": "a", "params": {}, "status": "pass"}],
])
def test_validate_rejects_malformed(payload):
    with pytest.raises(ValueError):
        validate_report_json(payload)


# individual checks and their negative controls -------------------------------------------


def test_chi_recursion_and_mutation():
    assert relations.check_chi_recursion(2).status == PASS
    bad = relations.check_chi_recursion(3, coefficient=2)
    assert bad.status == FAIL and bad.counterexample


def test_no_lower_terms_and_hypothesis_dropped():
    assert all(r.status == PASS for r in relations.check_xi_shift_no_lower_terms(2, 2, 2))
    dropped = relations.check_xi_shift_no_lower_terms(2, 1, 1, include_vpowers=True)
    assert any(r.status == FAIL for r in dropped)


def test_pure_u_epsilon_families():
    rng = random.Random(0)
    assert all(r.status == PASS for r in relations.check_xi_shift_pure_u(1, 3, 3, rng))
    flipped = relations.check_xi_shift_pure_u(1, 2, 2, random.Random(0), flip_sign=True)
    assert any(r.status == FAIL for r in flipped)


def test_shift_recursion_zero_class_and_control():
    res = relations.check_xi_shift_recursion(2, 2, 2)
    zero = [r for r in res if r.params.get("class") == "Zero" and r.lemma_id == "xi-shift-recursion"]
    assert zero and all(r.status == PASS for r in zero)
    corrected = [r for r in res if r.lemma_id == "xi-shift-recursion/corrected"]
    assert corrected and all(r.details["holds"] for r in corrected)
    mutated = relations.check_xi_shift_recursion(1, 1, 1, shift=2, corrected=False)
    assert any(r.status == FAIL for r in mutated if r.params.get("class") == "Zero")


def test_shift_recursion_fails_on_pure_v_edge_member():
    xi = V("v1")
    assert relations.has_pure_v_edge(xi) and not relations.has_pure_v_edge(V("u1 - u1^-1"))
    displayed, corrected = relations._shift_residuals(xi, "left", 1, 0, 3, True)
    assert not displayed.is_zero() and corrected.is_zero()


def test_xi_ilk_norms_and_control():
    res = commutator.check_xi_ilk(1, 1, 2)
    by_id = {}
    for r in res:
        by_id.setdefault(r.lemma_id, []).append(r)
    assert all(r.status == PASS for r in by_id["xi-ilk-norms"] + by_id["xi-ilk-orthogonality"])
    # the displayed recursion breaks only at index 1; the 2/3 variant holds everywhere
    failing = {r.params["index_case"] for r in by_id["xi-ilk-recursion"] if r.status == FAIL}
    assert failing == {"1"}
    assert all(r.details["holds"] for r in by_id["xi-ilk-recursion/corrected"])
    assert any(r.status == FAIL for r in commutator.check_xi_ilk(1, 0, 1, norm_offset=1))


def test_structure_checks_small():
    assert all(r.status == PASS for r in structure.check_complement_splitting(2))
    assert all(r.status in (PASS, "not-applicable") for r in structure.check_w1_decomposition(3))
    planted = structure.check_s_span_equality(2, plant_member=True)
    assert any(r.status == FAIL for r in planted)


# commutator map ----------------------------------------------------------------------------


def test_commutator_interior_example():
    beta = commutator.commutator_coefficients(_table({(2, 2): 1}))
    assert _plain(beta) == {(1, 2): "1", (3, 2): "1", (2, 1): "-1", (2, 3): "-1"}


def test_commutator_edge_coefficient():
    alpha = _table({(1, 2): 1})
    exact = riesz_expand(commutator.commutator_vector(table_vector(alpha)), 5)
    assert _plain(exact)[(0, 2)] == "2/3"
    assert _plain(commutator.commutator_coefficients(alpha, "displayed"))[(0, 2)] == "1"
    assert _plain(commutator.commutator_coefficients(alpha, "corrected")) == _plain(exact)


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_commutator_corrected_matches_expansion(seed):
    table = commutator.random_ilk_table(random.Random(seed))
    y = commutator.commutator_vector(table_vector(table))
    exact = riesz_expand(y, max(1, y.max_length()))
    assert dict(commutator.commutator_coefficients(table, "corrected").items()) == dict(exact.items())


def test_commutator_map_report():
    res = {r.lemma_id: r for r in commutator.check_commutator_map(10, random.Random(3))}
    assert res["commutator-map/corrected"].details["holds"]
    assert res["commutator-map/control"].status == PASS


# numeric experiments --------------------------------------------------------------------------


def test_aop_pure_normalizer_example():
    v1 = ((1, 0, 1),)
    r = experiments.aop_bound_experiment(1, 4, 0, g=v1, h=v1)
    assert r.ratio is not None and 0 <= r.ratio < float("inf")
    assert r.details["presentation_k"] == 0


def test_aop_zero_sample_rejected():
    import numpy as np

    G = np.eye(2, dtype=complex)
    assert experiments._ratio(G, G, np.zeros(2, dtype=complex), np.ones(2, dtype=complex)) is None


def test_envelope_decreases():
    assert abs(experiments.envelope(1) - 3 ** -0.5) < 1e-12
    assert abs(experiments.envelope(2) - 16 / 3) < 1e-12


def test_grading_prefilter_is_sound():
    rng = random.Random(11)
    for _ in range(6):
        g, h = experiments.sample_normalizer_word(rng), experiments.sample_normalizer_word(rng)
        if experiments.pairing_vanishes_by_grading(g, h, 1):
            r = experiments.aop_bound_experiment(1, 2, 0, g=g, h=h)
            assert r.details["operator_sup"] < 1e-9


# suite plumbing ----------------------------------------------------------------------------------


def test_single_lemma_config():
    rep = run_suite(SuiteConfig(lemmas=["chi-recursion"], lmax=4))
    assert rep.lemma_ids() == ["chi-recursion"] and len(rep) == 1 and rep.ok


def test_zero_tolerance_leaves_exact_entries_alone():
    lemmas = ["chi-recursion", "exact-vs-numeric"]
    loose = run_suite(SuiteConfig(lemmas=lemmas, lmax=3))
    strict = run_suite(SuiteConfig(lemmas=lemmas, lmax=3, tolerance=0.0))
    assert loose.by_id("chi-recursion")[0].status == strict.by_id("chi-recursion")[0].status == PASS
    assert all(r.mode == SAMPLED_NUMERIC for r in strict.by_id("exact-vs-numeric"))
    assert strict.ok


def test_report_deterministic():
    cfg = dict(lemmas=["commutator-map", "xi-ilk-tail-decay"], commutator_samples=5, tail_samples=4)
    a = run_suite(SuiteConfig(**cfg)).to_json(timing=False)
    b = run_suite(SuiteConfig(**cfg)).to_json(timing=False)
    assert a == b


@pytest.mark.parametrize("mapping", [
    {"truncation": 8},
    {"truncation": 0},
    {"lmax": 1},
    {"lemmas": ["no-such-check"]},
    {"seed": 1.5},
    {"bogus": 1},
])
def test_invalid_configs(mapping):
    with pytest.raises(ConfigError):
        SuiteConfig.from_mapping(mapping).validate()


def test_unsafe_truncation_lifts_cap():
    SuiteConfig.from_mapping({"truncation": 8, "unsafe_truncation": True}).validate()


def test_lemma_ids_listed():
    ids = all_lemma_ids()
    assert "chi-recursion" in ids and "aop-decay" in ids and ids == sorted(ids)
