"""Acceptance criteria 1-10, run against one default suite execution.

Each test prints a single ``criterion N: PASS|FAIL ...`` line.  Criteria that
fail do so because the identity as stated does not hold; the corrected
variants are reported next to them (see README and the report details).
"""

import json
import subprocess
import sys
import time

import pytest

from nctorus.verify.report import FAIL, PASS, Report
from nctorus.verify.suite import REGISTRY, SuiteConfig


@pytest.fixture(scope="session")
def default_run():
    """The full default suite, with wall time per registered check group."""
    cfg = SuiteConfig()
    cfg.validate()
    report, seconds = Report(), {}
    for spec in REGISTRY:
        t = time.perf_counter()
        report.extend(spec.runner(cfg))
        seconds[spec.name] = time.perf_counter() - t
    return cfg, report, seconds


def _announce(capsys, n, ok, text):
    with capsys.disabled():
        print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} {text}")


def _entries(report, *ids):
    return [r for r in report if r.lemma_id in ids]


def _summary(results):
    bad = [r for r in results if r.status == FAIL]
    names = sorted({r.lemma_id for r in bad})
    return f"{len(results) - len(bad)}/{len(results)} entries pass" + (f"; failing: {', '.join(names)}" if bad else "")


def _all_pass(results):
    return bool(results) and all(r.status == PASS for r in results)


def test_criterion_01_chi_recursion(default_run, capsys):
    cfg, report, seconds = default_run
    res = _entries(report, "chi-recursion", "chi-recursion/control")
    main = report.by_id("chi-recursion")[0]
    ok = _all_pass(res) and cfg.lmax >= 6 and main.details["identities_checked"] == 2 * cfg.lmax and seconds["chi"] < 30
    _announce(capsys, 1, ok, f"{_summary(res)}, lmax={cfg.lmax}, {seconds['chi']:.1f}s")
    assert ok


def test_criterion_02_word_orthonormality(default_run, capsys):
    _, report, seconds = default_run
    res = report.by_id("word-orthonormality")
    ok = _all_pass(res) and res[0].params.get("lmax", 4) >= 4 and seconds["words"] < 120
    _announce(capsys, 2, ok, f"{_summary(res)}, {seconds['words']:.1f}s")
    assert ok


def test_criterion_03_xi_relations(default_run, capsys):
    cfg, report, seconds = default_run
    ids = ("xi-shift-recursion", "xi-shift-no-lower-terms", "xi-shift-pure-u", "xi-chi-expansion")
    checks = _entries(report, *ids)
    controls = _entries(report, *(i + "/control" for i in ids))
    elapsed = sum(seconds[n] for n in ("shift", "no-lower", "pure-u", "expansion"))
    ok = (_all_pass(checks) and len(controls) == len(ids) and _all_pass(controls)
          and cfg.relation_lmax >= 3 and cfg.relation_box >= 3 and elapsed < 300)
    _announce(capsys, 3, ok, f"checks {_summary(checks)}; controls {_summary(controls)}; {elapsed:.1f}s")
    assert ok


def test_criterion_04_inner_products(default_run, capsys):
    _, report, seconds = default_run
    res = _entries(report, "xi-inner-products", "xi-inner-products/control")
    ls = {r.params.get("l") for r in report.by_id("xi-inner-products")}
    ok = _all_pass(res) and {1, 2, 3} <= ls
    _announce(capsys, 4, ok, f"{_summary(res)}, {seconds['inner']:.1f}s")
    assert ok


def test_criterion_05_xi_ilk(default_run, capsys):
    cfg, report, seconds = default_run
    res = _entries(report, "xi-ilk-norms", "xi-ilk-orthogonality", "xi-ilk-recursion", "xi-ilk-norms/control")
    box_ok = cfg.ilk_lmax >= 2 and cfg.ilk_kmax >= 2 and cfg.ilk_rmax >= 3
    ok = _all_pass(res) and box_ok
    _announce(capsys, 5, ok, f"{_summary(res)}, {seconds['ilk']:.1f}s")
    assert ok


def test_criterion_06_decomposition_and_gamma(default_run, capsys):
    cfg, report, seconds = default_run
    res = _entries(report, "w1-decomposition", "gamma-span-membership")
    gating = [r for r in res if r.status != "not-applicable"]
    ok = (_all_pass(gating) and cfg.decomposition_lmax >= 4 and cfg.gamma_total >= 3
          and all(r.details["holds"] for r in report.by_id("gamma-span-membership/bimodule-v")))
    _announce(capsys, 6, ok, f"{_summary(gating)}, {seconds['decomposition'] + seconds['gamma']:.1f}s")
    assert ok


def test_criterion_07_commutator_map(default_run, capsys):
    cfg, report, _ = default_run
    res = _entries(report, "commutator-map", "commutator-map/control")
    variants = report.by_id("xi-ilk-coefficient-identity")[0].details["variants"]
    sign_text = ", ".join(f"{name}: {v['failures']}/{v['checked']} failures" for name, v in sorted(variants.items()))
    corrected = report.by_id("commutator-map/corrected")[0].details
    ok = _all_pass(res) and cfg.commutator_samples >= 50 and len(variants) == 2
    _announce(capsys, 7, ok, f"{_summary(res)}; corrected edge variant holds={corrected['holds']}; "
                             f"sign variants [{sign_text}]")
    assert ok


def test_criterion_08_exact_vs_numeric(default_run, capsys):
    cfg, report, _ = default_run
    res = report.by_id("exact-vs-numeric")
    worst = max(r.details["max_relative_error"] for r in res)
    ok = _all_pass(res) and cfg.tolerance <= 1e-9 and abs(cfg.theta - (5 ** 0.5 - 1) / 2) < 1e-15
    _announce(capsys, 8, ok, f"{_summary(res)}, max relative error {worst:.2e}")
    assert ok


def test_criterion_09_aop_decay(default_run, capsys):
    cfg, report, seconds = default_run
    r = report.by_id("aop-decay")[0]
    d = r.details
    ok = (r.status == PASS and d["informative_pairs"] >= 20 and d["max_ratio_M2"] < d["max_ratio_M1"]
          and seconds["aop"] < 600)
    _announce(capsys, 9, ok, f"max ratio M=1 {d['max_ratio_M1']:.3e}, M=2 {d['max_ratio_M2']:.3e} over "
                             f"{d['informative_pairs']} pairs, {seconds['aop']:.1f}s")
    assert ok


def test_criterion_10_determinism(default_run, capsys, tmp_path):
    _, report, _ = default_run
    out = tmp_path / "second.json"
    proc = subprocess.run([sys.executable, "-m", "nctorus.cli", "verify", "--no-timing", "--out", str(out)],
                          capture_output=True, text=True, check=False)
    first = report.to_json(timing=False) + "\n"
    second = out.read_text(encoding="utf-8") if out.exists() else ""
    ok = proc.returncode in (0, 1) and first == second and len(json.loads(second)) == len(report)
    _announce(capsys, 10, ok, f"{len(report)} entries, byte-identical={first == second}, "
                              f"CLI exit {proc.returncode}")
    assert ok
