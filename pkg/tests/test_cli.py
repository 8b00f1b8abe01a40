import json
import subprocess
import sys

import pytest

from nctorus.cli import EXIT_CHECK_FAILED, EXIT_INVALID, EXIT_OK, build_parser, main, resolve_settings
from nctorus.literals import parse_vector
from nctorus.verify.report import validate_report_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("literal, expected", [
    ("v1 u1", "d^-1 * u1 v1"),
    ("u1 u1^-1", "1 * <identity>"),
    ("u1 v1 u1 v1^-1", "d^-1 * u1^2"),
])
def test_nf_golden(capsys, literal, expected):
    code, out, _ = run(capsys, "nf", literal)
    assert code == EXIT_OK and out.strip() == expected


@pytest.mark.parametrize("literal", ["v1 u1", "u2^-3 v1 u1^2 v2 v2", "v2 u2 v1 u1"])
def test_nf_round_trip(capsys, literal):
    _, first, _ = run(capsys, "nf", literal)
    code, second, _ = run(capsys, "nf", first.strip())
    assert code == EXIT_OK and second == first
    assert parse_vector(first.strip()) == parse_vector(literal)


def test_nf_parse_error_reports_column(capsys):
    code, _, err = run(capsys, "nf", "u1 )")
    assert code == EXIT_INVALID and "column 4" in err


def test_trace_golden(capsys):
    assert run(capsys, "trace", "1*<identity> + 2*u1")[1].strip() == "1"
    assert run(capsys, "trace", "--expr", "chi1*chi1")[1].strip() == "4"


def test_trace_with_theta(capsys):
    code, out, _ = run(capsys, "trace", "--expr", "chi1*chi1", "--theta", "0.5")
    lines = out.split()
    assert code == EXIT_OK and lines[0] == "4" and complex(lines[1]) == 4


def test_inner_golden(capsys):
    assert run(capsys, "inner", "u1 v1")[1].strip() == "1"
    assert run(capsys, "inner", "u1 v1", "d * u1 v1")[1].strip() == "d^-1"
    assert run(capsys, "inner", "--expr", "u1", "--expr", "u2")[1].strip() == "0"
    assert run(capsys, "inner", "a", "b", "c")[0] == EXIT_INVALID


def test_verify_single_lemma(capsys):
    code, out, _ = run(capsys, "verify", "--lemma", "chi-recursion", "--lmax", "6")
    payload = json.loads(out)
    validate_report_json(payload)
    assert code == EXIT_OK and len(payload) == 1 and payload[0]["lemma_id"] == "chi-recursion"
    assert payload[0]["status"] == "pass"


def test_verify_markdown(capsys):
    code, out, _ = run(capsys, "verify", "--lemma", "chi-recursion", "--format", "markdown")
    assert code == EXIT_OK
    assert out.startswith("| lemma_id |") and "| chi-recursion |" in out


def test_verify_exit_1_on_check_failure(capsys, tmp_path):
    # the displayed coefficient recursion fails at index 1 (see README)
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "--lemma", "xi-ilk-recursion", "--out", str(out))
    payload = json.loads(out.read_text())
    assert code == EXIT_CHECK_FAILED and any(e["status"] == "fail" for e in payload)


@pytest.mark.parametrize("argv", [
    ["verify", "--truncation", "8"],
    ["verify", "--lemma", "nope"],
    ["verify", "--lmax", "1"],
    ["basis", "9"],
    ["basis", "2", "--class", "epsilon"],
])
def test_invalid_input_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_INVALID and err.startswith("error:")


def test_bad_config_file_exit_2(capsys, tmp_path):
    bad = tmp_path / "c.json"
    bad.write_text("{not json")
    assert run(capsys, "verify", "--config", str(bad))[0] == EXIT_INVALID
    bad.write_text(json.dumps({"unknown_key": 1}))
    assert run(capsys, "verify", "--config", str(bad))[0] == EXIT_INVALID
    assert run(capsys, "verify", "--config", str(tmp_path / "missing.json"))[0] == EXIT_INVALID


def test_unsafe_truncation_override():
    args = build_parser().parse_args(["verify", "--truncation", "8", "--unsafe-truncation"])
    assert resolve_settings(args, {})["config"].truncation == 8


def test_precedence_flags_env_config(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"seed": 1, "lmax": 3, "theta": 0.25, "format": "markdown"}))
    env = {"NCTORUS_SEED": "2", "NCTORUS_LMAX": "4", "NCTORUS_OTHER": "x"}
    args = build_parser().parse_args(["verify", "--config", str(cfg), "--seed", "3"])
    settings = resolve_settings(args, env)
    c = settings["config"]
    assert (c.seed, c.lmax, c.theta, c.truncation) == (3, 4, 0.25, 3)
    assert settings["format"] == "markdown"


def test_env_lemma_list_and_bool():
    args = build_parser().parse_args(["verify"])
    env = {"NCTORUS_LEMMA": "chi-recursion, word-orthonormality",
           "NCTORUS_TRUNCATION": "9", "NCTORUS_UNSAFE_TRUNCATION": "yes"}
    c = resolve_settings(args, env)["config"]
    assert c.lemmas == ["chi-recursion", "word-orthonormality"] and c.truncation == 9


def test_env_invalid_value():
    args = build_parser().parse_args(["verify"])
    with pytest.raises(ValueError):
        resolve_settings(args, {"NCTORUS_SEED": "abc"})


def test_basis_outputs(capsys):
    code, out, _ = run(capsys, "basis", "1", "--class", "Zero")
    payload = json.loads(out)
    assert code == EXIT_OK and payload[0]["class"] == "Zero" and len(payload[0]["members"]) == 3
    code, out, _ = run(capsys, "basis", "2", "--class", "Two", "--format", "markdown")
    assert code == EXIT_OK and out.startswith("## l = 2, class Two")


def test_lemmas_listing(capsys):
    code, out, _ = run(capsys, "lemmas")
    assert code == EXIT_OK and "chi-recursion" in out.split()


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nctorus.cli", "nf", "v1 u1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "d^-1 * u1 v1"
