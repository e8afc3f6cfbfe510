import json
import subprocess
import sys
from pathlib import Path

import pytest
from jsonschema import Draft202012Validator

from ctlhom import cli
from ctlhom.corpus import balloon_ray, build, infinite_star, save_space
from ctlhom.laws import LawResult

SCHEMA = json.loads(
    (Path(__file__).resolve().parent.parent / "docs" / "output-schema.json")
    .read_text()
)
VALIDATOR = Draft202012Validator(SCHEMA)


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out + captured.err


def run_json(capsys, *argv):
    code = cli.main([*argv, "--json"])
    doc = json.loads(capsys.readouterr().out)
    VALIDATOR.validate(doc)
    return code, doc


# ------------------------------------------------------------------ success

def test_spaces_lists_the_registry(capsys):
    code, doc = run_json(capsys, "spaces")
    assert code == 0
    names = {e["name"] for e in doc["spaces"]}
    assert {"torus", "line", "ray", "sphere(n)"} <= names


@pytest.mark.parametrize("command,degree,expected", [
    ("homology", "1", {"free_rank": 2, "torsion": []}),
    ("bm-homology", "2", {"free_rank": 1, "torsion": []}),
    ("cohomology", "2", {"free_rank": 1, "torsion": []}),
    ("cohomology-c", "0", {"free_rank": 1, "torsion": []}),
])
def test_theories_on_the_torus(capsys, command, degree, expected):
    code, doc = run_json(capsys, command, "torus")
    assert code == 0
    g = doc["groups"][degree]
    assert {"free_rank": g["free_rank"], "torsion": g["torsion"]} == expected
    assert doc["stabilization"] is None


def test_bm_homology_of_the_line(capsys):
    code, doc = run_json(capsys, "bm-homology", "line")
    assert code == 0
    assert doc["groups"]["0"]["free_rank"] == 0
    assert doc["groups"]["1"]["free_rank"] == 1
    assert doc["stabilization"]["stabilized_at"] == {"0": 0, "1": 1}


def test_coefficient_flag(capsys):
    code, doc = run_json(capsys, "homology", "rp2", "--coeff", "z/2")
    assert code == 0
    assert doc["coefficients"] == "Z/2"
    assert doc["groups"]["1"] == {"free_rank": 1, "torsion": [], "pretty": "Z/2"}


def test_human_output_mentions_the_groups(capsys):
    code, out = run(capsys, "homology", "torus")
    assert code == 0
    assert "degree 1: Z^2" in out


def test_check_reports_star_sizes(capsys):
    code, doc = run_json(capsys, "check", "line")
    assert code == 0
    assert doc["locally_finite"] is True
    assert doc["max_star"] == 3


def test_pairing_line(capsys):
    code, doc = run_json(capsys, "pairing", "line", "--degree", "1")
    assert code == 0
    assert doc["matrix"] in ([[1]], [[-1]])


def test_laws_pass(capsys):
    code, doc = run_json(capsys, "laws", "--max-carrier", "2")
    assert code == 0
    assert doc["ok"] is True
    assert len(doc["results"]) == 9


def test_space_file_argument(capsys, tmp_path):
    path = tmp_path / "t.json"
    save_space(build("torus"), str(path))
    code, doc = run_json(capsys, "homology", str(path))
    assert code == 0
    assert doc["groups"]["2"]["free_rank"] == 1


def test_json_output_is_byte_identical(capsys):
    _, first = run(capsys, "homology", "torus", "--json")
    _, second = run(capsys, "homology", "torus", "--json")
    assert first == second


# -------------------------------------------------------------- exit codes

def test_unknown_space_is_a_validation_error(capsys):
    assert run(capsys, "homology", "atlantis")[0] == 3


def test_bad_coefficients_are_a_usage_error(capsys):
    assert run(capsys, "homology", "torus", "--coeff", "z/x")[0] == 2


def test_bad_max_carrier_is_a_usage_error(capsys):
    assert run(capsys, "laws", "--max-carrier", "9")[0] == 2


def test_non_stabilization_exit(capsys, tmp_path):
    path = tmp_path / "balloon.json"
    save_space(balloon_ray(), str(path))
    code, out = run(capsys, "bm-homology", str(path))
    assert code == 4
    assert "did not stabilize" in out


def test_local_finiteness_failure_exit(capsys, tmp_path):
    path = tmp_path / "star.json"
    save_space(infinite_star(), str(path))
    code, doc = run_json(capsys, "check", str(path))
    assert code == 3
    assert doc["locally_finite"] is False
    assert run(capsys, "homology", str(path))[0] == 3


def test_malformed_space_file_exit(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"format": "something-else"}')
    assert run(capsys, "homology", str(path))[0] == 3


def test_law_failure_exit(capsys, monkeypatch):
    broken = LawResult(name="always-wrong", ok=False, cases=1,
                       counterexample="the one case")
    monkeypatch.setattr(cli.laws_module, "run_all", lambda mc: [broken])
    code, out = run(capsys, "laws")
    assert code == 5
    assert "always-wrong" in out


def test_env_var_caps_the_depth(capsys, monkeypatch):
    monkeypatch.setenv("CTLHOM_MAX_DEPTH", "2")
    assert run(capsys, "bm-homology", "line")[0] == 4
    monkeypatch.setenv("CTLHOM_MAX_DEPTH", "banana")
    assert run(capsys, "bm-homology", "line")[0] == 2


def test_explicit_depth_beats_the_env(capsys, monkeypatch):
    monkeypatch.setenv("CTLHOM_MAX_DEPTH", "2")
    code, _ = run(capsys, "bm-homology", "line", "--max-depth", "8")
    assert code == 0


# --------------------------------------------------------- console script

def test_console_script_is_installed():
    out = subprocess.run(["ctlhom", "spaces", "--json"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    VALIDATOR.validate(json.loads(out.stdout))


def test_module_entry_point_matches():
    out = subprocess.run(
        [sys.executable, "-m", "ctlhom.cli", "homology", "circle", "--json"],
        capture_output=True, text=True,
    )
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    VALIDATOR.validate(doc)
    assert doc["groups"]["1"]["pretty"] == "Z"
