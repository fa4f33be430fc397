"""Command-line interface: verbs, JSON output, exit codes, determinism."""

import json
import subprocess
import sys

import pytest

from liedeform.cli import run


def run_cli(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestVerify:
    def test_catalog_algebra_ok(self, capsys):
        code, out, err = run_cli(capsys, "verify", "--algebra", "sl2")
        assert code == 0
        assert "valid" in out

    def test_json_output(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--algebra", "heis3", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["valid"] is True and doc["kind"] == "algebra"

    def test_jacobi_failure_exits_one(self, capsys, tmp_path):
        bad = {"name": "bad", "dim": 3, "basis": ["x", "y", "z"],
               "brackets": [{"i": 0, "j": 1, "coeffs": ["1", "0", "0"]},
                            {"i": 0, "j": 2, "coeffs": ["0", "0", "1"]}]}
        p = tmp_path / "bad.json"
        p.write_text(json.dumps(bad))
        code, out, err = run_cli(capsys, "verify", "--algebra", str(p))
        assert code == 1
        assert "jacobi" in (out + err).lower()

    def test_malformed_doc_exits_two(self, capsys, tmp_path):
        p = tmp_path / "broken.json"
        p.write_text("{oops")
        code, _, err = run_cli(capsys, "verify", "--algebra", str(p))
        assert code == 2

    def test_hom_and_sub_verify(self, capsys):
        assert run_cli(capsys, "verify", "--hom", "borel-incl")[0] == 0
        assert run_cli(capsys, "verify", "--sub", "center-in-heis3")[0] == 0

    def test_no_object_exits_two(self, capsys):
        code, _, err = run_cli(capsys, "verify")
        assert code == 2


class TestCohomology:
    def test_heis3_dims(self, capsys):
        code, out, _ = run_cli(capsys, "cohomology", "--algebra", "heis3",
                               "--json")
        assert code == 0
        doc = json.loads(out)
        assert [d["dimH"] for d in doc["degrees"]] == [1, 4, 5, 2]
        assert doc["euler"] == 0

    def test_text_output_mentions_degrees(self, capsys):
        code, out, _ = run_cli(capsys, "cohomology", "--algebra", "sl2")
        assert code == 0
        assert "dimH" in out and "euler" in out

    def test_pullback_system(self, capsys):
        code, out, _ = run_cli(capsys, "cohomology", "--hom", "zero-to-sl2",
                               "--json")
        assert code == 0
        assert [d["dimH"] for d in json.loads(out)["degrees"]] == [3, 3]

    def test_quotient_system(self, capsys):
        code, out, _ = run_cli(capsys, "cohomology", "--sub",
                               "center-in-heis3", "--json")
        assert code == 0
        assert [d["dimH"] for d in json.loads(out)["degrees"]][:2] == [2, 2]


class TestVerdict:
    def test_single_question(self, capsys):
        code, out, _ = run_cli(capsys, "verdict", "--algebra", "sl2",
                               "--question", "bracket-rigidity", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["verdicts"][0]["conclusion"] == "holds"

    def test_fails_criterion_still_exits_zero(self, capsys):
        code, out, _ = run_cli(capsys, "verdict", "--algebra", "heis3",
                               "--question", "bracket-rigidity", "--json")
        assert code == 0
        assert json.loads(out)["verdicts"][0]["conclusion"] == "fails-criterion"

    def test_all_questions_for_hom(self, capsys):
        code, out, _ = run_cli(capsys, "verdict", "--hom", "borel-incl",
                               "--json")
        assert code == 0
        doc = json.loads(out)
        crits = [v["criterion"] for v in doc["verdicts"]]
        assert "hom-rigidity" in crits and "hom-stability" in crits
        assert "hom-infinitesimal-stability-indicator" in crits

    def test_model_dims_question(self, capsys):
        code, out, _ = run_cli(capsys, "verdict", "--sub", "borel-in-sl2",
                               "--question", "kuranishi-model-dims", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["kind"] == "sub" and doc["tangent_dim"] == 0

    def test_question_object_mismatch_exits_two(self, capsys):
        code, _, err = run_cli(capsys, "verdict", "--algebra", "sl2",
                               "--question", "hom-rigidity")
        assert code == 2

    def test_text_output_readable(self, capsys):
        code, out, _ = run_cli(capsys, "verdict", "--algebra", "sl2")
        assert code == 0
        assert "holds" in out


class TestKuranishi:
    def test_identity_check_bracket(self, capsys):
        code, out, _ = run_cli(capsys, "kuranishi", "--algebra", "sl2",
                               "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["check"] == "jacobiator-expansion"
        assert doc["ok"] is True and doc["seed"] == 0

    def test_identity_check_hom(self, capsys):
        code, out, _ = run_cli(capsys, "kuranishi", "--hom", "borel-incl",
                               "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["check"] == "curvature-expansion" and doc["ok"] is True

    def test_identity_check_sub(self, capsys):
        code, out, _ = run_cli(capsys, "kuranishi", "--sub", "borel-in-sl2",
                               "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["check"] == "splitting-independence" and doc["ok"] is True

    def test_seeded_checks_are_deterministic(self, capsys):
        a = run_cli(capsys, "kuranishi", "--algebra", "heis3", "--json",
                    "--seed", "5")
        b = run_cli(capsys, "kuranishi", "--algebra", "heis3", "--json",
                    "--seed", "5")
        assert a == b

    def test_bracket_direction_class(self, capsys, tmp_path):
        p = tmp_path / "dir.json"
        # a 2-cocycle on abelian3 whose jacobiator does not vanish
        p.write_text(json.dumps([
            {"i": 0, "j": 1, "coeffs": ["1", "0", "0"]},
            {"i": 0, "j": 2, "coeffs": ["0", "0", "1"]}]))
        code, out, _ = run_cli(capsys, "kuranishi", "--algebra", "abelian3",
                               "--direction", str(p), "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["vanishes"] is False and doc["kind"] == "bracket"

    def test_non_cocycle_direction_exits_one(self, capsys, tmp_path):
        p = tmp_path / "dir.json"
        p.write_text(json.dumps([{"i": 0, "j": 1,
                                  "coeffs": ["1", "0", "0"]}]))
        code, _, err = run_cli(capsys, "kuranishi", "--algebra", "sl2",
                               "--direction", str(p))
        assert code == 1

    def test_sub_direction_with_primitive(self, capsys, tmp_path):
        p = tmp_path / "dir.json"
        p.write_text(json.dumps([["1", "0"]]))  # eta(h)=fbar, eta(e)=0
        code, out, _ = run_cli(capsys, "kuranishi", "--sub", "borel-in-sl2",
                               "--direction", str(p), "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["vanishes"] is True
        assert doc["primitive"]


class TestLes:
    def test_center_les(self, capsys):
        code, out, _ = run_cli(capsys, "les", "--sub", "center-in-heis3",
                               "--max-degree", "2", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["all_exact"] is True
        assert [n["dimH"] for n in doc["nodes"]] == [1, 3, 2, 1, 3, 2]

    def test_text_output(self, capsys):
        code, out, _ = run_cli(capsys, "les", "--sub", "borel-in-sl2")
        assert code == 0
        assert "exact" in out.lower()


class TestDeform:
    def test_bracket_recovery_runs(self, capsys):
        code, out, _ = run_cli(capsys, "deform", "--kind", "bracket-recovery",
                               "--algebra", "sl2", "--seeds", "3", "--json")
        assert code == 0
        lines = [json.loads(line) for line in out.strip().splitlines()]
        assert [rec["seed"] for rec in lines] == [0, 1, 2]
        assert all(rec["converged"] for rec in lines)

    def test_deterministic_output(self, capsys):
        args = ("deform", "--kind", "hom-continuation", "--hom", "borel-incl",
                "--seeds", "2", "--json")
        a = run_cli(capsys, *args)
        b = run_cli(capsys, *args)
        assert a == b

    def test_jobs_keep_seed_order(self, capsys):
        base = ("deform", "--kind", "sub-recovery", "--sub", "borel-in-sl2",
                "--seeds", "4", "--json")
        seq = run_cli(capsys, *base)
        par = run_cli(capsys, *base, "--jobs", "3")
        assert seq[1] == par[1]

    def test_experiment_document(self, capsys, tmp_path):
        p = tmp_path / "exp.json"
        p.write_text(json.dumps({
            "kind": "sub-continuation", "sub": "borel-in-sl2",
            "perturbation": {"scale": 0.05, "seeds": [0, 1]},
            "newton": {"tol": 1e-10}}))
        code, out, _ = run_cli(capsys, "deform", "--experiment", str(p),
                               "--json")
        assert code == 0
        lines = [json.loads(line) for line in out.strip().splitlines()]
        assert len(lines) == 2 and all(r["converged"] for r in lines)

    def test_precondition_failure_exits_one(self, capsys):
        code, _, err = run_cli(capsys, "deform", "--kind", "bracket-recovery",
                               "--algebra", "heis3", "--seeds", "1")
        assert code == 1

    def test_text_output_summarizes(self, capsys):
        code, out, _ = run_cli(capsys, "deform", "--kind", "bracket-recovery",
                               "--algebra", "aff1", "--seeds", "2")
        assert code == 0
        assert "seed" in out.lower()


class TestArgHandling:
    def test_unknown_verb_exits_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(["explode"])
        assert exc.value.code == 2

    def test_no_verb_exits_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run([])
        assert exc.value.code == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "liedeform", "cohomology",
                          "--algebra", "abelian2", "--json"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert [d["dimH"] for d in json.loads(out.stdout)["degrees"]] == [2, 4, 2]


def test_console_script_runs():
    out = subprocess.run(["liedeform", "verify", "--algebra", "so3"],
                         capture_output=True, text=True)
    assert out.returncode == 0
