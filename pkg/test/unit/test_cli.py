"""Unit tests for the command-line front end."""
import json

import pytest

from qehrhart._checks import CheckReport
from qehrhart._cli import EXIT_BUDGET, EXIT_DISAGREE, EXIT_INPUT, EXIT_OK, InputError, RunConfig, main


def run(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_version(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == EXIT_OK
    assert out.strip() == "qehrhart 0.1.0"


def test_no_subcommand_prints_help(capsys):
    code, out, _ = run(capsys)
    assert code == EXIT_INPUT
    assert "SUBCOMMAND" in out


def test_unknown_flag(capsys):
    code, _, _ = run(capsys, "qehrhart", "--polytope", "triangle", "--colour", "red")
    assert code == EXIT_INPUT


class TestQEhrhart:

    def test_table(self, capsys):
        code, out, _ = run(capsys, "qehrhart", "--polytope", "triangle", "--mmax", "2", "--no-cache")
        assert code == EXIT_OK
        assert "t^1: 1 + 2q + q^2" in out

    def test_json(self, capsys):
        code, out, _ = run(capsys, "qehrhart", "--polytope", "square", "--mmax", "1", "--format", "json",
                           "--no-cache")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["m_max"] == 1
        assert {"m": 1, "d": 2, "dim": 1} in data["entries"]

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "qehrhart", "--polytope", "segment", "--mmax", "1", "--format", "csv",
                           "--no-cache")
        assert code == EXIT_OK
        assert out == "m,d,dim\n0,0,1\n1,0,1\n1,1,1\n"

    def test_all_methods(self, capsys):
        code, out, _ = run(capsys, "qehrhart", "--polytope", "gk-triangle", "--mmax", "2", "--method", "all",
                           "--no-cache")
        assert code == EXIT_OK
        assert "all methods agree" in out

    def test_disagreement_exits_3(self, capsys, monkeypatch):
        monkeypatch.setattr("qehrhart._cli.verify_agreement", lambda tables: ["m=1: forced"])
        code, out, _ = run(capsys, "qehrhart", "--polytope", "segment", "--mmax", "1", "--method", "all",
                           "--no-cache")
        assert code == EXIT_DISAGREE
        assert "m=1: forced" in out

    def test_budget_exits_2(self, capsys):
        code, _, err = run(capsys, "qehrhart", "--polytope", "square", "--mmax", "4", "--max-entries", "10",
                           "--no-cache")
        assert code == EXIT_BUDGET
        assert "budget" in err

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "rows.csv"
        code, out, _ = run(capsys, "qehrhart", "--polytope", "triangle", "--mmax", "1", "--format", "csv",
                           "--output", str(target), "--no-cache")
        assert code == EXIT_OK
        assert out == ""
        assert target.read_text().startswith("m,d,dim\n")

    def test_cache_round_trip(self, capsys, tmp_path, qehrhart_home):
        args = ("qehrhart", "--polytope", "triangle", "--mmax", "2", "--cache-dir", str(tmp_path / "c"))
        first = run(capsys, *args)
        second = run(capsys, *args)
        assert first == second
        assert "Cache hit" in (qehrhart_home / "qehrhart.log").read_text()

    def test_parallel_rows(self, capsys):
        code, out, _ = run(capsys, "qehrhart", "--polytope", "triangle", "--mmax", "3", "--jobs", "2",
                           "--no-cache")
        assert code == EXIT_OK
        assert "t^3:" in out


class TestInputErrors:

    def test_unknown_polytope(self, capsys):
        code, _, err = run(capsys, "points", "--polytope", "dodecahedron")
        assert code == EXIT_INPUT
        assert "neither a builtin" in err

    def test_malformed_file(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"dim": 2, "vertices": [[0, 0], [1]]}')
        code, _, err = run(capsys, "points", "--polytope", str(path))
        assert code == EXIT_INPUT
        assert "Error" in err

    @pytest.mark.parametrize("flags", [
        ("--mmax", "-1"),
        ("--jobs", "0"),
        ("--method", "guess"),
        ("--max-entries", "0"),
        ("--m", "-2"),
    ])
    def test_bad_values(self, capsys, flags):
        code, _, _ = run(capsys, "qehrhart", "--polytope", "triangle", "--no-cache", *flags)
        assert code == EXIT_INPUT

    def test_bad_value_prints_usage(self, capsys):
        code, out, err = run(capsys, "qehrhart", "--polytope", "triangle", "--mmax", "-1", "--no-cache")
        assert code == EXIT_INPUT
        assert out == ""
        assert err.startswith("usage:")
        assert "Error: --mmax must be nonnegative, got -1" in err

    def test_csv_not_available(self, capsys):
        code, _, err = run(capsys, "gk-check", "--polytope", "gk-triangle", "--mmax", "1", "--kmax", "1",
                           "--format", "csv", "--no-cache")
        assert code == EXIT_INPUT
        assert "no CSV output" in err

    def test_run_config_validation(self):
        with pytest.raises(InputError):
            RunConfig("qehrhart", "triangle", d=-1).validate()
        with pytest.raises(InputError):
            RunConfig("fly", "triangle").validate()


def test_points(capsys):
    code, out, _ = run(capsys, "points", "--polytope", "triangle", "--no-cache")
    assert code == EXIT_OK
    assert out.splitlines() == ["4 lattice points in 1P", "(0, 0)", "(1, 1)", "(1, 2)", "(2, 1)"]


def test_ehrhart(capsys):
    code, out, _ = run(capsys, "ehrhart", "--polytope", "triangle", "--mmax", "3", "--no-cache")
    assert code == EXIT_OK
    assert out.splitlines()[-1] == "m=3: 19"


def test_filtration_single_degree(capsys):
    code, out, _ = run(capsys, "filtration", "--polytope", "triangle", "--m", "1", "--d", "2", "--no-cache")
    assert code == EXIT_OK
    assert out.strip() == "dim F_{1,2} = 1"


def test_filtration_json_has_bases(capsys):
    code, out, _ = run(capsys, "filtration", "--polytope", "triangle", "--dilation", "1", "--format", "json",
                       "--no-cache")
    assert code == EXIT_OK
    data = json.loads(out)
    assert [e["dim"] for e in data["dims"]] == [4, 3, 1, 0]
    assert len(data["bases"][2]["elements"]) == 1


def test_harmonic_basis_dual(capsys):
    code, out, _ = run(capsys, "harmonic-basis", "--polytope", "square", "--method", "dual", "--no-cache")
    assert code == EXIT_OK
    assert out.startswith("(H_P)_1 via dual: dims [1, 2, 1]")


def test_generators(capsys):
    code, out, _ = run(capsys, "generators", "--polytope", "segment", "--mmax", "2", "--format", "json",
                       "--no-cache")
    assert code == EXIT_OK
    assert json.loads(out)["counts"] == [{"m": 1, "d": 0, "count": 1}, {"m": 1, "d": 1, "count": 1}]


def test_gk_check(capsys):
    code, out, _ = run(capsys, "gk-check", "--polytope", "gk-triangle", "--mmax", "2", "--kmax", "1",
                       "--format", "json", "--no-cache")
    assert code == EXIT_OK
    data = json.loads(out)
    assert [r["order"] for r in data["orders"]] == [1, 2]
    assert not data["aborted"]


def test_gk_check_aborted_exits_2(capsys):
    code, out, _ = run(capsys, "gk-check", "--polytope", "gk-triangle", "--mmax", "2", "--max-entries", "4",
                       "--no-cache")
    assert code == EXIT_BUDGET
    assert "aborted:" in out


def test_lemma32(capsys):
    code, out, _ = run(capsys, "lemma32", "--polytope", "square", "--dilation", "2", "--trials", "10",
                       "--seed", "7", "--no-cache")
    assert code == EXIT_OK
    assert out.startswith("lemma32: pass (10 trials")


def test_failed_check_exits_3(capsys, monkeypatch):
    failing = CheckReport("lemma32", trials=1, violations=[{"trial": 0}])
    monkeypatch.setattr("qehrhart._qehrhart.lemma32_check", lambda Z, trials, seed: failing)
    code, out, _ = run(capsys, "lemma32", "--polytope", "square", "--trials", "1", "--no-cache")
    assert code == EXIT_DISAGREE
    assert "FAIL" in out


def test_mult_check(capsys):
    code, out, _ = run(capsys, "mult-check", "--polytope", "triangle", "--mmax", "2", "--samples", "5",
                       "--format", "json", "--no-cache")
    assert code == EXIT_OK
    assert json.loads(out)["passed"]


def test_points_of_a_dilation(capsys):
    code, out, _ = run(capsys, "points", "--polytope", "triangle", "--dilation", "2", "--no-cache")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "10 lattice points in 2P"


def test_json_output_is_deterministic(capsys):
    args = ("mult-check", "--polytope", "segment", "--mmax", "3", "--samples", "5", "--format", "json", "--no-cache")
    assert run(capsys, *args) == run(capsys, *args)
