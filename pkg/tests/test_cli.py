import json

import pytest

from motconf import cli
from motconf.verify import CheckResult, SuiteReport


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


class TestZeta:
    def test_affine_line(self, capsys):
        code, out, _ = run(capsys, "zeta", "--builtin", "affine_space:1", "--measure", "count", "-N", "4")
        assert code == 0
        assert "1 + q*t + q^2*t^2 + q^3*t^3 + q^4*t^4" in out
        assert "M_1 = q" in out and "M_2 = 1/2*q^2 - 1/2*q" in out

    def test_point(self, capsys):
        code, out, _ = run(capsys, "zeta", "--builtin", "point", "-N", "3")
        assert code == 0 and "1 + t + t^2 + t^3" in out

    def test_hodge_p1(self, capsys):
        code, data = run_json(capsys, "zeta", "--builtin", "projective_space:1", "--measure", "hodge", "-N", "2")
        assert code == 0
        coeffs = [t["coefficient"] for t in data["zeta"]["terms"]]
        assert coeffs == [{"0,0": "1"}, {"0,0": "1", "1,1": "1"}, {"0,0": "1", "1,1": "1", "2,2": "1"}]

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "zeta", "--builtin", "affine_space:1", "-N", "2", "--format", "csv")
        assert code == 0 and out.splitlines()[0] == "monomial,numerator,denominator"


class TestLimit:
    def test_x1(self, capsys):
        code, data = run_json(capsys, "limit", "--builtin", "affine_space:1", "--charpoly", "X1")
        assert code == 0
        assert data["value"] == {"num": {"1": "1"}, "den": {"1": "1", "0": "1"}}

    def test_constant(self, capsys):
        code, out, _ = run(capsys, "limit", "--charpoly", "1")
        assert code == 0 and out.splitlines()[0].endswith("= 1")

    def test_tau_ab(self, capsys):
        code, data = run_json(capsys, "limit", "--builtin", "affine_space:1", "--tau", "ab")
        assert code == 0
        assert data["value"] == {"num": {"2": "1", "1": "-1"}, "den": {"2": "1", "1": "2", "0": "1"}}

    def test_expansion_printed(self, capsys):
        code, out, _ = run(capsys, "limit", "--builtin", "affine_space:1", "--charpoly", "X1", "-N", "3")
        assert "1 - q^-1 + q^-2 - q^-3 + O(q^-4)" in out


class TestOtherCommands:
    def test_census(self, capsys):
        code, data = run_json(capsys, "census", "--builtin", "affine_space:1", "-q", "2", "-N", "3")
        assert code == 0 and data["tables"][0]["closed_points"] == {"1": 2, "2": 1, "3": 2}

    def test_conf_with_oracle(self, capsys):
        code, data = run_json(capsys, "conf", "--builtin", "affine_space:1", "--tau", "", "-n", "2", "-q", "2,3")
        assert code == 0
        assert data["counts"]["2"]["oracle"] == 2 and data["counts"]["3"]["oracle"] == 6

    def test_report(self, capsys):
        code, data = run_json(capsys, "report", "--builtin", "affine_space:1", "--charpoly", "X1", "-N", "6")
        assert code == 0 and data["converging"] is True
        assert [v["n"] for v in data["valuations"]] == list(range(1, 7))

    def test_spec_file(self, capsys, tmp_path):
        path = tmp_path / "curve.json"
        path.write_text(json.dumps({"affine_system": {"ambient": 2, "equations": ["y^2-x^3-x"]}}))
        code, data = run_json(capsys, "census", "--spec", str(path), "-q", "3", "-N", "1")
        assert code == 0 and data["tables"][0]["points"] == {"1": 3}

    def test_hodge_limit_matches_count(self, capsys):
        _, hodge = run_json(capsys, "limit", "--builtin", "projective_space:1", "--charpoly", "X2", "--measure", "hodge")
        _, count = run_json(capsys, "limit", "--builtin", "projective_space:1", "--charpoly", "X2")
        rekey = lambda d: {k.split(",")[0]: v for k, v in d.items()}
        assert {k: rekey(v) for k, v in hodge["value"].items()} == count["value"]


class TestVerify:
    @pytest.mark.parametrize("argv", [
        ("verify", "--suite", "axioms", "--seed", "7"),
        ("verify", "--suite", "oracle", "-q", "2,3", "-N", "5"),
        ("verify", "--suite", "chen", "--builtin", "projective_space:1", "-q", "2", "-N", "4"),
        ("verify", "--suite", "appendix"),
    ])
    def test_suites_pass(self, capsys, argv):
        code, out, _ = run(capsys, *argv)
        assert code == 0, out

    def test_oracle_includes_conf2(self, capsys):
        code, data = run_json(capsys, "verify", "--suite", "oracle", "-q", "2,3", "-N", "5", "--no-timing")
        assert code == 0
        assert any(c["name"] == "conf2_A1_q2" and c["ok"] for c in data["checks"])

    def test_json_byte_deterministic(self, capsys):
        argv = ("verify", "--suite", "axioms", "--seed", "3", "--instances", "5", "--format", "json", "--no-timing")
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second

    def test_failure_exit_code(self, capsys, monkeypatch):
        bad = CheckResult("broken", False, 1, 0.0, "f = 1 + t")
        monkeypatch.setattr(cli, "run_suite", lambda *a, **k: SuiteReport("axioms", 0, [bad]))
        code, out, _ = run(capsys, "verify", "--suite", "axioms")
        assert code == 1 and "broken" in out


class TestUsageErrors:
    @pytest.mark.parametrize("argv", [
        ("zeta", "--builtin", "sphere:2"),
        ("zeta", "--measure", "etale"),
        ("limit", "--builtin", "affine_space:1", "--charpoly", "X0 +"),
        ("limit", "--builtin", "affine_space:1", "--tau", "a-b"),
        ("census", "--spec", "/nonexistent/file.json", "-q", "2"),
        ("census", "--builtin", "affine_space:1", "-q", "6"),
        ("verify", "--suite", "nonsense"),
        ("bogus",),
    ])
    def test_exit_2(self, capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == 2 and err

    def test_budget_exit_2(self, capsys, monkeypatch, tmp_path):
        monkeypatch.setenv("MOTCONF_BUDGET", "10")
        path = tmp_path / "big.json"
        path.write_text(json.dumps({"affine_system": {"ambient": 3, "equations": ["x1+x2+x3"]}}))
        code, _, err = run(capsys, "census", "--spec", str(path), "-q", "3", "-N", "2")
        assert code == 2 and "budget" in err.lower()

    def test_vanishing_conf_is_skipped(self, capsys):
        # the point has [Conf^n] = 0 for n >= 2: those n are reported as skipped
        code, data = run_json(capsys, "report", "--builtin", "point", "--charpoly", "X1", "-N", "3")
        assert code == 0 and data["skipped"] == [2, 3]

    def test_help_exit_0(self, capsys):
        assert run(capsys, "--help")[0] == 0
