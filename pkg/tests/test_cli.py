import json

import jsonschema

from diagbase import report as report_mod
from diagbase.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestCommands:
    def test_base_min_w2a5(self, capsys):
        code, out = run_cli(capsys, "base-min", "--group", "A5", "--k", "2",
                            "--out-part", "full", "--top", "sym-table")
        assert code == 0
        rep = json.loads(out)
        assert rep["payload"]["size"] == 4
        assert rep["payload"]["pyber"]["upper_holds"] is True

    def test_base_construct(self, capsys):
        code, out = run_cli(capsys, "base-construct", "--group", "A5",
                            "--k", "5", "--top", "sym")
        assert code == 0
        rep = json.loads(out)
        assert rep["payload"]["construction"] == "digit"
        assert rep["payload"]["certificate"]["verdict"] is True

    def test_base_verify(self, capsys):
        code, out = run_cli(capsys, "base-verify", "--group", "A5", "--k", "2",
                            "--top", "sym-table", "--points", "0 0")
        assert code == 0
        rep = json.loads(out)
        assert rep["payload"]["certificate"]["verdict"] is False
        assert rep["payload"]["certificate"]["witness"] is not None

    def test_catalog_validate_single(self, capsys):
        code, out = run_cli(capsys, "catalog-validate", "--group", "A5")
        assert code == 0
        rep = json.loads(out)
        assert rep["payload"][0]["order"] == 60

    def test_prob_exact(self, capsys):
        code, out = run_cli(capsys, "prob-exact", "--group", "A5", "--k", "2",
                            "--out-part", "inner", "--top", "sym-table")
        assert code == 0
        rep = json.loads(out)
        entry = rep["payload"][0]
        assert entry["exact_nonbase_pair_fraction"] == {
            "num": "1", "den": "1"}

    def test_prob_mc_sweep_csv(self, capsys):
        code, out = run_cli(capsys, "prob-mc", "--group", "A5,A6", "--k", "5",
                            "--top", "cyclic", "--samples", "200",
                            "--format", "csv")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 3  # header + one row per group

    def test_paper_suite_subset(self, capsys):
        code, out = run_cli(capsys, "paper-suite", "--criteria", "4",
                            "--format", "json")
        assert code == 0
        rep = json.loads(out)
        assert rep["payload"][0]["passed"] is True


class TestDeterminism:
    def test_identical_seeds_identical_bytes(self, capsys):
        args = ("prob-mc", "--group", "A5", "--k", "2", "--out-part", "inner",
                "--top", "sym-table", "--samples", "500", "--seed", "7")
        _, out1 = run_cli(capsys, *args)
        _, out2 = run_cli(capsys, *args)
        assert out1 == out2

    def test_timing_opt_in(self, capsys):
        args = ("catalog-validate", "--group", "A5")
        _, out = run_cli(capsys, *args)
        assert json.loads(out)["timing_seconds"] is None
        _, out = run_cli(capsys, *args, "--timing")
        assert json.loads(out)["timing_seconds"] is not None


class TestSchema:
    def test_reports_validate_against_shipped_schema(self, capsys):
        schema = report_mod.schema()
        for args in [("catalog-validate", "--group", "A5"),
                     ("base-min", "--group", "A5", "--k", "2",
                      "--out-part", "inner", "--top", "sym-table"),
                     ("prob-exact", "--group", "A5", "--k", "2",
                      "--out-part", "inner", "--top", "sym-table")]:
            _, out = run_cli(capsys, *args)
            jsonschema.validate(json.loads(out), schema)

    def test_config_echoed(self, capsys):
        _, out = run_cli(capsys, "base-min", "--group", "A5", "--k", "2",
                         "--out-part", "inner", "--top", "sym-table")
        rep = json.loads(out)
        assert rep["config"]["group"] == "A5"
        assert rep["config"]["k"] == 2


class TestExitCodes:
    def test_invalid_top_precondition(self, capsys):
        code, _ = run_cli(capsys, "base-min", "--group", "A5", "--k", "4",
                          "--top", "cyclic")
        assert code == 5

    def test_budget_exceeded(self, capsys):
        code, _ = run_cli(capsys, "base-min", "--group", "A5", "--k", "2",
                          "--out-part", "inner", "--top", "trivial",
                          "--budget", "10")
        assert code == 4

    def test_unknown_group_validation(self, capsys):
        code, _ = run_cli(capsys, "base-min", "--group", "M11", "--k", "2",
                          "--top", "sym-table")
        assert code == 3

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out = run_cli(capsys, "catalog-validate", "--group", "A5",
                            "--output", str(target))
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["command"] == "catalog-validate"
