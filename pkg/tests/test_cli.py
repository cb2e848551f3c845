"""CLI subcommands, exit codes, and report determinism."""

import json
import subprocess
import sys

import pytest

from tanglekit.cli import main

RUN = [sys.executable, "-m", "tanglekit.cli"]


def run_cli(args, stdin=None):
    return subprocess.run(
        RUN + args, input=stdin, capture_output=True, text=True, timeout=600
    )


class TestSolve:
    def test_default_table(self, capsys):
        assert main(["solve"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["solution"]["O1"] == "-1/4"
        assert data["solution"]["d_t"] == [0, 4]

    def test_config_file(self, capsys):
        assert main(["solve", "--config", "tests/fixtures/table15.json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["solution"]["v"] == [1, -1, 1]

    def test_unsolvable_exits_one(self, tmp_path, capsys):
        cfg = tmp_path / "bad.json"
        cfg.write_text(json.dumps({"deletion": {"e": 1}}))
        assert main(["solve", "--config", str(cfg)]) == 1

    def test_deterministic_output(self):
        a = run_cli(["solve"])
        b = run_cli(["solve"])
        assert a.stdout == b.stdout


class TestPipelines:
    def test_pjh_verify_pipeline(self):
        pd = run_cli(["pjh"]).stdout
        result = run_cli(["verify", "--in-trans"], stdin=pd)
        assert result.returncode == 0
        report = json.loads(result.stdout)
        assert report["passed"] and len(report["checks"]) == 8

    def test_verify_failure_exit(self, tmp_path, capsys):
        from tanglekit.diagram import emit_pd, trivial_tangle

        pd = tmp_path / "triv.pd"
        pd.write_text(emit_pd(trivial_tangle()))
        assert main(["verify", "--pd", str(pd)]) == 1

    def test_identify(self, tmp_path, capsys):
        from tanglekit.diagram import close_numerator, emit_pd, rational_tangle_diagram
        from tanglekit.rational import reduce

        pd = tmp_path / "tre.pd"
        pd.write_text(emit_pd(close_numerator(rational_tangle_diagram(reduce(3, 1)))))
        assert main(["identify", "--pd", str(pd)]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["kind"] == "torus2" and data["torus_p"] == 3

    def test_lk(self, tmp_path, capsys):
        from tanglekit.diagram import close_with_x_arcs, emit_pd
        from tanglekit.experiments import pjh_tangle

        pd = tmp_path / "link.pd"
        pd.write_text(emit_pd(close_with_x_arcs(pjh_tangle())))
        assert main(["lk", "--pd", str(pd)]) == 0
        data = json.loads(capsys.readouterr().out)
        assert set(data.values()) == {-1}

    def test_reduce_target(self, tmp_path, capsys):
        from tanglekit.diagram import emit_pd
        from tanglekit.experiments import pjh_tangle

        pd = tmp_path / "pjh.pd"
        pd.write_text(emit_pd(pjh_tangle()))
        assert main(["reduce", "--pd", str(pd), "--free", "--target", "7"]) == 0
        out = capsys.readouterr().out
        assert "tangle k=3 n=0" in out
        assert main(["reduce", "--pd", str(pd), "--target", "3"]) == 1


class TestEnumerate:
    def test_small_level(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        assert main(["enumerate", "--max-crossings", "2", "--out", str(out)]) == 0
        data = json.loads(out.read_text())
        totals = [lvl["total"] for lvl in data["levels"]]
        assert totals == [5, 72, 1020]
        assert all(lvl["holds"] for lvl in data["levels"])

    def test_jobs_merge(self, tmp_path):
        solo = tmp_path / "solo.json"
        multi = tmp_path / "multi.json"
        assert main(["enumerate", "--max-crossings", "1", "--out", str(solo)]) == 0
        assert main(
            ["enumerate", "--max-crossings", "1", "--jobs", "2", "--out", str(multi)]
        ) == 0
        assert json.loads(solo.read_text()) == json.loads(multi.read_text())


class TestDeduce:
    def test_rational_scenario(self, capsys, tmp_path):
        trace = tmp_path / "trace.txt"
        assert main(
            ["deduce", "--facts", "tests/fixtures/facts_rational_solution.json",
             "--trace", str(trace)]
        ) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["planar"] and data["consistent"]
        assert "Planar" in trace.read_text()

    def test_empty_facts(self, capsys):
        assert main(["deduce", "--facts", "tests/fixtures/facts_empty.json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["facts"] == [] and not data["planar"]


class TestBudget:
    def test_budget_exit_code(self, tmp_path, monkeypatch, capsys):
        from tanglekit.diagram import close_numerator, emit_pd, rational_tangle_diagram
        from tanglekit.rational import reduce

        monkeypatch.setenv("TANGLEKIT_BUDGET", "2")
        pd = tmp_path / "big.pd"
        pd.write_text(emit_pd(close_numerator(rational_tangle_diagram(reduce(7, 2)))))
        assert main(["identify", "--pd", str(pd)]) == 3
