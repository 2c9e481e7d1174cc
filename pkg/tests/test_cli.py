import json

import pytest
from helpers import TABLE1

from interdep.cli import main

CHAIN = "a1 <- b1\nb1 <- a2\na2 <- b2\na3\nb2\n"
GEN_CONFIG = "n_a=6\nn_b=5\nmax_minterms=2\nmax_minterm_size=2\nidr_probability=0.8\nseed=4\n"
SWEEP = GEN_CONFIG + "seeds=4,5\nk=2\ns_list=1,2\n"


@pytest.fixture()
def net_file(tmp_path):
    path = tmp_path / "table1.idr"
    path.write_text(TABLE1)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


class TestSimulate:
    def test_worked_example(self, capsys, net_file):
        code, payload = run(capsys, "simulate", "--net", net_file, "--fail", "b2,b3")
        assert code == 0
        assert payload["failed"] == ["a1", "a2", "a3", "a4", "b1", "b2", "b3"]
        assert payload["induced"] == ["a1", "a2", "a3", "a4", "b1"]
        assert payload["fail_time"]["b1"] == 2

    def test_empty_fail_list(self, capsys, net_file):
        code, payload = run(capsys, "simulate", "--net", net_file, "--fail", "")
        assert code == 0
        assert payload["failed"] == []

    def test_trace_csv_written(self, capsys, net_file, tmp_path):
        out = tmp_path / "trace.csv"
        code, payload = run(
            capsys, "simulate", "--net", net_file, "--fail", "b2,b3", "--trace-csv", str(out)
        )
        assert code == 0
        text = out.read_text()
        assert text.splitlines()[0].startswith("entity,t0")
        assert len(text.splitlines()) == 9

    def test_bad_entity_is_input_error(self, capsys, net_file):
        assert main(["simulate", "--net", net_file, "--fail", "zz"]) == 2

    def test_missing_file_is_input_error(self, capsys, tmp_path):
        assert main(["simulate", "--net", str(tmp_path / "nope.idr"), "--fail", ""]) == 2


class TestVulnerable:
    def test_exact(self, capsys, net_file):
        code, payload = run(capsys, "vulnerable", "--net", net_file, "--k", "2")
        assert code == 0
        assert payload["k"] == 2
        assert payload["total_failed"] == 7
        assert set(payload) == {"k", "attacked", "total_failed", "failed_set"}

    def test_greedy(self, capsys, net_file):
        code, payload = run(capsys, "vulnerable", "--net", net_file, "--k", "2", "--method", "greedy")
        assert code == 0
        assert payload["total_failed"] >= 5

    def test_cap_exit_code(self, capsys, net_file):
        assert main(["vulnerable", "--net", net_file, "--k", "4", "--cap", "3"]) == 3


class TestAeap:
    def test_exact(self, capsys, net_file):
        code, payload = run(
            capsys, "aeap", "--net", net_file, "--attacked", "b2,b3", "--s", "1", "--method", "exact"
        )
        assert code == 0
        assert payload["protected_count"] == 3
        assert payload["modifications"] == [{"idr_target": "a2", "auxiliary": "ALWAYS_ALIVE"}]
        assert payload["induced_before"] == 5 and payload["induced_after"] == 2

    def test_heuristic_default(self, capsys, net_file):
        code, payload = run(capsys, "aeap", "--net", net_file, "--attacked", "b2,b3", "--s", "2")
        assert code == 0
        assert payload["method"] == "heuristic"
        assert payload["protected_count"] >= 3

    def test_alg1_on_chain(self, capsys, tmp_path):
        path = tmp_path / "chain.idr"
        path.write_text(CHAIN)
        code, payload = run(
            capsys, "aeap", "--net", str(path), "--attacked", "b2", "--s", "1", "--method", "alg1"
        )
        assert code == 0
        assert payload["modifications"] == [{"idr_target": "a2", "auxiliary": "a3"}]
        assert payload["protected"] == ["a1", "a2", "b1"]

    def test_cap_exit_code(self, capsys, net_file):
        argv = ["aeap", "--net", net_file, "--attacked", "b2,b3", "--s", "3",
                "--method", "exact", "--cap", "2"]
        assert main(argv) == 3

    def test_budget_error(self, capsys, net_file):
        assert main(["aeap", "--net", net_file, "--attacked", "b2", "--s", "99"]) == 2


class TestExportLp:
    def test_writes_lp_and_sidecar(self, capsys, net_file, tmp_path):
        out = tmp_path / "model.lp"
        code, payload = run(
            capsys, "export-lp", "--net", net_file, "--attacked", "b2,b3", "--s", "1",
            "--out", str(out),
        )
        assert code == 0
        text = out.read_text()
        assert text.startswith("Minimize")
        sidecar = json.loads((tmp_path / "model.lp.json").read_text())
        assert sidecar["attacked"] == ["b2", "b3"]
        assert payload["variables"] == len(sidecar["variables"])


class TestGen:
    def test_to_file(self, capsys, tmp_path):
        cfg = tmp_path / "gen.cfg"
        cfg.write_text(GEN_CONFIG)
        out = tmp_path / "net.idr"
        code, payload = run(capsys, "gen", "--config", str(cfg), "--out", str(out))
        assert code == 0
        assert payload["n_a"] == 6 and payload["n_b"] == 5
        # generated file parses and matches the reported rule count
        code2, sim = run(capsys, "simulate", "--net", str(out), "--fail", "")
        assert code2 == 0

    def test_to_stdout_embeds_dsl(self, capsys, tmp_path):
        cfg = tmp_path / "gen.cfg"
        cfg.write_text(GEN_CONFIG)
        code, payload = run(capsys, "gen", "--config", str(cfg))
        assert code == 0
        assert payload["dsl"].startswith("a1")


class TestReduceSetcover:
    def test_json_payload(self, capsys):
        code, payload = run(
            capsys, "reduce-setcover", "--universe", "x1,x2,x3",
            "--subsets", "x1,x2;x2,x3;x3", "--x", "2",
        )
        assert code == 0
        assert payload["p_f_target"] == 5
        assert payload["attacked"] == ["a4", "a5", "a6"]
        assert payload["s"] == 2

    def test_writes_network(self, capsys, tmp_path):
        out = tmp_path / "cover.idr"
        code, payload = run(
            capsys, "reduce-setcover", "--universe", "x1", "--subsets", "x1", "--x", "1",
            "--out", str(out),
        )
        assert code == 0
        assert out.read_text().strip()

    def test_uncovered_element_is_input_error(self, capsys):
        argv = ["reduce-setcover", "--universe", "x1,x2", "--subsets", "x1", "--x", "1"]
        assert main(argv) == 2


class TestExperiment:
    def test_sweep_outputs(self, capsys, tmp_path):
        sweep = tmp_path / "sweep.cfg"
        sweep.write_text(SWEEP)
        out_dir = tmp_path / "results"
        code, payload = run(
            capsys, "experiment", "--sweep", str(sweep), "--out-dir", str(out_dir), "--no-timings"
        )
        assert code == 0
        csv_text = (out_dir / "records.csv").read_text()
        assert csv_text.splitlines()[0].startswith("instance,na,nb")
        assert len(csv_text.splitlines()) == 1 + 2 * 2  # two seeds x two budgets
        assert len(payload["svg"]) == 2
        # byte-determinism across runs when timings are off
        out2 = tmp_path / "results2"
        run(capsys, "experiment", "--sweep", str(sweep), "--out-dir", str(out2), "--no-timings")
        assert (out2 / "records.csv").read_text() == csv_text
        for svg in payload["svg"]:
            name = svg.split("/")[-1]
            assert (out2 / name).read_text() == (out_dir / name).read_text()
