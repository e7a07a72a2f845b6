import csv
import hashlib
import io
import json
import subprocess
import sys

import pytest

from congrundy.cli import EXIT_REFUSED, main
from congrundy.graph import complement, complete_graph, empty_graph, generate, InstanceSpec, read_dimacs, \
    read_manifest, write_dimacs

from conftest import TESTS, random_bipartite_connected


def write_graph(path, g):
    path.write_text(write_dimacs(g))
    return str(path)


def run_json(capsys, argv):
    assert main(argv) == 0
    return json.loads(capsys.readouterr().out)


def digest(folder):
    return {p.name: hashlib.sha256(p.read_bytes()).hexdigest() for p in sorted(folder.iterdir())}


class TestGen:
    def test_files_and_manifest(self, tmp_path):
        assert main(["gen", "--class", "rand", "--n", "15", "--eta", "0.4", "--count", "5",
                     "--seed", "7", "--out", str(tmp_path)]) == 0
        entries = read_manifest(tmp_path / "manifest.json")
        assert len(entries) == 5
        assert [e["file"] for e in entries] == [f"rand_15_0.4_{i}.col" for i in range(1, 6)]
        for e in entries:
            assert e["class"] == "random" and e["group"] == "rand_15_0.4"
            assert read_dimacs(tmp_path / e["file"]).n == 15
        assert len({e["seed"] for e in entries}) == 5

    def test_byte_identical(self, tmp_path):
        args = ["gen", "--class", "geo", "--n", "12", "--eta", "0.5", "--count", "3", "--seed", "3", "--out"]
        main(args + [str(tmp_path / "a")])
        main(args + [str(tmp_path / "b")])
        assert digest(tmp_path / "a") == digest(tmp_path / "b")

    def test_cbip_complements(self, tmp_path):
        for cls in ("bip", "cbip"):
            main(["gen", "--class", cls, "--n", "10", "--eta", "0.5", "--count", "2", "--seed", "1",
                  "--out", str(tmp_path / cls)])
        for i in (1, 2):
            bip = read_dimacs(tmp_path / "bip" / f"bip_10_0.5_{i}.col")
            cbip = read_dimacs(tmp_path / "cbip" / f"cbip_10_0.5_{i}.col")
            assert cbip == complement(bip)

    def test_invalid(self, tmp_path):
        with pytest.raises(SystemExit) as err:
            main(["gen", "--class", "rand", "--n", "5", "--eta", "1.5", "--out", str(tmp_path)])
        assert err.value.code == 2
        with pytest.raises(SystemExit):
            main(["gen", "--class", "nope", "--n", "5", "--eta", "0.5"])


class TestSolve:
    def test_exact_k5(self, tmp_path, capsys):
        rep = run_json(capsys, ["solve", write_graph(tmp_path / "k5.col", complete_graph(5)), "--algorithm", "exact"])
        assert rep["best_value"] == 5

    def test_brkga_bipartite(self, tmp_path, capsys):
        g = random_bipartite_connected(9, 24)
        rep = run_json(capsys, ["solve", write_graph(tmp_path / "b.col", g), "--algorithm", "brkga-rls",
                                "--time-limit", "1"])
        assert rep["best_value"] == 2
        assert rep["seed"] == 0 and rep["params"]["population_factor"] == 1.7

    def test_dsatur_k4(self, tmp_path, capsys):
        rep = run_json(capsys, ["solve", write_graph(tmp_path / "k4.col", complete_graph(4)),
                                "--algorithm", "heuristic:dsatur"])
        assert rep["best_value"] == 4

    def test_exact_refusal(self, tmp_path, capsys):
        g = generate(InstanceSpec("random", 60, 0.5, 1))
        assert main(["solve", write_graph(tmp_path / "big.col", g), "--algorithm", "exact"]) == EXIT_REFUSED
        assert "refused" in capsys.readouterr().err

    def test_connectify_recorded(self, tmp_path, capsys):
        rep = run_json(capsys, ["solve", write_graph(tmp_path / "e.col", empty_graph(4)),
                                "--algorithm", "heuristic:dsatur"])
        assert rep["connectify_edges_added"] == 3 and rep["best_value"] == 2
        rep = run_json(capsys, ["solve", str(tmp_path / "e.col"), "--algorithm", "heuristic:dsatur",
                                "--mode", "plain"])
        assert rep["connectify_edges_added"] == 0 and rep["best_value"] == 1

    def test_deterministic_and_config(self, tmp_path, capsys):
        inst = write_graph(tmp_path / "g.col", generate(InstanceSpec("random", 20, 0.3, 5)))
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"algorithm": "brkga-rls", "seed": 11, "max_generations": 30,
                                   "reset_generations": 5, "stop_at_bound": False}))
        outs = []
        for k in range(2):
            out = tmp_path / f"r{k}.json"
            assert main(["solve", inst, "--config", str(cfg), "--deterministic", "--out", str(out)]) == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]
        rep = json.loads(outs[0])
        assert rep["seed"] == 11 and rep["params"]["reset_generations"] == 5
        assert "elapsed" not in rep and rep["events"]

    def test_bad_config(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text("[1, 2]")
        inst = write_graph(tmp_path / "k3.col", complete_graph(3))
        with pytest.raises(SystemExit) as err:
            main(["solve", inst, "--config", str(cfg)])
        assert err.value.code == 2


class TestOtherCommands:
    def test_bounds(self, tmp_path, capsys):
        rep = run_json(capsys, ["bounds", write_graph(tmp_path / "k4.col", complete_graph(4))])
        assert rep["best"] == 4 and rep["max_degree_plus_one"] == 4

    def test_exact_and_heuristic(self, tmp_path, capsys):
        inst = write_graph(tmp_path / "k4.col", complete_graph(4))
        assert run_json(capsys, ["exact", inst])["value"] == 4
        assert run_json(capsys, ["exact", inst, "--mode", "plain"])["value"] == 4
        assert run_json(capsys, ["heuristic", inst])["value"] == 4
        assert run_json(capsys, ["heuristic", inst, "--name", "cmdf"])["value"] == 4

    def test_ls(self, tmp_path, capsys):
        inst = tmp_path / "g.col"
        inst.write_text("p edge 5 7\ne 1 4\ne 1 5\ne 2 3\ne 2 4\ne 3 4\ne 3 5\ne 4 5\n")
        rep = run_json(capsys, ["ls", str(inst), "--sequence", "4,3,1,5,2"])
        assert rep["input_value"] == 3 and rep["value"] == 4 and rep["moves"] >= 1
        with pytest.raises(SystemExit):
            main(["ls", str(inst), "--sequence", "1 2 3 4 5"])  # 2 has no earlier neighbor

    def test_export_ip(self, tmp_path, capsys, solver_command):
        inst = write_graph(tmp_path / "k3.col", complete_graph(3))
        rep = run_json(capsys, ["export-ip", inst, "--model", "standard", "--out-dir", str(tmp_path / "ip"),
                                "--solve", "--solver", solver_command, "--time-limit", "60"])
        assert (tmp_path / "ip" / "k3.standard.lp").exists() and (tmp_path / "ip" / "k3.standard.mst").exists()
        assert rep["warm_start_value"] == 3 and rep["objective"] == pytest.approx(3)

    def test_module_entry(self, tmp_path):
        inst = write_graph(tmp_path / "k3.col", complete_graph(3))
        out = subprocess.run([sys.executable, "-m", "congrundy", "exact", inst], capture_output=True, text=True)
        assert out.returncode == 0 and json.loads(out.stdout)["value"] == 3

    def test_parse_error(self, tmp_path):
        bad = tmp_path / "bad.col"
        bad.write_text("p edge 3 1\ne 1 9\n")
        with pytest.raises(SystemExit) as err:
            main(["bounds", str(bad)])
        assert err.value.code == 2


class TestBench:
    @pytest.fixture
    def manifest(self, tmp_path):
        main(["gen", "--class", "rand", "--n", "10", "--eta", "0.4", "--count", "2", "--seed", "1",
              "--out", str(tmp_path)])
        return tmp_path / "manifest.json"

    def bench(self, capsys, *argv):
        assert main(["bench", *argv]) == 0
        captured = capsys.readouterr()
        return captured.out, captured.err

    def test_single_run(self, manifest, capsys):
        out, _ = self.bench(capsys, str(manifest), "--algorithms", "brkga-rls", "--max-generations", "5")
        rows = list(csv.DictReader(io.StringIO(out)))
        for r in rows:
            assert float(r["brkga-rls_mean"]) == float(r["brkga-rls_max"])
        assert "diff_m" not in rows[0]

    def test_two_algorithms(self, manifest, capsys):
        out, _ = self.bench(capsys, str(manifest), "--algorithms", "brkga-b,brkga-rls", "--runs", "2",
                            "--max-generations", "5")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert [r["kind"] for r in rows] == ["instance", "instance", "group"]
        assert all(r["diff_m"] != "" and r["diff_x"] != "" for r in rows)
        assert rows[2]["ge_mean"] != ""

    def test_csv_golden(self, manifest, capsys):
        out, _ = self.bench(capsys, str(manifest), "--algorithms", "heuristic:dsatur,brkga-rls",
                            "--max-generations", "5", "--seed", "2")
        assert out == (TESTS / "golden" / "bench.csv").read_text()

    def test_missing_file(self, manifest, capsys):
        data = json.loads(manifest.read_text())
        data["instances"].append({"file": "gone.col", "group": "x"})
        manifest.write_text(json.dumps(data))
        out, err = self.bench(capsys, str(manifest), "--algorithms", "heuristic:dsatur", "--max-generations", "1")
        assert "gone.col" in err
        assert len(list(csv.DictReader(io.StringIO(out)))) == 3
