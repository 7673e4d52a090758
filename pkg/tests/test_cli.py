"""Batch runner artifacts, determinism, and the evaluate mode."""
import csv
import re
from pathlib import Path

import pytest

from evoqc.cli import main
from evoqc.fixtures import load_circuit
from evoqc.gates import parse, serialize


def run_cli(*args):
    return main([str(a) for a in args])


SMALL = [
    "--problem", "fourier", "--qubits", "2",
    "--pop", "60", "--elite", "15", "--gens", "5",
    "--init-len", "6",
]


def read_text(path):
    return Path(path).read_text()


class TestSearchArtifacts:
    def test_artifact_set(self, tmp_path, capsys):
        rc = run_cli(*SMALL, "--runs", "2", "--seed", "3", "--out", tmp_path)
        assert rc == 0
        for r in (0, 1):
            d = tmp_path / f"run_{r}"
            assert (d / "pareto.csv").is_file()
            assert (d / "stats.csv").is_file()
            assert (d / "best_overall.qc").is_file()
            assert (d / "best_worst.qc").is_file()
        assert (tmp_path / "summary.csv").is_file()
        out = capsys.readouterr().out
        assert "run 0:" in out and "run 1:" in out
        assert re.search(r"err_1e3: \d+/2 runs", out)

    def test_pareto_csv_schema(self, tmp_path):
        run_cli(*SMALL, "--seed", "1", "--out", tmp_path)
        with open(tmp_path / "run_0" / "pareto.csv") as f:
            rows = list(csv.reader(f))
        assert rows[0] == [
            "overall_error", "worst_error", "n_roty", "n_cphase", "n_swap",
            "total_gates", "circuit",
        ]
        for row in rows[1:]:
            assert 0.0 <= float(row[0]) <= 1.0
            counts = [int(c) for c in row[2:5]]
            assert int(row[5]) == sum(counts)
            circuit = row[6].replace(";", "\n") + "\n"
            genome = parse(circuit, 2) if row[6] else ()
            assert len(genome) == int(row[5])

    def test_stats_csv_schema(self, tmp_path):
        run_cli(*SMALL, "--seed", "1", "--out", tmp_path)
        with open(tmp_path / "run_0" / "stats.csv") as f:
            rows = list(csv.reader(f))
        assert rows[0] == ["generation", "best_overall_error", "best_worst_error", "wall_ms"]
        assert len(rows) == 1 + 6  # initialization plus five generations
        assert [r[0] for r in rows[1:]] == [str(i) for i in range(6)]
        best = [float(r[1]) for r in rows[1:]]
        assert all(b <= a + 1e-15 for a, b in zip(best, best[1:]))

    def test_summary_csv(self, tmp_path):
        run_cli(*SMALL, "--runs", "3", "--seed", "7", "--out", tmp_path)
        with open(tmp_path / "summary.csv") as f:
            rows = list(csv.reader(f))
        assert rows[0] == ["run", "err_1e3", "err_1e3_compact"]
        assert [r[0] for r in rows[1:]] == ["0", "1", "2"]
        for row in rows[1:]:
            for cell in row[1:]:
                assert cell == "" or int(cell) >= 0

    def test_best_circuit_files_parse(self, tmp_path):
        run_cli(*SMALL, "--seed", "1", "--out", tmp_path)
        text = read_text(tmp_path / "run_0" / "best_overall.qc")
        assert text.startswith("# problem=fourier qubits=2\n")
        parse(text, 2)

    def test_deterministic_artifacts(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        run_cli(*SMALL, "--runs", "2", "--seed", "5", "--out", a)
        run_cli(*SMALL, "--runs", "2", "--seed", "5", "--out", b)
        assert read_text(a / "summary.csv") == read_text(b / "summary.csv")
        for r in (0, 1):
            for name in ("pareto.csv", "best_overall.qc", "best_worst.qc"):
                assert read_text(a / f"run_{r}" / name) == read_text(b / f"run_{r}" / name)
            # stats differ only in the wall-clock column
            sa = [row[:3] for row in csv.reader(read_text(a / f"run_{r}" / "stats.csv").splitlines())]
            sb = [row[:3] for row in csv.reader(read_text(b / f"run_{r}" / "stats.csv").splitlines())]
            assert sa == sb

    def test_seed_changes_results(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        run_cli(*SMALL, "--seed", "1", "--out", a)
        run_cli(*SMALL, "--seed", "2", "--out", b)
        assert read_text(a / "run_0" / "pareto.csv") != read_text(b / "run_0" / "pareto.csv")

    def test_grover_threshold_names(self, tmp_path):
        run_cli(
            "--problem", "grover", "--qubits", "2", "--pop", "50", "--elite", "10",
            "--gens", "3", "--seed", "1", "--out", tmp_path,
        )
        with open(tmp_path / "summary.csv") as f:
            header = next(csv.reader(f))
        assert header == ["run", "err_1e2", "err_1e3", "err_1e3_optimal"]


class TestEvaluateMode:
    def write(self, tmp_path, name):
        genome, n = load_circuit(name)
        path = tmp_path / f"{name}.qc"
        path.write_text(serialize(genome))
        return path, n

    def test_evaluate_fixture(self, tmp_path, capsys):
        path, n = self.write(tmp_path, "qft3_no_pi4")
        rc = run_cli("--problem", "fourier", "--qubits", n, "--evaluate", path)
        assert rc == 0
        out = capsys.readouterr().out
        values = dict(
            line.split(" = ") for line in out.strip().splitlines()
        )
        assert float(values["overall_error"]) == pytest.approx(0.0565, abs=5e-4)
        assert float(values["worst_error"]) == pytest.approx(0.0761, abs=5e-4)
        assert values["total_gates"] == "9"

    def test_evaluate_grover_fixture(self, tmp_path, capsys):
        path, n = self.write(tmp_path, "grover3")
        rc = run_cli("--problem", "grover", "--qubits", n, "--evaluate", path)
        assert rc == 0
        out = capsys.readouterr().out
        assert "overall_error = 0.0546875" in out
        assert "n_oracle = 2" in out

    def test_evaluate_malformed_file(self, tmp_path, capsys):
        path = tmp_path / "bad.qc"
        path.write_text("Y 1 notanangle\n")
        rc = run_cli("--problem", "fourier", "--qubits", "2", "--evaluate", path)
        assert rc == 2
        assert "line 1" in capsys.readouterr().err

    def test_evaluate_missing_file(self, tmp_path, capsys):
        rc = run_cli("--problem", "fourier", "--qubits", "2",
                     "--evaluate", tmp_path / "absent.qc")
        assert rc == 2
        assert "error:" in capsys.readouterr().err

    def test_evaluate_wrong_gate_set(self, tmp_path, capsys):
        path, _ = self.write(tmp_path, "grover3")
        rc = run_cli("--problem", "fourier", "--qubits", "3", "--evaluate", path)
        assert rc == 2


class TestBadArguments:
    def test_bad_qubits(self, tmp_path, capsys):
        rc = run_cli("--problem", "fourier", "--qubits", "0",
                     "--gens", "1", "--out", tmp_path)
        assert rc == 2

    def test_bad_runs(self, tmp_path):
        rc = run_cli(*SMALL, "--runs", "0", "--out", tmp_path)
        assert rc == 2

    def test_bad_elite(self, tmp_path):
        rc = run_cli("--problem", "fourier", "--qubits", "2", "--pop", "10",
                     "--elite", "50", "--gens", "1", "--out", tmp_path)
        assert rc == 2

    def test_unknown_problem_rejected_by_parser(self):
        with pytest.raises(SystemExit):
            run_cli("--problem", "banana", "--qubits", "2")
