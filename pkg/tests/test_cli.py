import json

import pytest

from gaudinrsk.cli import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


class TestRsk:
    def test_forward(self, capsys):
        code, report = run(capsys, "rsk", "--matrix", "[[0,2,1],[1,0,1]]")
        assert code == EXIT_OK
        assert report["P"] == [[1, 2, 3, 3], [2]]
        assert report["Q"] == [[1, 1, 1, 2], [2]]
        assert report["shape"] == [4, 1]

    def test_inverse_roundtrip(self, capsys):
        code, report = run(
            capsys, "rsk", "--inverse",
            "--p", "[[1,2,3,3],[2]]", "--q", "[[1,1,1,2],[2]]",
            "--n", "3", "--r", "2",
        )
        assert code == EXIT_OK
        assert report["matrix"] == [[0, 2, 1], [1, 0, 1]]

    def test_file_input(self, capsys, tmp_path):
        path = tmp_path / "m.json"
        path.write_text("[[1,0],[0,1]]")
        code, report = run(capsys, "rsk", "--file", str(path))
        assert code == EXIT_OK
        assert report["P"] == [[1, 2]]

    def test_check_suite(self, capsys):
        code, report = run(capsys, "rsk", "--check", "--samples", "50")
        assert code == EXIT_OK
        assert report["ok"]
        assert report["failures"] == []
        assert report["checked"] > 50

    def test_bad_matrix(self, capsys):
        assert main(["rsk", "--matrix", "[[1,-2]]"]) == EXIT_USAGE

    def test_missing_input(self, capsys):
        assert main(["rsk"]) == EXIT_USAGE


class TestCrystal:
    def test_block_graph(self, capsys):
        code, report = run(capsys, "crystal", "--rank", "2", "--col-sums", "[1,1]")
        assert code == EXIT_OK
        assert len(report["elements"]) == 4
        assert all(e["index"] == 1 for e in report["edges"])
        assert len(report["edges"]) == 2

    def test_shape_graph(self, capsys):
        code, report = run(capsys, "crystal", "--rank", "2", "--shape", "[2]")
        assert code == EXIT_OK
        assert len(report["elements"]) == 3
        assert len(report["edges"]) == 2

    def test_needs_selector(self, capsys):
        assert main(["crystal", "--rank", "2"]) == EXIT_USAGE


class TestFlow:
    def test_block_agreement(self, capsys):
        code, report = run(capsys, "flow", "--r", "2", "--n", "2",
                           "--col-sums", "[1,1]")
        assert code == EXIT_OK
        assert report["agreement"]
        assert report["checked"] == 4

    def test_budget_overflow(self, capsys):
        assert main(["flow", "--r", "3", "--n", "3", "--col-sums", "[4,4,4]",
                     "--budget", "100"]) == EXIT_USAGE

    def test_needs_block_selector(self, capsys):
        assert main(["flow", "--r", "2", "--n", "2"]) == EXIT_USAGE

    def test_trace_written(self, capsys, tmp_path):
        trace = tmp_path / "trace.csv"
        code, _ = run(capsys, "flow", "--r", "2", "--n", "2",
                      "--col-sums", "[1,1]", "--trace", str(trace))
        assert code == EXIT_OK
        lines = trace.read_text().strip().splitlines()
        assert lines[0] == "leg,t,branch,eigenvalue"
        assert len(lines) > 10


class TestCells:
    def test_right_cells(self, capsys):
        code, report = run(capsys, "cells", "--n", "3", "--kind", "right")
        assert code == EXIT_OK
        assert report["matches_kl"]
        assert report["block_sizes"] == [1, 1, 2, 2]

    def test_unknown_kind(self, capsys):
        assert main(["cells", "--n", "3", "--kind", "middle"]) == EXIT_USAGE


class TestReports:
    def test_deterministic_bytes(self, tmp_path):
        out1 = tmp_path / "a.json"
        out2 = tmp_path / "b.json"
        argv = ["rsk", "--check", "--samples", "25", "--seed", "7"]
        assert main(argv + ["--out", str(out1)]) == EXIT_OK
        assert main(argv + ["--out", str(out2)]) == EXIT_OK
        assert out1.read_bytes() == out2.read_bytes()

    def test_seed_changes_sampling(self, capsys):
        _, r1 = run(capsys, "rsk", "--check", "--samples", "25", "--seed", "1",
                    "--max-dim", "2", "--max-entry", "1")
        _, r2 = run(capsys, "rsk", "--check", "--samples", "25", "--seed", "2",
                    "--max-dim", "2", "--max-entry", "1")
        assert r1["config"]["seed"] != r2["config"]["seed"]

    def test_config_embedded(self, capsys):
        _, report = run(capsys, "rsk", "--matrix", "[[1]]")
        assert report["config"]["matrix"] == "[[1]]"
        assert report["config"]["seed"] == 0

    def test_config_file_defaults_and_override(self, capsys, tmp_path):
        cfg = tmp_path / "flow.cfg"
        cfg.write_text("# defaults\nmatrix=[[1,0],[0,1]]\n")
        code, report = run(capsys, "rsk", "--config", str(cfg))
        assert code == EXIT_OK
        assert report["P"] == [[1, 2]]
        code, report = run(capsys, "rsk", "--config", str(cfg),
                           "--matrix", "[[0,1],[1,0]]")
        assert code == EXIT_OK
        assert report["P"] == [[1], [2]]

    def test_unknown_subcommand(self, capsys):
        assert main(["bogus"]) == EXIT_USAGE
