import json

import pytest

from qmarginal import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEdges:
    def test_two_qubits(self, capsys):
        code, out, err = run(capsys, "edges", "--format", "2x2")
        assert code == 0
        lines = [l for l in out.splitlines() if l]
        assert len(lines) == 3
        assert "3 extremal edges" in err

    def test_bad_format_is_usage_error(self, capsys):
        code, _, err = run(capsys, "edges", "--format", "bogus")
        assert code == 1
        assert "error:" in err


class TestCubicles:
    def test_counts(self, capsys):
        code, out, _ = run(capsys, "cubicles", "--format", "2x3")
        assert code == 0
        assert len([l for l in out.splitlines() if l]) == 5


class TestGenerateReduce:
    def test_generate_to_file_then_reduce(self, capsys, tmp_path):
        gen = tmp_path / "gen.txt"
        red = tmp_path / "red.txt"
        code, _, _ = run(capsys, "generate", "--format", "2x2",
                         "--output", str(gen))
        assert code == 0
        assert "count: 7" in gen.read_text()
        code, _, err = run(capsys, "reduce", "--format", "2x2",
                           "--system", str(gen), "--output", str(red))
        assert code == 0
        summary = json.loads(err.strip().splitlines()[-1])
        assert summary["kept"] == 7
        assert "count: 7" in red.read_text()

    def test_generate_stdout(self, capsys):
        code, out, _ = run(capsys, "generate", "--format", "2x2")
        assert code == 0
        assert out.startswith("format: 2x2")

    def test_missing_system_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "reduce", "--format", "2x2",
                           "--system", str(tmp_path / "absent.txt"))
        assert code == 1
        assert "error:" in err


class TestCheck:
    def test_compatible_exit_zero(self, capsys):
        code, out, _ = run(capsys, "check", "--format", "2x2",
                           "--composite", "1/4,1/4,1/4,1/4",
                           "--margins", "1/2,1/2", "1/2,1/2")
        assert code == 0
        assert json.loads(out)["compatible"] is True

    def test_incompatible_exit_two(self, capsys):
        code, out, _ = run(capsys, "check", "--format", "2x2",
                           "--composite", "1,0,0,0",
                           "--margins", "1,0", "1/2,1/2")
        assert code == 2
        verdict = json.loads(out)
        assert verdict["compatible"] is False
        assert verdict["violated"]


class TestKron:
    def test_plain(self, capsys):
        code, out, _ = run(capsys, "kron", "3,1", "3,1", "2,2")
        assert code == 0
        assert out.strip() == "1"

    def test_reduced(self, capsys):
        code, out, _ = run(capsys, "kron", "--reduced", "1", "1", "1")
        assert code == 0
        assert out.strip() == "1"

    def test_wrong_arity(self, capsys):
        code, _, err = run(capsys, "kron", "2,1", "2,1")
        assert code == 1

    def test_weight_mismatch_is_error(self, capsys):
        code, _, err = run(capsys, "kron", "2", "1,1", "3")
        assert code == 1
        assert "error:" in err


class TestSample:
    def test_reduced_system_sample(self, capsys):
        code, out, _ = run(capsys, "sample", "--format", "2x2",
                           "--trials", "20", "--seed", "3")
        assert code == 0
        report = json.loads(out)
        assert report["compatible"] is True
        assert report["trials"] == 20
