import pytest

from qmarginal import files
from qmarginal.engine import MarginalInequality, generate_system
from qmarginal.spectra import SystemFormat


def fmt(*dims):
    return SystemFormat(dims)


class TestSystemFiles:
    def test_round_trip(self, tmp_path):
        system = generate_system(fmt(2, 2))
        path = tmp_path / "sys.txt"
        files.write_system(system, path, {"note": "round trip"})
        back = files.read_system(path)
        assert back.format == system.format
        assert set(back.inequalities) == set(system.inequalities)

    def test_parse_errors_carry_line_numbers(self):
        with pytest.raises(files.ParseError) as err:
            files.parse_system("format: 2x2\nrow: 1 0 | 1 -1 >= 0\n")
        assert "line 2" in str(err.value)
        with pytest.raises(files.ParseError):
            files.parse_system("row: 1 | 1 | 1 >= 0\n")
        with pytest.raises(files.ParseError):
            files.parse_system("format: 2x2\ncount: 3\n")
        with pytest.raises(files.ParseError):
            files.parse_system("format: 2x2\njunk line without colon\n")

    def test_comments_and_unknown_keys_ignored(self):
        text = ("# a comment\nformat: 2x2\ngenerator-seed: 5\n"
                "row: 1 0 0 -1 | 1 -1 | 0 0 >= 0\n")
        system = files.parse_system(text)
        assert len(system.inequalities) == 1


class TestFixtures:
    def test_all_fixture_rows_parse(self):
        for name in files.FORMAT_FIXTURES.values():
            fx = files.load_fixture(name)
            rows = fx.inequalities()
            assert len(rows) == fx.listed
            for iq in rows:
                assert iq == iq.canonical()

    def test_expansion_counts_match_headers(self):
        for name in files.FORMAT_FIXTURES.values():
            fx = files.load_fixture(name)
            assert len(fx.expand()) == fx.expanded

    def test_qubit_convention_round_trip(self):
        fx = files.load_fixture("qubits2")
        assert fx.convention == "trace-zero-scalar"
        got = fx.expand()
        reduced = {iq.canonical() for iq in generate_system(fmt(2, 2)).inequalities}
        # the published two-qubit rows are a subset of the candidate set
        assert got <= reduced

    def test_checksums_clean(self):
        assert files.verify_checksums() == []

    def test_checksum_detects_drift(self, tmp_path, monkeypatch):
        import shutil
        work = tmp_path / "fixtures"
        shutil.copytree(files.FIXTURE_DIR, work)
        (work / "qubits2.txt").write_text("tampered\n")
        monkeypatch.setattr(files, "FIXTURE_DIR", work)
        assert "qubits2.txt" in files.verify_checksums()

    def test_fixture_for_format(self):
        fx = files.fixture_for_format(fmt(2, 3))
        assert fx.format == fmt(2, 3)
        with pytest.raises(ValueError):
            files.fixture_for_format(fmt(5, 5))

    def test_stats_table_shape(self):
        table = files.stats_table()
        assert len(table) == 7
        by_format = {row["format"]: row for row in table}
        assert by_format["2x2"]["inequalities"] == 7
        assert by_format["2x2x2"]["inequalities"] == 40

    def test_qubit_edge_table(self):
        table = files.qubit_edge_table()
        assert set(table) == {2, 3, 4}
        assert len(table[2]) == 2
        assert len(table[3]) == 4
        assert len(table[4]) == 12


class TestVerifyFixture:
    def test_exact_match_two_qubits(self):
        from qmarginal.polytope import reduce_system
        reduced, _ = reduce_system(generate_system(fmt(2, 2)))
        diff = files.verify_fixture(reduced, files.load_fixture("qubits2"))
        assert diff.exact_match and diff.contained
        assert len(diff.matched) == 7

    def test_format_mismatch_rejected(self):
        system = generate_system(fmt(2, 2))
        with pytest.raises(ValueError):
            files.verify_fixture(system, files.load_fixture("format2x3"))

    def test_diff_reports_missing_and_extra(self):
        from qmarginal.engine import InequalitySystem
        system = InequalitySystem(fmt(2, 2))
        stray = MarginalInequality(fmt(2, 2), (5, 0, 0, -5), ((1, -1), (0, 0)))
        system.add(stray)
        diff = files.verify_fixture(system, files.load_fixture("qubits2"))
        assert not diff.exact_match
        assert len(diff.missing_from_generated) == 7
        assert diff.extra_in_generated == [stray.canonical()]
