"""
Tests for data file parsing and report rendering.
"""
import json
import os
import sys

import pytest

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.algebra.decompose import minsets
from src.analysis.design import suggest_extensions
from src.analysis.uniqueness import build_certificate
from src.datamodel import DataSet, InputSet
from src.errors import DataValidationError, InputParseError
from src.orchestration import reports
from src.orchestration.inputs import dump_json, parse_csv, parse_input, parse_json

from worked_examples import CUBE_POINTS, EX1, F5, NO_SIGNED, NON_BOOLEAN, dataset, inputs

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


class TestJsonFiles:

    def test_data_set(self):
        data = parse_input(os.path.join(DATA_DIR, "non_boolean.json"))
        assert isinstance(data, DataSet)
        assert data == dataset(4, 3, NON_BOOLEAN)

    def test_input_set(self):
        data = parse_json('{"q": 3, "n": 2, "rows": [{"input": [0, 1]}, {"input": [2, 2]}]}')
        assert isinstance(data, InputSet)
        assert data.points == ((0, 1), (2, 2))

    def test_empty_rows_give_a_data_set(self):
        data = parse_json('{"q": 2, "n": 2, "rows": []}')
        assert isinstance(data, DataSet)
        assert data.m == 0

    def test_mixed_rows(self):
        text = '{"q": 2, "n": 1, "rows": [{"input": [0], "output": 1}, {"input": [1]}]}'
        with pytest.raises(DataValidationError) as info:
            parse_json(text)
        assert info.value.kind == "format"
        assert info.value.row == 1

    def test_malformed_json_reports_a_line(self):
        with pytest.raises(InputParseError) as info:
            parse_json('{\n"q": 2,\n"n": 1\n"rows": []}')
        assert info.value.line is not None
        assert "(line" in str(info.value)

    def test_missing_field(self):
        with pytest.raises(InputParseError) as info:
            parse_json('{"q": 2, "rows": []}')
        assert info.value.kind == "format"

    def test_contradictory_rows(self):
        text = '{"q": 2, "n": 1, "rows": [{"input": [0], "output": 1}, {"input": [0], "output": 0}]}'
        with pytest.raises(DataValidationError) as info:
            parse_json(text)
        assert info.value.kind == "contradictory"

    def test_bad_q(self):
        with pytest.raises(DataValidationError) as info:
            parse_json('{"q": 1, "n": 2, "rows": []}')
        assert info.value.kind == "range"

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputParseError):
            parse_input(tmp_path / "absent.json")

    def test_round_trip(self):
        for data in (dataset(5, 5, F5), inputs(2, 3, CUBE_POINTS)):
            assert parse_json(dump_json(data)) == data

    def test_inputs_are_written_without_outputs(self):
        record = json.loads(dump_json(inputs(2, 3, CUBE_POINTS)))
        assert all("output" not in row for row in record["rows"])


class TestCsvFiles:

    def test_input_set_with_inferred_q(self):
        data = parse_input(os.path.join(DATA_DIR, "type3a.csv"))
        assert isinstance(data, InputSet)
        assert data.spec.q == 3
        assert data.size == 4

    def test_explicit_q(self):
        data = parse_input(os.path.join(DATA_DIR, "cube.csv"), q=3)
        assert data.spec.q == 3

    def test_data_set(self, tmp_path):
        path = tmp_path / "ex1.csv"
        path.write_text("x1,x2,x3,y\n1,1,1,0\n0,0,0,0\n1,1,0,1\n")
        assert parse_csv(path) == dataset(2, 3, EX1)

    def test_bad_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b\n0,1\n")
        with pytest.raises(InputParseError) as info:
            parse_csv(path)
        assert info.value.line == 1

    def test_non_integer_entry(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x1,x2\n0,1\n1,a\n")
        with pytest.raises(InputParseError) as info:
            parse_csv(path)
        assert info.value.line == 3

    def test_too_many_fields(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x1,x2,y\n0,1,1\n1,1,0,5\n")
        with pytest.raises(InputParseError) as info:
            parse_csv(path)
        assert info.value.line == 3

    def test_mixed_outputs(self, tmp_path):
        path = tmp_path / "mixed.csv"
        path.write_text("x1,x2,y\n0,1,1\n1,1,\n")
        with pytest.raises(DataValidationError) as info:
            parse_csv(path)
        assert info.value.kind == "format"


class TestMinSetReports:

    def test_text(self):
        text = reports.render_minsets_text(minsets(dataset(4, 3, NON_BOOLEAN)))
        assert "Unsigned min-sets:   {x1}" in text
        assert "✅ 2 signed min-set(s)" in text

    def test_text_without_signed_minsets(self):
        text = reports.render_minsets_text(minsets(dataset(3, 3, NO_SIGNED)))
        assert "❌ No unate function fits the data" in text

    def test_json_round_trip(self):
        report = minsets(dataset(5, 5, F5))
        output = reports.MinSetsOutput.from_report(report, 5, 5)
        assert output.signed == [["x1", "x5"], ["!x3", "x5"]]
        restored = reports.MinSetsOutput.model_validate_json(output.model_dump_json())
        assert restored.to_report() == report

    def test_dot(self):
        dot = reports.render_minsets_dot(minsets(dataset(2, 3, EX1)))
        assert dot.count("digraph") == 4
        assert dot.count("{") == dot.count("}")
        assert 'digraph signed_1 {' in dot
        assert '"x3" -> "f" [label="−"];' in dot
        assert '"x1" -> "f" [label="+"];' in dot


class TestOtherReports:

    def test_certificate_text(self):
        text = reports.render_certificate_text(build_certificate(inputs(2, 3, CUBE_POINTS)))
        assert "❌ Not cylindrically connected: {s1=0} separates (0, 0, 0) and (0, 1, 1)" in text
        assert "Diagonal: length 2 at (0, 1, 1) (corner point)" in text

    def test_design_text(self):
        text = reports.render_design_text(suggest_extensions(inputs(2, 3, CUBE_POINTS)))
        assert "1. add 001" in text

    def test_oracle_text(self):
        comparison = reports.OracleComparison(
            q=2, n=3, m=3, model_space={"count": 32},
            checks=[reports.OracleCheck(kind="signed", status="FAIL", strategy="completion",
                                        algebraic=[["x1"]], oracle=[], only_algebraic=[["x1"]])],
        )
        text = reports.render_oracle_text(comparison)
        assert not comparison.passed
        assert "|Mod(D)| = 32" in text
        assert "❌ signed: FAIL" in text

    def test_oracle_comparison_round_trip(self):
        comparison = reports.OracleComparison(
            q=5, n=5, m=5, model_space={"base": 5, "exponent": 3120},
            checks=[
                reports.OracleCheck(kind="unsigned", status="PASS", strategy="witness",
                                    algebraic=[["x1"], ["x5"]], oracle=[["x1"], ["x5"]]),
                reports.OracleCheck(kind="signed", status="FAIL", strategy="completion", model_count=6,
                                    algebraic=[["x1", "!x3"]], oracle=[], only_algebraic=[["x1", "!x3"]],
                                    consistent_algebraic=True, consistent_oracle=False),
            ],
        )
        restored = reports.OracleComparison.model_validate_json(comparison.model_dump_json())
        assert restored == comparison
        assert not restored.passed
