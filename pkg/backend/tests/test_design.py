"""
Tests for the experiment design search.
"""
import os
import sys

import pytest

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.algebra.decompose import minsets
from src.analysis.design import (
    STATUS_ALREADY_UNIQUE,
    STATUS_FOUND,
    STATUS_NONE,
    DesignReport,
    suggest_extensions,
    verify_extension,
)
from src.datamodel import Component
from src.errors import CapacityError, DataValidationError

from worked_examples import (
    CUBE_POINTS,
    PLANE_POINTS,
    TYPE_3A_POINTS,
    cube_function,
    dataset,
    inputs,
    plane_function,
)


class TestCubeExample:

    def setup_method(self):
        self.v = inputs(2, 3, CUBE_POINTS)

    def test_single_experiment(self):
        report = suggest_extensions(self.v, k=1)
        assert report.status == STATUS_FOUND
        assert [s.added_points for s in report.suggestions] == [((0, 0, 1),)]
        assert report.signed_certified
        assert report.note == ""

    def test_suggested_experiment_fixes_the_signed_minset(self):
        rows = [(p, cube_function(p)) for p in CUBE_POINTS]
        base = dataset(2, 3, rows)
        before = minsets(base)
        assert before.signed_minsets == (
            Component.from_tokens(["x1", "!x3"]),
            Component.from_tokens(["!x2"]),
        )
        after = minsets(base.with_rows([((0, 0, 1), cube_function((0, 0, 1)))]))
        assert after.signed_minsets == (Component.from_tokens(["x1", "!x3"]),)

    def test_two_experiments_skip_supersets(self):
        report = suggest_extensions(self.v, k=2)
        assert report.suggestions[0].added_points == ((0, 0, 1),)
        for suggestion in report.suggestions[1:]:
            assert len(suggestion.added_points) == 2
            assert (0, 0, 1) not in suggestion.added_points
            assert verify_extension(self.v, suggestion.added_points)
        keys = [s.rank_key for s in report.suggestions]
        assert keys == sorted(keys)

    def test_verify_extension(self):
        assert verify_extension(self.v, [(0, 0, 1)])
        assert not verify_extension(self.v, [(1, 1, 0)])

    def test_overlap(self):
        with pytest.raises(DataValidationError) as info:
            verify_extension(self.v, [(1, 0, 0)])
        assert info.value.kind == "overlap"


class TestPlaneExample:

    def test_three_suggestions_in_order(self):
        report = suggest_extensions(inputs(3, 2, PLANE_POINTS), k=1)
        assert report.status == STATUS_FOUND
        assert [s.added_points for s in report.suggestions] == [((0, 2),), ((1, 0),), ((2, 2),)]
        assert all(s.resulting_unique for s in report.suggestions)
        assert not report.signed_certified
        assert "q > 2" in report.note

    def test_suggested_experiment_fixes_the_unsigned_minset(self):
        base = dataset(3, 2, [(p, plane_function(p)) for p in PLANE_POINTS])
        assert [c.tokens() for c in minsets(base).unsigned_minsets] == [["x1"], ["x2"]]
        extended = base.with_rows([((0, 2), plane_function((0, 2)))])
        assert [c.tokens() for c in minsets(extended).unsigned_minsets] == [["x1"]]


class TestStatuses:

    def test_already_unique(self):
        report = suggest_extensions(inputs(3, 3, TYPE_3A_POINTS))
        assert report.status == STATUS_ALREADY_UNIQUE
        assert report.suggestions == ()

    def test_budget_too_small(self):
        v = inputs(2, 3, [(0, 0, 0), (1, 1, 1)])
        assert suggest_extensions(v, k=1).status == STATUS_NONE
        assert suggest_extensions(v, k=2).status == STATUS_FOUND

    def test_bad_k(self):
        with pytest.raises(DataValidationError):
            suggest_extensions(inputs(2, 3, CUBE_POINTS), k=0)

    def test_grid_cap(self):
        with pytest.raises(CapacityError):
            suggest_extensions(inputs(2, 3, CUBE_POINTS), max_grid=4)


class TestDesignReportJson:

    def test_round_trip_keeps_points(self):
        report = suggest_extensions(inputs(2, 3, CUBE_POINTS), k=2)
        assert len(report.suggestions) > 1
        restored = DesignReport.model_validate_json(report.model_dump_json())
        assert restored == report
        assert restored.suggestions[0].added_points == ((0, 0, 1),)
        assert isinstance(restored.suggestions[0].added_points[0], tuple)

    def test_round_trip_with_note(self):
        report = suggest_extensions(inputs(3, 2, PLANE_POINTS))
        assert DesignReport.model_validate_json(report.model_dump_json()) == report
