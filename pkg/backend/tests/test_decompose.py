"""
Tests for primary decomposition and the unsigned / signed projections.
"""
import os
import sys
import unittest

import numpy as np
import pytest

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.algebra import bitsets
from src.algebra.decompose import (
    baseline_signed_decomposition,
    contains_monomial,
    is_prime,
    minimal_transversals,
    minimize_generators,
    minsets,
    project_signed,
    project_unsigned,
    signed_minset_count,
    unsigned_minset_count,
)
from src.algebra.ideals import build_ideal
from src.datamodel import Alphabet, Component, DataSet, FieldSpec, Ideal, Monomial, negate_coordinates
from src.errors import CapacityError, DataValidationError, UnitIdealError
from src.orchestration.benchmark import random_dataset

from worked_examples import (
    EX1,
    F5,
    NO_SIGNED,
    NON_BOOLEAN,
    ONE_UNSIGNED_TWO_SIGNED,
    THREE_MINSETS,
    TWO_UNSIGNED_ONE_SIGNED,
    dataset,
)


def components(*groups):
    return tuple(Component.from_tokens(g) for g in groups)


def plain_ideal(n, *groups):
    return Ideal(Alphabet.PLAIN, n, tuple(Monomial.from_tokens(g) for g in groups))


class TestMinSetGoldens(unittest.TestCase):
    """Hand-checked min-sets of the worked examples."""

    @classmethod
    def setUpClass(cls):
        cls.non_boolean = minsets(dataset(4, 3, NON_BOOLEAN))
        cls.f5 = minsets(dataset(5, 5, F5))
        cls.ex1 = minsets(dataset(2, 3, EX1))

    def test_non_boolean(self):
        self.assertEqual(self.non_boolean.unsigned_minsets, components(["x1"]))
        self.assertEqual(self.non_boolean.signed_minsets, components(["x1", "x2"], ["x1", "!x3"]))
        self.assertTrue(self.non_boolean.signed_consistent)

    def test_f5(self):
        self.assertEqual(
            self.f5.extended_components,
            components(["x1", "x5"], ["!x2", "!x5", "x5"], ["!x3", "x5"], ["!x4", "!x5", "x5"]),
        )
        self.assertEqual(
            self.f5.unsigned_minsets,
            components(["x1", "x5"], ["x2", "x5"], ["x3", "x5"], ["x4", "x5"]),
        )
        self.assertEqual(self.f5.signed_minsets, components(["x1", "x5"], ["!x3", "x5"]))

    def test_ex1(self):
        self.assertEqual(self.ex1.unsigned_minsets, components(["x1", "x3"], ["x2", "x3"]))
        self.assertEqual(self.ex1.signed_minsets, components(["x1", "!x3"], ["x2", "!x3"]))
        self.assertEqual(self.ex1.unsigned_variable_sets, [(1, 3), (2, 3)])

    def test_two_unsigned_one_signed(self):
        report = minsets(dataset(2, 3, TWO_UNSIGNED_ONE_SIGNED))
        self.assertEqual(report.extended_components, components(["x1", "!x1", "x3", "!x3"], ["x2"]))
        self.assertEqual(report.unsigned_minsets, components(["x1", "x3"], ["x2"]))
        self.assertEqual(report.signed_minsets, components(["x2"]))

    def test_one_unsigned_two_signed(self):
        report = minsets(dataset(3, 3, ONE_UNSIGNED_TWO_SIGNED))
        self.assertEqual(report.unsigned_minsets, components(["x2"]))
        self.assertEqual(report.signed_minsets, components(["x1", "x2"], ["x2", "x3"]))

    def test_no_signed(self):
        report = minsets(dataset(3, 3, NO_SIGNED))
        self.assertFalse(report.signed_consistent)
        self.assertEqual(report.signed_minsets, ())
        self.assertEqual(report.unsigned_minsets, components(["x2"]))

    def test_three_minsets(self):
        report = minsets(dataset(2, 3, THREE_MINSETS))
        self.assertEqual(
            report.extended_components,
            components(["x1", "!x2"], ["x1", "x3"], ["!x2", "x3"]),
        )
        self.assertEqual(len(report.signed_minsets), 3)


class TestEdgeCases:

    def test_constant_data(self):
        report = minsets(dataset(3, 2, [((0, 0), 2), ((1, 2), 2)]))
        assert report.unsigned_minsets == (Component(),)
        assert report.signed_minsets == (Component(),)
        assert report.signed_consistent

    def test_empty_data(self):
        report = minsets(dataset(2, 4, []))
        assert report.unsigned_minsets == (Component(),)
        assert report.signed_consistent

    def test_contradictory_data(self):
        raw = DataSet(spec=FieldSpec(q=2, n=1), rows=[((0,), 0), ((0,), 1)])
        with pytest.raises(DataValidationError):
            minsets(raw)

    def test_unit_ideal(self):
        with pytest.raises(UnitIdealError):
            minimal_transversals(plain_ideal(2, ["x1"], []))

    def test_zero_ideal(self):
        assert minimal_transversals(Ideal(Alphabet.EXTENDED, 3)) == [Component()]

    def test_project_signed_of_nothing(self):
        assert project_signed([]) == ([], True)


class TestDecomposition:

    def test_two_generators(self):
        ideal = plain_ideal(3, ["x1", "x2"], ["x2", "x3"])
        assert minimal_transversals(ideal) == list(components(["x1", "x3"], ["x2"]))
        assert not contains_monomial(ideal, Monomial.from_tokens(["x1", "x3"]))
        assert contains_monomial(ideal, Monomial.from_tokens(["x1", "x2"]))

    def test_intersection_of_components_is_the_ideal(self):
        rng = np.random.default_rng(3)
        for _ in range(40):
            n = int(rng.integers(1, 4))
            d = random_dataset(rng, FieldSpec(q=3, n=n), int(rng.integers(0, min(5, 3**n) + 1)))
            ideal = build_ideal(d, Alphabet.EXTENDED)
            parts = minimal_transversals(ideal)
            for mask in range(1 << (2 * n)):
                monomial = Monomial(mask)
                in_all = all(c.intersects(monomial) for c in parts)
                assert in_all == contains_monomial(ideal, monomial)

    def test_minimize_is_idempotent(self):
        ideal = build_ideal(dataset(5, 5, F5), Alphabet.EXTENDED)
        once = minimize_generators(ideal)
        assert minimize_generators(once) == once
        assert len(once.generators) == 3

    def test_is_prime(self):
        assert is_prime(Ideal(Alphabet.PLAIN, 2))
        assert is_prime(plain_ideal(3, ["x1"], ["x1", "x2"], ["x3"]))
        assert not is_prime(plain_ideal(3, ["x1", "x2"]))
        assert not is_prime(plain_ideal(2, []))

    def test_is_prime_iff_one_component(self):
        rng = np.random.default_rng(17)
        for _ in range(60):
            d = random_dataset(rng, FieldSpec(q=2, n=3), int(rng.integers(0, 7)))
            ideal = build_ideal(d, Alphabet.EXTENDED)
            assert is_prime(ideal) == (len(minimal_transversals(ideal)) == 1)

    def test_unsigned_projection_matches_plain_decomposition(self):
        rng = np.random.default_rng(23)
        for _ in range(80):
            n = int(rng.integers(1, 4))
            d = random_dataset(rng, FieldSpec(q=3, n=n), int(rng.integers(0, min(6, 3**n) + 1)))
            extended = minimal_transversals(build_ideal(d, Alphabet.EXTENDED))
            plain = minimal_transversals(build_ideal(d, Alphabet.PLAIN))
            assert [c.mask for c in project_unsigned(extended)] == [c.mask for c in plain]

    def test_counts(self):
        d = dataset(5, 5, F5)
        masks = build_ideal(d, Alphabet.EXTENDED).masks
        assert unsigned_minset_count(masks) == 4
        assert signed_minset_count(masks) == 2


class TestMinSetProperties:

    def test_every_signed_shadow_holds_an_unsigned_minset(self):
        rng = np.random.default_rng(31)
        for _ in range(100):
            n = int(rng.integers(1, 4))
            d = random_dataset(rng, FieldSpec(q=3, n=n), int(rng.integers(0, min(6, 3**n) + 1)))
            report = minsets(d)
            for w in report.signed_minsets:
                assert any(u.issubset(w.drop_bars()) for u in report.unsigned_minsets)
            for family in (report.unsigned_minsets, report.signed_minsets):
                for c in family:
                    assert not bitsets.is_conflicted(c.mask)

    def test_negating_a_coordinate_flips_its_signs(self):
        rng = np.random.default_rng(41)
        for _ in range(50):
            d = random_dataset(rng, FieldSpec(q=3, n=3), int(rng.integers(1, 7)))
            k = int(rng.integers(1, 4))
            before = minsets(d)
            after = minsets(negate_coordinates(d, [k]))
            assert after.unsigned_minsets == before.unsigned_minsets
            flipped = sorted((c.flip_variable(k) for c in before.signed_minsets), key=lambda c: c.sort_key)
            assert list(after.signed_minsets) == flipped


class TestBaseline:

    def test_matches_pipeline(self):
        rng = np.random.default_rng(101)
        for _ in range(100):
            n = int(rng.integers(1, 5))
            q = int(rng.integers(2, 4))
            size = int(rng.integers(0, min(6, q**n) + 1))
            d = random_dataset(rng, FieldSpec(q=q, n=n), size)
            assert [c.mask for c in baseline_signed_decomposition(d)] == [c.mask for c in minsets(d).signed_minsets]

    def test_refuses_above_cap(self):
        with pytest.raises(CapacityError) as info:
            baseline_signed_decomposition(dataset(5, 5, F5), max_choices=1)
        assert info.value.bound == 1

    def test_cap_counts_merged_choice_sets(self):
        # Generators x1x2, x2x3, x1x3: the degree product is 8 but at most
        # 4 distinct partial choice sets are ever alive.
        d = dataset(2, 3, [((0, 0, 0), 0), ((1, 1, 0), 1), ((0, 1, 1), 1), ((1, 0, 1), 1)])
        generators = build_ideal(d, Alphabet.EXTENDED).generators
        assert sorted(g.degree for g in generators) == [2, 2, 2]
        result = baseline_signed_decomposition(d, max_choices=4)
        assert [c.tokens() for c in result] == [["x1", "x2"], ["x1", "x3"], ["x2", "x3"]]
        with pytest.raises(CapacityError) as info:
            baseline_signed_decomposition(d, max_choices=3)
        assert info.value.requested == 4
