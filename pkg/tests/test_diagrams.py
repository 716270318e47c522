"""
Tests for diagrams.py - partitions, skew shapes and admissible tableaux.

Tests cover:
- Partition and skew shape parsing
- Spectral shifts of cells
- Admissibility rules for mixed gradings
- Tableau enumeration order and counts
- Column transfer sums agreeing with brute-force enumeration
- Forbidden rectangle detection
"""

import sys
from math import prod
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "scripts"))

from diagrams import (
    Partition,
    SkewShape,
    Tableau,
    TableauError,
    all_skew_shapes,
    column_fillings,
    contains_forbidden_rectangle,
    enumerate_tableaux,
    is_admissible,
    iter_tableaux,
    parse_partition,
    partitions_in_box,
    sum_over_tableaux,
)
from superalgebra import Grading, enumerate_gradings

WORKED_EXAMPLE_FILLINGS = [
    (1, 1, 2), (1, 1, 3), (1, 2, 2), (1, 2, 3),
    (1, 3, 2), (1, 3, 3), (2, 3, 2), (2, 3, 3),
]


@pytest.mark.deterministic
@pytest.mark.unit
class TestShapes:
    """Tests for Partition and SkewShape."""

    def test_parse_partition(self):
        assert parse_partition("3,2,0") == Partition((3, 2))
        assert parse_partition("0") == Partition(())

    def test_non_decreasing_rejected(self):
        with pytest.raises(TableauError):
            Partition((1, 2))

    def test_conjugate(self):
        assert Partition((3, 1)).conjugate() == Partition((2, 1, 1))

    def test_skew_parse(self):
        sh = SkewShape.parse("3,2/1")
        assert sh.cells() == [(1, 2), (1, 3), (2, 1), (2, 2)]
        assert sh.size == 4

    def test_lambda_must_fit(self):
        with pytest.raises(TableauError):
            SkewShape.parse("2/3")

    def test_rectangle(self):
        assert SkewShape.rectangle(2, 3).mu == Partition((3, 3))
        assert SkewShape.rectangle(2, 0).is_empty()

    def test_spectral_shift(self):
        sh = SkewShape.straight(2, 1)
        assert [sh.spectral_shift(i, j) for i, j in sh.cells()] == [0, 2, -2]

    def test_column_range(self):
        sh = SkewShape.parse("2,2/1")
        assert sh.column_range(1) == (2, 2)
        assert sh.column_range(2) == (1, 2)

    def test_json(self):
        sh = SkewShape.parse("3,2/1")
        assert sh.to_json() == {"mu": [3, 2], "lambda": [1]}
        assert SkewShape.from_json(sh.to_json()) == sh

    def test_partitions_in_box(self):
        assert len(list(partitions_in_box(2, 2))) == 6

    def test_all_skew_shapes_excludes_empty(self):
        shapes = all_skew_shapes(1)
        assert shapes == [SkewShape.straight(1)]
        assert len(all_skew_shapes(1, include_empty=True)) == 3


@pytest.mark.deterministic
@pytest.mark.unit
class TestAdmissibility:
    """Tests for is_admissible()."""

    def test_repeated_boson_in_row(self, g_sl21_mixed):
        sh = SkewShape.straight(2)
        assert is_admissible(Tableau.from_rows(sh, [[1, 1]]), g_sl21_mixed)
        assert not is_admissible(Tableau.from_rows(sh, [[2, 2]]), g_sl21_mixed)

    def test_repeated_fermion_in_column(self, g_sl21_mixed):
        sh = SkewShape.straight(1, 1)
        assert is_admissible(Tableau.from_rows(sh, [[2], [2]]), g_sl21_mixed)
        assert not is_admissible(Tableau.from_rows(sh, [[1], [1]]), g_sl21_mixed)

    def test_decreasing_rejected(self, g_sl21_mixed):
        sh = SkewShape.straight(2)
        assert not is_admissible(Tableau.from_rows(sh, [[3, 1]]), g_sl21_mixed)

    def test_entry_outside_index_set(self, g_sl21_mixed):
        sh = SkewShape.straight(1)
        with pytest.raises(TableauError, match="outside J"):
            is_admissible(Tableau.from_rows(sh, [[4]]), g_sl21_mixed)

    def test_cells_must_match_shape(self, g_sl21_mixed):
        with pytest.raises(TableauError):
            is_admissible(Tableau.from_rows(SkewShape.straight(2), [[1]]), g_sl21_mixed)


@pytest.mark.deterministic
@pytest.mark.unit
class TestEnumeration:
    """Tests for tableau enumeration."""

    def test_worked_example_order(self, g_sl21_mixed):
        """Test the eight tableaux of shape (2,1) for grading (+,-,+) in lexicographic order."""
        sh = SkewShape.straight(2, 1)
        found = [tuple(t[c] for c in sh.cells()) for t in iter_tableaux(sh, g_sl21_mixed)]
        assert found == WORKED_EXAMPLE_FILLINGS

    def test_str(self, g_sl21_mixed):
        first = enumerate_tableaux(SkewShape.straight(2, 1), g_sl21_mixed)[0]
        assert str(first) == "1 1 / 2"

    def test_skew_str_marks_lambda(self, g_sl21_mixed):
        first = enumerate_tableaux(SkewShape.parse("2/1"), g_sl21_mixed)[0]
        assert str(first) == ". 1"

    def test_all_enumerated_are_admissible(self):
        for g in enumerate_gradings(1, 1):
            for t in enumerate_tableaux(SkewShape.parse("2,2/1"), g):
                assert is_admissible(t, g)

    def test_cell_cap(self, g_sl21_mixed):
        with pytest.raises(TableauError, match="above the cap"):
            enumerate_tableaux(SkewShape.straight(3, 3), g_sl21_mixed, max_cells=5)

    def test_column_fillings(self, g_sl21_mixed):
        assert column_fillings(2, g_sl21_mixed) == [(1, 2), (1, 3), (2, 2), (2, 3)]

    def test_plain_sl_column_too_tall(self):
        """Test that sl(2) admits no column of height three."""
        assert enumerate_tableaux(SkewShape.straight(1, 1, 1), Grading.parse("++")) == []


@pytest.mark.deterministic
@pytest.mark.unit
class TestTransferSum:
    """Tests for sum_over_tableaux()."""

    def test_counts_worked_example(self, g_sl21_mixed):
        assert sum_over_tableaux(SkewShape.straight(2, 1), g_sl21_mixed, lambda i, j, a: 1) == 8

    @pytest.mark.parametrize("grading", ["+-+", "-++", "+--", "-+-+"])
    def test_weighted_sum_matches_enumeration(self, grading):
        """Test the column transfer against explicit enumeration for every small skew shape."""
        g = Grading.parse(grading)

        def weight(i, j, a):
            return (3 * i + 5 * j + 7 * a) % 11 + 1

        for sh in all_skew_shapes(3):
            expected = sum(
                prod(weight(i, j, a) for (i, j), a in t.entries)
                for t in iter_tableaux(sh, g)
            )
            assert sum_over_tableaux(sh, g, weight) == expected, str(sh)


@pytest.mark.deterministic
@pytest.mark.unit
class TestForbiddenRectangle:
    """Tests for contains_forbidden_rectangle()."""

    def test_sl21_block(self):
        """Test that sl(2|1) forbids a 3 x 2 block."""
        assert contains_forbidden_rectangle(SkewShape.straight(2, 2, 2), 1, 0)
        assert not contains_forbidden_rectangle(SkewShape.straight(2, 2), 1, 0)
        assert not contains_forbidden_rectangle(SkewShape.straight(3, 1, 1), 1, 0)

    def test_skew_block(self):
        assert contains_forbidden_rectangle(SkewShape.parse("3,3,3/1"), 1, 0)
        assert not contains_forbidden_rectangle(SkewShape.parse("2,2,2/1"), 1, 0)
