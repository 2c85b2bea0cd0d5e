"""Tests for level functions and convex regions."""

from __future__ import annotations

from fractions import Fraction

from floerkit.regions import (
    ConvexRegion,
    Level,
    column,
    column_below,
    half_plane_i,
    half_plane_j,
)


class TestLevel:
    def test_max_and_min(self) -> None:
        assert Level.max_shift(1).at(0, 3) == 2
        assert Level.min_shift(1).at(0, 3) == 0

    def test_upsilon_interpolates(self) -> None:
        assert Level.upsilon(Fraction(0)).at(2, 5) == 2
        assert Level.upsilon(Fraction(2)).at(2, 5) == 5
        assert Level.upsilon(Fraction(1, 2)).of_translate(2, 1) == Fraction(-1, 2)

    def test_u_drops_level_by_one(self) -> None:
        level = Level.max_shift(0)
        assert level.of_translate(1, 3) == level.of_translate(1, 0) - 3


class TestConvexRegion:
    def test_whole_is_unbounded(self) -> None:
        assert ConvexRegion.whole().k_interval(0) == (None, None)

    def test_column(self) -> None:
        assert column(0).k_interval(5) == (0, 0)

    def test_half_plane(self) -> None:
        assert half_plane_j(1).k_interval(3) == (2, None)
        assert not half_plane_i(0).contains(1, 0)
        assert half_plane_i(0).contains(0, 7)

    def test_empty_interval(self) -> None:
        lo, hi = column_below(1).k_interval(3)
        assert lo is not None and hi is not None
        assert lo > hi

    def test_intersection(self) -> None:
        region = column(0) & half_plane_j(2)
        assert len(region.bounds) == 2
        assert region.contains(0, 2)
        assert not region.contains(0, 3)
