"""Tests for floerkit.cone."""

from __future__ import annotations

from typing import TYPE_CHECKING

import pytest

from floerkit import catalog
from floerkit.cone import (
    build_integer_cone,
    build_rational_cone,
    check_stable_ends,
    grading_shifts,
    piece_filtrations,
    truncation,
)
from floerkit.errors import ConeError
from floerkit.models import FlipMap

if TYPE_CHECKING:
    from floerkit.models import BifilteredComplex


class TestFiltrations:
    def test_a_piece(self) -> None:
        assert piece_filtrations("A", 1, 0, 1) == (0, 1)
        assert piece_filtrations("A", 0, 0, 2) == (2, 2)
        assert piece_filtrations("A", 2, 0, -1) == (0, 1)

    def test_b_piece(self) -> None:
        assert piece_filtrations("B", 2, 0, 5) == (0, 1)
        assert piece_filtrations("B", -1, 3, 0) == (3, 1)


class TestTruncation:
    def test_defaults(
        self, unknot: BifilteredComplex, t23: BifilteredComplex, cable: BifilteredComplex
    ) -> None:
        assert truncation(unknot) == (0, 1)
        assert truncation(t23) == (0, 1)
        assert truncation(cable) == (-2, 3)

    def test_stable_ends(self, t23: BifilteredComplex) -> None:
        check_stable_ends(t23, 0, 1)
        with pytest.raises(ConeError, match="isomorphism on A_1"):
            check_stable_ends(t23, 0, 0)
        with pytest.raises(ConeError, match="quasi-isomorphism on A_0"):
            check_stable_ends(t23, 1, 1)
        with pytest.raises(ConeError, match="empty"):
            check_stable_ends(t23, 2, 1)


class TestGradingShifts:
    def test_integer_surgery(self) -> None:
        """For n = 1 the shift of A_s is s(s - 1)."""
        shifts = grading_shifts(1, -2, 3)
        assert shifts == {s: s * (s - 1) for s in range(-2, 4)}

    def test_rational_surgery(self) -> None:
        assert grading_shifts(2, 0, 5) == {0: 0, 1: 0, 2: 0, 3: 2, 4: 4, 5: 8}

    def test_offset(self) -> None:
        assert grading_shifts(1, 0, 2, offset=3) == {0: 3, 1: 3, 2: 5}


class TestIntegerCone:
    def test_unknot_layout(self, unknot: BifilteredComplex) -> None:
        cone = build_integer_cone(unknot, FlipMap.identity(unknot))
        assert cone.pieces("A") == [0, 1]
        assert cone.pieces("B") == [1]
        assert [g.name for g in cone.generators] == ["A0_x", "A1_x", "B1_x"]
        assert cone.bifiltered

    def test_trefoil_flattens(self, t23: BifilteredComplex) -> None:
        fixture = catalog.get("t23")
        assert fixture.flip is not None
        flat = build_integer_cone(t23, fixture.flip).flatten()
        assert len(flat.generators) == 9
        assert flat.generators[0].name == "A0_a"

    def test_negative_labels(self, cable: BifilteredComplex) -> None:
        fixture = catalog.get("cable")
        assert fixture.flip is not None
        cone = build_integer_cone(cable, fixture.flip)
        assert cone.pieces("A") == [-2, -1, 0, 1, 2, 3]
        assert "Am2_a" in {g.name for g in cone.generators}

    def test_unfiltered_flip_rejected(self, t23: BifilteredComplex) -> None:
        """The identity does not carry j into i, so the flattened cone breaks J."""
        with pytest.raises(ConeError):
            build_integer_cone(t23, FlipMap.identity(t23), 0, 1).flatten()


class TestRationalCone:
    def test_single_filtration(self, t23: BifilteredComplex) -> None:
        fixture = catalog.get("t23")
        assert fixture.flip is not None
        cone = build_rational_cone(t23, fixture.flip, 2)
        assert not cone.bifiltered
        assert cone.pieces("A") == list(range(0, 4))
        assert cone.pieces("B") == list(range(1, 4))
        assert {g.alexander for g in cone.generators} == {0}

    def test_n_must_be_positive(self, t23: BifilteredComplex) -> None:
        with pytest.raises(ValueError, match="positive"):
            build_rational_cone(t23, FlipMap.identity(t23), 0)
