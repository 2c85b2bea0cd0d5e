"""Tests for floerkit.flip."""

from __future__ import annotations

import pytest

from floerkit import catalog
from floerkit.config import Settings
from floerkit.errors import ComplexFormatError, FlipMapError
from floerkit.flip import MAX_SEARCH_GENERATORS, find_flip, same_homotopy_class, verify_flip
from floerkit.models import BifilteredComplex, FlipEntry, FlipMap, Generator


class TestVerifyFlip:
    @pytest.mark.parametrize("name", ["unknot", "t23", "t-23", "fig8", "cable"])
    def test_shipped_flips(self, name: str) -> None:
        fixture = catalog.get(name)
        assert fixture.flip is not None
        report = verify_flip(fixture.complex, fixture.flip)
        assert report.ok, report.detail

    def test_identity_on_unknot(self, unknot: BifilteredComplex) -> None:
        assert verify_flip(unknot, FlipMap.identity(unknot)).ok

    def test_identity_breaks_filtration(self, cable: BifilteredComplex) -> None:
        """The identity sends U^0 g at j = -1 to i = 0."""
        report = verify_flip(cable, FlipMap.identity(cable))
        assert not report.ok
        assert report.failed == "filtration"

    def test_not_a_chain_map(self, t23: BifilteredComplex) -> None:
        phi = FlipMap(entries=(FlipEntry(source="b", target="b"),))
        report = verify_flip(t23, phi)
        assert report.failed == "chain_map"
        assert "b" in (report.detail or "")

    def test_grading_shift(self, unknot: BifilteredComplex) -> None:
        phi = FlipMap(entries=(FlipEntry(source="x", target="x", u_power=1),))
        assert verify_flip(unknot, phi).failed == "grading"

    def test_zero_map_is_not_a_quasi_isomorphism(self, unknot: BifilteredComplex) -> None:
        report = verify_flip(unknot, FlipMap())
        assert report.failed == "quasi_isomorphism"

    def test_unknown_generator(self, t23: BifilteredComplex) -> None:
        phi = FlipMap(entries=(FlipEntry(source="a", target="zz"),))
        with pytest.raises(ComplexFormatError):
            verify_flip(t23, phi)


class TestFindFlip:
    def test_unknot(self, unknot: BifilteredComplex) -> None:
        assert verify_flip(unknot, find_flip(unknot)).ok

    def test_trefoil(self, t23: BifilteredComplex) -> None:
        found = find_flip(t23, Settings(flip_seed=1))
        assert verify_flip(t23, found).ok

    def test_figure_eight(self, fig8: BifilteredComplex) -> None:
        assert verify_flip(fig8, find_flip(fig8)).ok

    def test_same_class_as_shipped(self, t23: BifilteredComplex) -> None:
        shipped = catalog.get("t23").flip
        assert shipped is not None
        assert same_homotopy_class(t23, shipped, shipped)
        assert same_homotopy_class(t23, shipped, find_flip(t23))

    def test_cable_matches_shipped_swap(self, cable: BifilteredComplex) -> None:
        shipped = catalog.get("cable").flip
        assert shipped is not None
        found = find_flip(cable)
        assert verify_flip(cable, found).ok
        assert same_homotopy_class(cable, shipped, found)

    def test_size_limit(self) -> None:
        big = BifilteredComplex(
            genus=0,
            generators=tuple(
                Generator(name=f"x{k}", alexander=0, maslov=0)
                for k in range(MAX_SEARCH_GENERATORS + 1)
            ),
        )
        with pytest.raises(FlipMapError, match="limited"):
            find_flip(big)
