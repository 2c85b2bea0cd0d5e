"""Tests for floerkit.complexes."""

from __future__ import annotations

import pytest

from floerkit.complexes import (
    FiniteF2Complex,
    alexander_polynomial,
    dualize,
    hat_rank,
    require_valid,
    subquotient,
    tensor,
    validate,
)
from floerkit.errors import ComplexValidationError, WindowTooSmallError
from floerkit.models import BifilteredComplex, DiffEntry, Generator
from floerkit.regions import ConvexRegion, Level, column, column_below


def _renamed(complex_: BifilteredComplex, names: dict[str, str]) -> BifilteredComplex:
    def rename(name: str) -> str:
        return names.get(name, name)

    return BifilteredComplex(
        genus=complex_.genus,
        generators=tuple(
            g.model_copy(update={"name": rename(g.name)}) for g in complex_.generators
        ),
        differential=tuple(
            DiffEntry(source=rename(e.source), target=rename(e.target), u_power=e.u_power)
            for e in complex_.differential
        ),
        reduced=complex_.reduced,
    )


class TestValidate:
    def test_fixtures_are_valid(
        self,
        unknot: BifilteredComplex,
        t23: BifilteredComplex,
        fig8: BifilteredComplex,
        cable: BifilteredComplex,
        table1: BifilteredComplex,
    ) -> None:
        for complex_ in (unknot, t23, fig8, cable, table1):
            report = validate(complex_)
            assert report.ok, report.violations

    def test_d_squared(self, broken_d_squared: BifilteredComplex) -> None:
        report = validate(broken_d_squared)
        assert not report.ok
        assert report.violations == ("d^2 != 0: d(d(a)) contains U^0 c",)

    def test_filtration_and_grading(self) -> None:
        bad = BifilteredComplex(
            genus=2,
            generators=(
                Generator(name="x", alexander=0, maslov=0),
                Generator(name="y", alexander=2, maslov=0),
            ),
            differential=(DiffEntry(source="x", target="y"),),
        )
        violations = validate(bad).violations
        assert any(v.startswith("filtration") for v in violations)
        assert any(v.startswith("grading") for v in violations)

    def test_reducedness_only_when_claimed(self) -> None:
        pair = BifilteredComplex(
            genus=0,
            generators=(
                Generator(name="x", alexander=0, maslov=1),
                Generator(name="y", alexander=0, maslov=0),
            ),
            differential=(DiffEntry(source="x", target="y"),),
        )
        assert validate(pair).ok
        claimed = pair.model_copy(update={"reduced": True})
        assert validate(claimed).violations == ("reduced: x->y lowers neither i nor j",)

    def test_genus_mismatch(self, t23: BifilteredComplex) -> None:
        wrong = t23.model_copy(update={"genus": 2})
        assert validate(wrong).violations == ("genus: stored 2, max |alexander| is 1",)

    def test_require_valid(self, broken_d_squared: BifilteredComplex) -> None:
        with pytest.raises(ComplexValidationError, match="d\\^2"):
            require_valid(broken_d_squared)


class TestAlgebra:
    def test_dual_of_dual(self, t23: BifilteredComplex) -> None:
        assert dualize(dualize(t23)) == t23

    def test_dual_gradings(self, t23: BifilteredComplex, t_minus_23: BifilteredComplex) -> None:
        """The mirror of T(2,3) has the gradings of T(2,-3)."""
        mirrored = sorted((g.alexander, g.maslov) for g in dualize(t23).generators)
        assert mirrored == sorted((g.alexander, g.maslov) for g in t_minus_23.generators)
        assert validate(dualize(t23)).ok

    def test_tensor_with_unknot(self, unknot: BifilteredComplex, t23: BifilteredComplex) -> None:
        product = tensor(t23, unknot)
        assert [g.name for g in product.generators] == ["a_x", "b_x", "c_x"]
        assert [(e.source, e.target, e.u_power) for e in product.differential] == [
            ("b_x", "a_x", 1),
            ("b_x", "c_x", 0),
        ]
        assert product.genus == 1

    def test_tensor_is_valid(self, t23: BifilteredComplex, fig8: BifilteredComplex) -> None:
        product = tensor(t23, fig8)
        assert len(product.generators) == 15
        assert validate(product).ok

    def test_tensor_names_with_underscores(self, fig8: BifilteredComplex) -> None:
        """p + q_r and p_q + r would both be p_q_r under plain joining."""
        left = _renamed(fig8, {"a": "p", "b": "p_q"})
        right = _renamed(fig8, {"a": "q_r", "b": "r"})
        assert validate(left).ok and validate(right).ok
        product = tensor(left, right)
        names = [g.name for g in product.generators]
        assert len(names) == len(set(names)) == 25
        assert "p_x_q__r" in names
        assert "p__q_x_r" in names
        assert validate(product).ok
        assert alexander_polynomial(product) == alexander_polynomial(tensor(fig8, fig8))


class TestFiniteF2Complex:
    def test_hat_rank_is_one_in_s3(
        self, t23: BifilteredComplex, cable: BifilteredComplex
    ) -> None:
        assert hat_rank(t23) == 1
        assert hat_rank(cable) == 1

    def test_cable_hat_column(self, cable: BifilteredComplex) -> None:
        assert subquotient(cable, column(0), window=3).dimension == 11
        assert subquotient(cable, column_below(0), window=3).dimension == 7

    def test_cable_knot_homology_rank(self, cable: BifilteredComplex) -> None:
        """The associated graded of the hat column has rank 11."""
        ranks = [
            FiniteF2Complex(cable, column(0) & ConvexRegion.level_set(Level.j(), s)).total_rank()
            for s in range(-3, 4)
        ]
        assert sum(ranks) == 11

    def test_column_slices(self, t23: BifilteredComplex) -> None:
        hat = FiniteF2Complex(t23, column(0))
        assert hat.gradings() == [-2, -1, 0]
        assert hat.slice(-2) == (("c", 0),)
        assert hat.boundary_matrix(-1).tolist() == [[1]]

    def test_unbounded_basis_needs_window(self, t23: BifilteredComplex) -> None:
        with pytest.raises(WindowTooSmallError):
            FiniteF2Complex(t23, ConvexRegion.whole()).basis()

    def test_window_too_small(self, t23: BifilteredComplex) -> None:
        """b -> U a leaves a zero window while staying in the band."""
        with pytest.raises(WindowTooSmallError):
            subquotient(t23, ConvexRegion.band(Level.i(), -10, 10), window=0)

    def test_windowed_dimension(self, t23: BifilteredComplex) -> None:
        fc = subquotient(t23, ConvexRegion.band(Level.i(), -1, 1), window=1)
        assert fc.dimension == 9

    def test_alexander_polynomial(self, t23: BifilteredComplex, fig8: BifilteredComplex) -> None:
        assert alexander_polynomial(t23) == {-1: 1, 0: -1, 1: 1}
        assert alexander_polynomial(fig8) == {-1: -1, 0: 3, 1: -1}
