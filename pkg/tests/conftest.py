"""Shared test fixtures for floerkit."""

from __future__ import annotations

import pytest

from floerkit import catalog
from floerkit.models import (
    BifilteredComplex,
    DiffEntry,
    Generator,
    PlumbingGraph,
    PlumbingVertex,
)


@pytest.fixture()
def unknot() -> BifilteredComplex:
    return catalog.get("unknot").complex


@pytest.fixture()
def t23() -> BifilteredComplex:
    """Right-handed trefoil."""
    return catalog.get("t23").complex


@pytest.fixture()
def t_minus_23() -> BifilteredComplex:
    """Left-handed trefoil."""
    return catalog.get("t-23").complex


@pytest.fixture()
def fig8() -> BifilteredComplex:
    return catalog.get("fig8").complex


@pytest.fixture()
def cable() -> BifilteredComplex:
    return catalog.get("cable").complex


@pytest.fixture()
def table1() -> BifilteredComplex:
    """Core of +1 surgery on the cable, as tabulated."""
    return catalog.get("table1").complex


@pytest.fixture()
def broken_d_squared() -> BifilteredComplex:
    """A three-step chain a -> b -> c, so d^2(a) = c."""
    return BifilteredComplex(
        genus=0,
        generators=(
            Generator(name="a", alexander=0, maslov=2),
            Generator(name="b", alexander=0, maslov=1),
            Generator(name="c", alexander=0, maslov=0),
        ),
        differential=(
            DiffEntry(source="a", target="b"),
            DiffEntry(source="b", target="c"),
        ),
    )


@pytest.fixture()
def two_towers() -> BifilteredComplex:
    """Two isolated generators: U-inverted homology of rank 2."""
    return BifilteredComplex(
        genus=0,
        generators=(
            Generator(name="x", alexander=0, maslov=0),
            Generator(name="y", alexander=0, maslov=0),
        ),
    )


def _e8(weight: int) -> PlumbingGraph:
    vertices = tuple(PlumbingVertex(name=f"v{k}", weight=weight) for k in range(1, 9))
    edges = tuple((f"v{k}", f"v{k + 1}") for k in range(1, 7)) + (("v5", "v8"),)
    return PlumbingGraph(vertices=vertices, edges=edges)


@pytest.fixture()
def e8_negative() -> PlumbingGraph:
    """Negative-definite E8 plumbing; its boundary is the Poincare sphere."""
    return _e8(-2)


@pytest.fixture()
def e8_positive() -> PlumbingGraph:
    return _e8(2)


@pytest.fixture()
def single_vertex() -> PlumbingGraph:
    """One vertex of weight 2, bounding L(2, 1)."""
    return PlumbingGraph(vertices=(PlumbingVertex(name="v", weight=2),))
