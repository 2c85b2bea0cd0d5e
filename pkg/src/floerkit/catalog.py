"""Shipped knot complexes with provenance notes and flip maps.

Generators are listed as ``(name, alexander, maslov)`` for the translate at
i = 0; arrows as ``(from, to, u_power)``; flip entries likewise.
"""

from __future__ import annotations

from pathlib import Path

from loguru import logger
from pydantic import BaseModel

from floerkit.errors import UnknownFixtureError
from floerkit.models import (
    BifilteredComplex,
    DiffEntry,
    FixtureInfo,
    FlipEntry,
    FlipMap,
    Generator,
)

_Triple = tuple[str, int, int]
_Arrow = tuple[str, str, int]


class Fixture(BaseModel):
    name: str
    description: str
    complex: BifilteredComplex
    flip: FlipMap | None = None

    model_config = {"frozen": True}

    def info(self) -> FixtureInfo:
        return FixtureInfo(
            name=self.name,
            description=self.description,
            generators=len(self.complex.generators),
            genus=self.complex.genus,
            has_flip=self.flip is not None,
        )


def _build(
    name: str,
    description: str,
    generators: list[_Triple],
    arrows: list[_Arrow],
    flip: list[_Arrow] | None,
) -> Fixture:
    complex_ = BifilteredComplex(
        genus=max(abs(a) for _, a, _ in generators),
        generators=tuple(Generator(name=n, alexander=a, maslov=m) for n, a, m in generators),
        differential=tuple(DiffEntry(source=x, target=y, u_power=u) for x, y, u in arrows),
        reduced=True,
    )
    phi = None
    if flip is not None:
        phi = FlipMap(entries=tuple(FlipEntry(source=x, target=y, u_power=u) for x, y, u in flip))
    return Fixture(name=name, description=description, complex=complex_, flip=phi)


_FIXTURES: dict[str, Fixture] = {
    f.name: f
    for f in (
        _build(
            "unknot",
            "The unknot in S^3: one generator in bigrading (0, 0).",
            [("x", 0, 0)],
            [],
            [("x", "x", 0)],
        ),
        _build(
            "t23",
            "Right-handed trefoil T(2,3): staircase with steps of length one.",
            [("a", 1, 0), ("b", 0, -1), ("c", -1, -2)],
            [("b", "a", 1), ("b", "c", 0)],
            [("a", "c", -1), ("b", "b", 0), ("c", "a", 1)],
        ),
        _build(
            "t-23",
            "Left-handed trefoil T(2,-3), the dual of t23.",
            [("a", 1, 2), ("b", 0, 1), ("c", -1, 0)],
            [("a", "b", 0), ("c", "b", 1)],
            [("a", "c", -1), ("b", "b", 0), ("c", "a", 1)],
        ),
        _build(
            "fig8",
            "Figure-eight knot: a unit box plus an isolated generator.",
            [("a", 0, 0), ("b", 1, 1), ("c", -1, -1), ("d", 0, 0), ("x", 0, 0)],
            [("a", "b", 1), ("a", "c", 0), ("b", "d", 0), ("c", "d", 1)],
            [("a", "a", 0), ("b", "c", -1), ("c", "b", 1), ("d", "d", 0), ("x", "x", 0)],
        ),
        _build(
            "cable",
            "Genus 3 cable with epsilon = -1, in an F[U, U^-1] basis. Each generator is "
            "stored at its i = 0 translate, so a cell (i0, j0) of Maslov grading M becomes "
            "alexander j0 - i0 and maslov M - 2 i0. Its hat knot homology has rank 11 in "
            "Maslov gradings 2, 1, 1, 0, 0, 0, -1, -1, -2, -3, -4. The flip fixes f "
            "and interchanges a/k, b/j, c/i, d/h and e/g.",
            [
                ("a", 0, 0),
                ("b", 1, 1),
                ("c", 3, 2),
                ("d", 2, 1),
                ("e", 1, 0),
                ("f", 0, -1),
                ("g", -1, -2),
                ("h", -2, -3),
                ("i", -3, -4),
                ("j", -1, -1),
                ("k", 0, 0),
            ],
            [
                ("a", "b", 1),
                ("c", "b", 0),
                ("d", "c", 1),
                ("d", "e", 0),
                ("f", "e", 1),
                ("f", "g", 0),
                ("h", "g", 1),
                ("h", "i", 0),
                ("i", "j", 2),
                ("k", "j", 0),
                ("e", "b", 1),
                ("f", "a", 1),
                ("f", "k", 1),
                ("g", "j", 1),
            ],
            [
                ("a", "k", 0),
                ("k", "a", 0),
                ("b", "j", -1),
                ("j", "b", 1),
                ("c", "i", -3),
                ("i", "c", 3),
                ("d", "h", -2),
                ("h", "d", 2),
                ("e", "g", -1),
                ("g", "e", 1),
                ("f", "f", 0),
            ],
        ),
        _build(
            "table1",
            "Knot complex of the core of +1 surgery on the cable, a knot in that surgery, "
            "which is not an L-space: 13 generators, d = -2, tau = -1, epsilon = 0.",
            [
                ("A", 3, 8),
                ("B", 2, 7),
                ("C", 1, 3),
                ("D", 1, 2),
                ("E", 1, 1),
                ("F", 1, 0),
                ("G", 0, 0),
                ("H", -1, 1),
                ("I", -1, 0),
                ("J", -1, -1),
                ("K", -1, -2),
                ("L", -2, 3),
                ("M", -3, 2),
            ],
            [
                ("A", "B", 0),
                ("D", "C", 1),
                ("F", "E", 1),
                ("G", "J", 0),
                ("G", "E", 1),
                ("I", "H", 1),
                ("K", "J", 1),
                ("M", "L", 1),
            ],
            None,
        ),
    )
}


def names() -> list[str]:
    return list(_FIXTURES)


def get(name: str) -> Fixture:
    try:
        return _FIXTURES[name]
    except KeyError:
        raise UnknownFixtureError(
            f"unknown fixture {name!r}; choose from {', '.join(_FIXTURES)}"
        ) from None


def list_fixtures() -> list[FixtureInfo]:
    return [f.info() for f in _FIXTURES.values()]


def resolve(source: str) -> Fixture:
    """A fixture by name, or a complex read from the file at ``source``."""
    if source in _FIXTURES:
        return _FIXTURES[source]
    path = Path(source)
    if path.is_file():
        complex_ = BifilteredComplex.from_file(path)
        return Fixture(name=path.stem, description=str(path), complex=complex_)
    raise UnknownFixtureError(f"{source!r} is neither a fixture name nor a readable file")


def export(directory: str | Path) -> list[Path]:
    """Write ``<name>.json`` for every fixture, plus ``<name>.flip.json`` where a flip is known."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for fixture in _FIXTURES.values():
        target = out / f"{fixture.name}.json"
        target.write_text(fixture.complex.to_json() + "\n", encoding="utf-8")
        written.append(target)
        if fixture.flip is not None:
            flip_target = out / f"{fixture.name}.flip.json"
            flip_target.write_text(fixture.flip.to_json() + "\n", encoding="utf-8")
            written.append(flip_target)
    logger.info(f"Exported {len(written)} files to {out}")
    return written
