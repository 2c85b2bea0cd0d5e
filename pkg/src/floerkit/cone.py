"""The filtered mapping cone of a knot complex and its flip map.

Piece ``A_s`` is a copy of C filtered by ``I = max(i, j - s)`` and
``J = max(i + s - 1, j)``; piece ``B_s`` is a copy filtered by ``I = i`` and
``J = i + s - 1``. The cone differential adds ``v: A_s -> B_s`` (the identity)
and ``h: A_s -> B_{s+1}`` (the flip map followed by ``U^s``).

Flattening picks, for every piece generator, the translate sitting at
``I = 0``, which turns the cone into an ordinary :class:`BifilteredComplex`
with J as its Alexander grading.

For 1/n surgery piece t carries ``A_{floor(t/n)}``, v lands in ``B_t`` and h
in ``B_{t+1}``; only the I filtration is kept there.
"""

from __future__ import annotations

from collections import Counter
from typing import TYPE_CHECKING, Literal

from loguru import logger
from pydantic import BaseModel

from floerkit.complexes import validate
from floerkit.errors import ConeError
from floerkit.models import BifilteredComplex, DiffEntry, Generator

if TYPE_CHECKING:
    from floerkit.models import FlipMap

Piece = Literal["A", "B"]

# ---------------------------------------------------------------------------
# Models
# ---------------------------------------------------------------------------


class ConeGenerator(BaseModel):
    """The translate ``U^power source`` of piece ``piece`` at index ``index``, pinned at I = 0."""

    name: str
    piece: Piece
    index: int
    source: str
    power: int
    alexander: int
    maslov: int

    model_config = {"frozen": True}


class ConeComplex(BaseModel):
    """A truncated cone over ``s`` in ``[lower, upper]``.

    Piece indices t run over ``[n * lower, n * upper + n - 1]`` for A and start
    one later for B; for ``n = 1`` they coincide with s.
    """

    n: int
    lower: int
    upper: int
    bifiltered: bool
    generators: tuple[ConeGenerator, ...]
    differential: tuple[DiffEntry, ...]

    model_config = {"frozen": True}

    def pieces(self, piece: Piece) -> list[int]:
        return sorted({g.index for g in self.generators if g.piece == piece})

    def flatten(self) -> BifilteredComplex:
        """The cone as a bifiltered complex; a filtration or grading defect raises ConeError."""
        flat = BifilteredComplex(
            genus=max((abs(g.alexander) for g in self.generators), default=0),
            generators=tuple(
                Generator(name=g.name, alexander=g.alexander, maslov=g.maslov)
                for g in self.generators
            ),
            differential=self.differential,
        )
        report = validate(flat)
        if not report.ok:
            raise ConeError("; ".join(report.violations[:3]))
        return flat


# ---------------------------------------------------------------------------
# Filtrations and truncation
# ---------------------------------------------------------------------------


def piece_filtrations(piece: Piece, s: int, i: int, j: int) -> tuple[int, int]:
    """``(I, J)`` of the point ``(i, j)`` of a copy of C placed in piece ``piece`` with index s."""
    if piece == "A":
        return max(i, j - s), max(i + s - 1, j)
    return i, i + s - 1


def truncation(complex_: BifilteredComplex) -> tuple[int, int]:
    """Default ``(lower, upper)``: ``[1 - g, g]``, widened to ``[0, 1]`` in genus 0."""
    g = complex_.genus
    return min(1 - g, 0), max(g, 1)


def check_stable_ends(complex_: BifilteredComplex, lower: int, upper: int) -> None:
    """Raise ConeError unless the pieces cut off by ``[lower, upper]`` are redundant.

    ``v`` on ``A_{upper+1}`` must be a filtered isomorphism (every Alexander
    grading at most ``upper``), and ``h`` on ``A_{lower-1}`` a filtered
    quasi-isomorphism (every Alexander grading at least ``lower - 1``).
    """
    if lower > upper:
        raise ConeError(f"empty truncation [{lower}, {upper}]")
    for g in complex_.generators:
        if g.alexander > upper:
            raise ConeError(
                f"{g.name} has Alexander grading {g.alexander} > {upper}; "
                f"v is not an isomorphism on A_{upper + 1}"
            )
        if g.alexander < lower - 1:
            raise ConeError(
                f"{g.name} has Alexander grading {g.alexander} < {lower - 1}; "
                f"h is not a quasi-isomorphism on A_{lower - 1}"
            )


def _label(index: int) -> str:
    return str(index) if index >= 0 else f"m{-index}"


def grading_shifts(n: int, first: int, last: int, offset: int = 0) -> dict[int, int]:
    """Maslov shift of ``A_t`` for ``t`` in ``[first, last]``, with ``A_0`` shifted by ``offset``.

    Declaring v and h homogeneous of degree -1 forces
    ``shift(t + 1) = shift(t) + 2 * floor(t / n)``; for n = 1 this is ``s(s - 1)``.
    """
    shifts = {0: offset}
    for t in range(0, last):
        shifts[t + 1] = shifts[t] + 2 * (t // n)
    for t in range(-1, first - 1, -1):
        shifts[t] = shifts[t + 1] - 2 * (t // n)
    return {t: shifts[t] for t in range(first, last + 1)}


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def _assemble(
    complex_: BifilteredComplex,
    phi: FlipMap,
    n: int,
    lower: int,
    upper: int,
    *,
    bifiltered: bool,
    offset: int = 0,
) -> ConeComplex:
    check_stable_ends(complex_, lower, upper)
    first, last = n * lower, n * upper + n - 1
    shifts = grading_shifts(n, first, last, offset)
    succ = complex_.successors()
    flip = phi.terms()

    generators: list[ConeGenerator] = []
    power: dict[tuple[Piece, int, str], int] = {}
    layout: tuple[tuple[Piece, range], ...] = (
        ("A", range(first, last + 1)),
        ("B", range(first + 1, last + 1)),
    )
    for piece, indices in layout:
        for t in indices:
            s = t // n if piece == "A" else t
            for x in complex_.generators:
                i0, j0 = piece_filtrations(piece, s, 0, x.alexander)
                p = i0
                key = (piece, t, x.name)
                power[key] = p
                generators.append(
                    ConeGenerator(
                        name=f"{piece}{_label(t)}_{x.name}",
                        piece=piece,
                        index=t,
                        source=x.name,
                        power=p,
                        alexander=j0 - p if bifiltered else 0,
                        maslov=x.maslov - 2 * p + shifts[t] - (1 if piece == "B" else 0),
                    )
                )

    names = {(g.piece, g.index, g.source): g.name for g in generators}
    arrows: Counter[tuple[str, str, int]] = Counter()

    def arrow(source: tuple[Piece, int, str], target: tuple[Piece, int, str], u: int) -> None:
        if u < 0:
            raise ConeError(
                f"{names[source]} -> {names[target]} needs U^{u}; the flip map is not filtered"
            )
        arrows[(names[source], names[target], u)] += 1

    for g in generators:
        here = (g.piece, g.index, g.source)
        for y, k in succ[g.source]:
            there = (g.piece, g.index, y)
            arrow(here, there, g.power + k - power[there])
        if g.piece == "B":
            continue
        if g.index > first:
            arrow(here, ("B", g.index, g.source), g.power)
        if g.index < last:
            s = g.index // n
            for y, e in flip.get(g.source, ()):
                arrow(here, ("B", g.index + 1, y), g.power + s + e)

    order = {g.name: position for position, g in enumerate(generators)}
    differential = tuple(
        DiffEntry(source=x, target=y, u_power=u)
        for (x, y, u), count in sorted(
            arrows.items(), key=lambda a: (order[a[0][0]], order[a[0][1]])
        )
        if count % 2
    )
    logger.debug(
        f"cone n={n} over [{lower}, {upper}]: {len(generators)} generators, "
        f"{len(differential)} arrows"
    )
    return ConeComplex(
        n=n,
        lower=lower,
        upper=upper,
        bifiltered=bifiltered,
        generators=tuple(generators),
        differential=differential,
    )


def build_integer_cone(
    complex_: BifilteredComplex,
    phi: FlipMap,
    lower: int | None = None,
    upper: int | None = None,
) -> ConeComplex:
    """The bifiltered cone for +1 surgery, with A_s shifted by ``s(s - 1)``."""
    default_lower, default_upper = truncation(complex_)
    return _assemble(
        complex_,
        phi,
        1,
        default_lower if lower is None else lower,
        default_upper if upper is None else upper,
        bifiltered=True,
    )


def build_rational_cone(
    complex_: BifilteredComplex, phi: FlipMap, n: int, offset: int = 0
) -> ConeComplex:
    """The singly filtered cone for 1/n surgery, ``A_0`` shifted by ``offset``."""
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    lower, upper = truncation(complex_)
    return _assemble(complex_, phi, n, lower, upper, bifiltered=False, offset=offset)
