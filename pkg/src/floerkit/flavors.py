"""Three-manifold Floer data from the i-filtration of a knot complex.

The plus flavor is truncated to ``{0 <= F <= W}`` for a level function F
(F = i gives HF+, F = max(i, j) gives the large-surgery complex A_0+).
A class counts as part of the U-tower when it lies in the image of
``U^N`` with ``N = W // 2``; results are certified by recomputing at ``2W``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING

import numpy as np
from loguru import logger

from floerkit import gf2
from floerkit.complexes import FiniteF2Complex, Translate, transport
from floerkit.config import load_settings
from floerkit.errors import ComplexValidationError, NotAHomologySphereError, WindowTooSmallError
from floerkit.models import BifilteredComplex, TowerReport
from floerkit.regions import ConvexRegion, Level

if TYPE_CHECKING:
    from collections.abc import Iterable

    from floerkit.gf2 import F2Array


def default_window(complex_: BifilteredComplex) -> int:
    return len(complex_.generators) + 2 * complex_.genus + 2


def check_rank_one(complex_: BifilteredComplex) -> None:
    """Raise unless H(C) with U inverted has rank 1 over F[U, U^-1]."""
    full = FiniteF2Complex(complex_, ConvexRegion.whole())
    m = complex_.maslov_range()[0]
    total = full.betti(m) + full.betti(m + 1)
    if total != 1:
        raise NotAHomologySphereError(
            f"U-inverted homology has rank {total}; the complex is not a knot in a homology sphere"
        )


class PlusFlavor:
    """Truncated plus flavor ``{0 <= F <= window}`` with its hat slice ``{F = 0}``."""

    def __init__(
        self, complex_: BifilteredComplex, window: int, level: Level | None = None
    ) -> None:
        self.complex = complex_
        self.level = level if level is not None else Level.i()
        self.window = window
        self.depth = window // 2
        self.truncated = FiniteF2Complex(complex_, ConvexRegion.band(self.level, 0, window))
        self.hat = FiniteF2Complex(complex_, ConvexRegion.level_set(self.level, 0))
        self._towers: dict[int, F2Array] = {}

    def hat_gradings(self) -> list[int]:
        return self.hat.gradings()

    def u_image(self, m: int, power: int) -> F2Array:
        """``U^power`` applied to the cycles of grading ``m + 2 * power``."""
        plus = self.truncated
        top = m + 2 * power
        return transport(plus, top, plus.cycles(top), plus, shift=power)

    def tower(self, m: int) -> F2Array:
        if m not in self._towers:
            self._towers[m] = self.u_image(m, self.depth)
        return self._towers[m]

    def tower_rank(self, m: int) -> int:
        return self.truncated.class_rank(m, self.tower(m))

    def bottom(self) -> int:
        """Lowest grading in which the tower is nonzero."""
        for m in self.hat_gradings():
            if self.tower_rank(m):
                return m
        raise NotAHomologySphereError("no U-tower found in the plus flavor")

    def reduced_rank(self, power: int) -> int:
        """``dim U^power HF_red``, summed over the gradings where HF_red can live."""
        gradings = self.hat_gradings()
        plus = self.truncated
        total = 0
        for m in range(gradings[0], gradings[-1] + 1):
            tower = self.tower(m)
            width = len(plus.slice(m))
            image = plus.cycles(m) if power == 0 else self.u_image(m, power)
            total += plus.class_rank(m, gf2.stack(tower, image, columns=width))
            total -= plus.class_rank(m, tower)
        return total

    def tower_report(self) -> TowerReport:
        d = self.bottom()
        ranks: list[int] = []
        for power in range(self.depth + 1):
            ranks.append(self.reduced_rank(power))
            if ranks[-1] == 0:
                break
        else:
            raise WindowTooSmallError(
                f"HF_red is not killed by U^{self.depth}; window {self.window} is too small"
            )
        n = len(ranks) - 1
        ranks.extend([0, 0])
        orders: list[int] = []
        for k in range(1, n + 1):
            orders.extend([k] * (ranks[k - 1] - 2 * ranks[k] + ranks[k + 1]))
        return TowerReport(d=d, torsion_orders=tuple(orders), n_invariant=n, window=self.window)

    def meets_tower(self, m: int, source: FiniteF2Complex, cycles: F2Array) -> bool:
        """Whether the classes of ``cycles`` (in ``source``) span a nonzero tower class."""
        plus = self.truncated
        width = len(plus.slice(m))
        image = transport(source, m, cycles, plus)
        tower = self.tower(m)
        bounds = plus.boundaries(m)
        with_image = gf2.rank(gf2.stack(bounds, image, columns=width))
        with_tower = gf2.rank(gf2.stack(bounds, tower, columns=width))
        with_both = gf2.rank(gf2.stack(bounds, image, tower, columns=width))
        return with_image + with_tower - with_both - gf2.rank(bounds) > 0


def _fingerprint(flavor: PlusFlavor) -> object | None:
    try:
        if flavor.level.kind == "i":
            report = flavor.tower_report()
            return (report.d, report.torsion_orders)
        return flavor.bottom()
    except WindowTooSmallError:
        return None


@lru_cache(maxsize=128)
def _certified_window(complex_: BifilteredComplex, level: Level | None, max_doublings: int) -> int:
    w = default_window(complex_)
    for _ in range(max_doublings + 1):
        first = _fingerprint(PlusFlavor(complex_, w, level))
        if first is not None and first == _fingerprint(PlusFlavor(complex_, 2 * w, level)):
            return w
        logger.debug(f"window {w} not certified, doubling")
        w *= 2
    raise WindowTooSmallError(f"no stable window found up to {w}")


def certified_flavor(
    complex_: BifilteredComplex,
    window: int | None = None,
    level: Level | None = None,
    max_doublings: int | None = None,
) -> PlusFlavor:
    """A plus flavor whose window has been certified against twice its size.

    An explicit ``window`` is used as given, without certification. Only the
    certified window size is cached; every call gets a fresh flavor.
    """
    check_rank_one(complex_)
    if window is not None:
        return PlusFlavor(complex_, window, level)
    if max_doublings is None:
        max_doublings = load_settings().max_doublings
    return PlusFlavor(complex_, _certified_window(complex_, level, max_doublings), level)


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


def tower_report(complex_: BifilteredComplex, window: int | None = None) -> TowerReport:
    return certified_flavor(complex_, window).tower_report()


def d_invariant(complex_: BifilteredComplex, window: int | None = None) -> Fraction:
    """Bottom grading of the U-tower in HF+ of the ambient manifold."""
    return Fraction(tower_report(complex_, window).d)


def n_invariant(complex_: BifilteredComplex, window: int | None = None) -> int:
    """Smallest n with U^n HF_red = 0."""
    return tower_report(complex_, window).n_invariant


def _full_slice(complex_: BifilteredComplex) -> FiniteF2Complex:
    return FiniteF2Complex(complex_, ConvexRegion.whole())


def tower_cycle(complex_: BifilteredComplex, window: int | None = None) -> list[Translate]:
    """A cycle in grading d whose class generates the U-inverted homology there."""
    d = int(d_invariant(complex_, window))
    full = _full_slice(complex_)
    basis = full.slice(d)
    for row in full.cycles(d):
        if not full.is_boundary(d, row):
            return [basis[n] for n in np.flatnonzero(row)]
    raise NotAHomologySphereError(f"no essential cycle in grading {d}")


def chain_vector(
    full: FiniteF2Complex, grading: int, chain: Iterable[Translate]
) -> F2Array:
    index = full.index(grading)
    vector = gf2.zeros(1, len(index))
    for term in chain:
        position = index.get(term)
        if position is None:
            raise ComplexValidationError(f"U^{term[1]} {term[0]} is not in grading {grading}")
        vector[0, position] ^= 1
    return vector


def homologous(
    complex_: BifilteredComplex,
    grading: int,
    chain_a: Iterable[Translate],
    chain_b: Iterable[Translate],
) -> bool:
    """Whether two chains of C in one grading differ by a boundary."""
    full = _full_slice(complex_)
    difference = chain_vector(full, grading, chain_a) ^ chain_vector(full, grading, chain_b)
    return full.is_boundary(grading, difference[0])
