"""Convex regions of the (i, j) plane, described by bounds on level functions.

Every level function F used here drops by exactly one under multiplication
by U, so the translates ``U^k x`` of a generator that land in a region form
an interval of k. That is what makes grading slices finite and cheap.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Literal

from pydantic import BaseModel

from floerkit.models import Rational

LevelKind = Literal["i", "j", "max", "min", "upsilon"]


class Level(BaseModel):
    """A level function F(i, j).

    ``max`` is max(i, j - s), ``min`` is min(i, j - s) and ``upsilon`` is
    (1 - t/2) i + (t/2) j.
    """

    kind: LevelKind
    s: int = 0
    t: Rational = Fraction(0)

    model_config = {"frozen": True}

    @classmethod
    def i(cls) -> Level:
        return cls(kind="i")

    @classmethod
    def j(cls) -> Level:
        return cls(kind="j")

    @classmethod
    def max_shift(cls, s: int) -> Level:
        return cls(kind="max", s=s)

    @classmethod
    def min_shift(cls, s: int) -> Level:
        return cls(kind="min", s=s)

    @classmethod
    def upsilon(cls, t: Fraction) -> Level:
        return cls(kind="upsilon", t=t)

    def at(self, i: int, j: int) -> Fraction:
        if self.kind == "i":
            return Fraction(i)
        if self.kind == "j":
            return Fraction(j)
        if self.kind == "max":
            return Fraction(max(i, j - self.s))
        if self.kind == "min":
            return Fraction(min(i, j - self.s))
        return (1 - self.t / 2) * i + (self.t / 2) * j

    def of_translate(self, alexander: int, k: int) -> Fraction:
        """Level of ``U^k x`` for a generator pinned at (0, alexander)."""
        return self.at(0, alexander) - k


class LevelBound(BaseModel):
    """``lo <= F <= hi``; a missing side is unbounded."""

    level: Level
    lo: Rational | None = None
    hi: Rational | None = None

    model_config = {"frozen": True}


class ConvexRegion(BaseModel):
    """Intersection of level bounds; no bounds means the whole plane."""

    bounds: tuple[LevelBound, ...] = ()

    model_config = {"frozen": True}

    @classmethod
    def whole(cls) -> ConvexRegion:
        return cls()

    @classmethod
    def band(
        cls, level: Level, lo: Fraction | int | None = None, hi: Fraction | int | None = None
    ) -> ConvexRegion:
        return cls(bounds=(LevelBound(level=level, lo=lo, hi=hi),))

    @classmethod
    def level_set(cls, level: Level, value: Fraction | int = 0) -> ConvexRegion:
        return cls.band(level, value, value)

    def __and__(self, other: ConvexRegion) -> ConvexRegion:
        return ConvexRegion(bounds=self.bounds + other.bounds)

    def contains(self, i: int, j: int) -> bool:
        for b in self.bounds:
            value = b.level.at(i, j)
            if b.lo is not None and value < b.lo:
                return False
            if b.hi is not None and value > b.hi:
                return False
        return True

    def k_interval(self, alexander: int) -> tuple[int | None, int | None]:
        """Range of k with ``U^k x`` inside the region; ``None`` marks an open end.

        An empty range comes back with ``lo > hi``.
        """
        lo: int | None = None
        hi: int | None = None
        for b in self.bounds:
            base = b.level.at(0, alexander)
            if b.hi is not None:
                bound = math.ceil(base - b.hi)
                lo = bound if lo is None else max(lo, bound)
            if b.lo is not None:
                bound = math.floor(base - b.lo)
                hi = bound if hi is None else min(hi, bound)
        return lo, hi


# ---------------------------------------------------------------------------
# Named regions
# ---------------------------------------------------------------------------


def column(i: int = 0) -> ConvexRegion:
    """``{i = const}``, the hat column when ``i = 0``."""
    return ConvexRegion.level_set(Level.i(), i)


def column_below(s: int) -> ConvexRegion:
    """``{i = 0, j <= s}``."""
    return column(0) & ConvexRegion.band(Level.j(), hi=s)


def half_plane_i(s: int) -> ConvexRegion:
    """``{i <= s}``."""
    return ConvexRegion.band(Level.i(), hi=s)


def half_plane_j(s: int) -> ConvexRegion:
    """``{j <= s}``."""
    return ConvexRegion.band(Level.j(), hi=s)
