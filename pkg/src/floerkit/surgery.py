"""Surgery on a knot through the filtered mapping cone.

+1 surgery keeps both filtrations and yields the knot complex of the core
circle. 1/n surgery keeps only I and yields the d-invariant of the surgered
manifold, with the absolute grading fixed by running the same cone on the
unknot.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from loguru import logger

from floerkit.complexes import FiniteF2Complex, require_valid
from floerkit.cone import build_integer_cone, build_rational_cone
from floerkit.errors import CalibrationError, FlipMapError
from floerkit.flavors import d_invariant
from floerkit.flip import find_flip, verify_flip
from floerkit.models import (
    BifilteredComplex,
    FlipMap,
    Generator,
    HatRank,
    SurgerySample,
    ThetaReport,
)
from floerkit.reduction import reduce
from floerkit.regions import ConvexRegion, Level, column

UNKNOT = BifilteredComplex(
    genus=0, generators=(Generator(name="x", alexander=0, maslov=0),), differential=()
)


def checked_flip(complex_: BifilteredComplex, phi: FlipMap | None) -> FlipMap:
    """``phi`` after verification, or a flip map found by search when it is None."""
    require_valid(complex_)
    if phi is None:
        return find_flip(complex_)
    report = verify_flip(complex_, phi)
    if not report.ok:
        raise FlipMapError(f"flip map fails {report.failed}: {report.detail}")
    return phi


def core_complex(
    complex_: BifilteredComplex,
    phi: FlipMap | None = None,
    lower: int | None = None,
    upper: int | None = None,
) -> BifilteredComplex:
    """Reduced knot complex of the core circle of +1 surgery."""
    phi = checked_flip(complex_, phi)
    flat = build_integer_cone(complex_, phi, lower, upper).flatten()
    core = reduce(flat)
    logger.info(f"core of +1 surgery: {len(flat.generators)} -> {len(core.generators)} generators")
    return core


def hfk_hat_core(complex_: BifilteredComplex, phi: FlipMap | None = None) -> tuple[HatRank, ...]:
    """Rank of the hat knot homology of the core in each Alexander grading, from g down to -g."""
    phi = checked_flip(complex_, phi)
    flat = build_integer_cone(complex_, phi).flatten()
    g = complex_.genus
    ranks = []
    for s in range(g, -g - 1, -1):
        piece = FiniteF2Complex(flat, column(0) & ConvexRegion.level_set(Level.j(), s))
        ranks.append(HatRank(alexander=s, rank=piece.total_rank()))
    return tuple(ranks)


# ---------------------------------------------------------------------------
# 1/n surgery
# ---------------------------------------------------------------------------


def _raw_d(complex_: BifilteredComplex, phi: FlipMap, n: int) -> Fraction:
    cone = build_rational_cone(complex_, phi, n)
    return d_invariant(reduce(cone.flatten()))


@lru_cache(maxsize=64)
def calibration_constant(n: int) -> Fraction:
    """Grading offset making 1/n surgery on the unknot return d = 0."""
    raw = _raw_d(UNKNOT, FlipMap.identity(UNKNOT), n)
    if n == 1 and raw != 0:
        raise CalibrationError(f"the +1 cone on the unknot has d = {raw}, expected 0")
    logger.debug(f"calibration constant for n={n}: {-raw}")
    return -raw


def d_of_1_over_n_surgery(
    complex_: BifilteredComplex, phi: FlipMap | None = None, n: int = 1
) -> Fraction:
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    phi = checked_flip(complex_, phi)
    return _raw_d(complex_, phi, n) + calibration_constant(n)


def theta_probe(
    complex_: BifilteredComplex, phi: FlipMap | None = None, n_max: int = 5
) -> ThetaReport:
    """Spread of d over 1/n surgeries for n = 1..n_max.

    ``stabilized`` reports whether the last three samples agree; it is not a
    proof that larger n add nothing.
    """
    if n_max < 3:
        raise ValueError(f"n_max must be at least 3, got {n_max}")
    phi = checked_flip(complex_, phi)
    samples = tuple(
        SurgerySample(n=n, d=_raw_d(complex_, phi, n) + calibration_constant(n))
        for n in range(1, n_max + 1)
    )
    values = [sample.d for sample in samples]
    return ThetaReport(
        theta=max(values) - min(values),
        stabilized=len(set(values[-3:])) == 1,
        samples=samples,
    )
