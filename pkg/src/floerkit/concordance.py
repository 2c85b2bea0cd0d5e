"""Concordance invariants tau, nu, nu', epsilon, Upsilon and V_0.

Every invariant is read off subquotients of C in the grading d of the
bottom of the U-tower, compared against that tower in the plus flavor.
"""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING, Literal

from loguru import logger

from floerkit import gf2
from floerkit.complexes import FiniteF2Complex, hat_rank, transport
from floerkit.config import load_settings
from floerkit.errors import NotAHomologySphereError, TrichotomyError
from floerkit.flavors import certified_flavor
from floerkit.models import BifilteredComplex, InvariantReport, UpsilonSample
from floerkit.regions import ConvexRegion, Level, column_below

if TYPE_CHECKING:
    from floerkit.flavors import PlusFlavor


def _ambient(complex_: BifilteredComplex, window: int | None) -> tuple[PlusFlavor, int]:
    flavor = certified_flavor(complex_, window)
    return flavor, flavor.bottom()


def _first_reaching_tower(
    complex_: BifilteredComplex, window: int | None, kind: Literal["tau", "nu"]
) -> int:
    flavor, d = _ambient(complex_, window)
    g = complex_.genus
    for s in range(-g - 1, g + 2):
        if kind == "tau":
            region = column_below(s)
        else:
            region = ConvexRegion.level_set(Level.max_shift(s), 0)
        source = FiniteF2Complex(complex_, region)
        cycles = source.cycles(d)
        if cycles.shape[0] and flavor.meets_tower(d, source, cycles):
            return s
    raise NotAHomologySphereError(f"no {kind} level reaches the tower in grading {d}")


def tau(complex_: BifilteredComplex, window: int | None = None) -> int:
    """Least s such that ``C{i = 0, j <= s}`` reaches the tower of HF+."""
    return _first_reaching_tower(complex_, window, "tau")


def nu(complex_: BifilteredComplex, window: int | None = None) -> int:
    """Least s such that ``C{max(i, j - s) = 0}`` reaches the tower of HF+."""
    return _first_reaching_tower(complex_, window, "nu")


def nu_prime(complex_: BifilteredComplex, window: int | None = None) -> int:
    """Greatest s such that every hat class hitting the tower survives in ``C{min(i, j - s) = 0}``.

    The hat classes in grading d that map to the tower generator form a coset
    ``x0 + K`` of the classes K that map to zero, so the condition is that the
    image of ``x0`` avoids the span of the images of K.
    """
    flavor, d = _ambient(complex_, window)
    hat = flavor.hat
    plus = flavor.truncated
    width = len(plus.slice(d))
    cycles = hat.cycles(d)
    pushed = transport(hat, d, cycles, plus)
    bounds = plus.boundaries(d)
    killed = gf2.relations(pushed, bounds, columns=width)
    with_tower = gf2.stack(bounds, flavor.tower(d), columns=width)
    reaching = gf2.relations(pushed, with_tower, columns=width)
    start = next((row for row in reaching if not gf2.in_span(row, killed)), None)
    if start is None:
        raise NotAHomologySphereError(f"no hat class maps onto the tower in grading {d}")

    g = complex_.genus
    for s in range(g + 1, -g - 2, -1):
        target = FiniteF2Complex(complex_, ConvexRegion.level_set(Level.min_shift(s), 0))
        images = transport(hat, d, cycles, target)
        head = gf2.combine(start, images)
        tail = gf2.combine(killed, images) if killed.shape[0] else gf2.zeros(0, images.shape[1])
        span = gf2.stack(target.boundaries(d), tail, columns=images.shape[1])
        if not gf2.in_span(head[0], span):
            return s
    raise NotAHomologySphereError(f"nu' scan found no level in grading {d}")


def epsilon_from(tau_: int, nu_: int, nu_prime_: int) -> int:
    """Classify ``(tau, nu, nu')`` into the epsilon trichotomy."""
    if nu_ not in (tau_, tau_ + 1) or nu_prime_ not in (tau_ - 1, tau_):
        raise TrichotomyError(f"nu={nu_}, nu'={nu_prime_} are out of range for tau={tau_}")
    up, down = nu_ == tau_ + 1, nu_prime_ == tau_ - 1
    if up and down:
        raise TrichotomyError(f"nu = tau + 1 and nu' = tau - 1 both hold for tau={tau_}")
    if up:
        return -1
    if down:
        return 1
    return 0


def epsilon(complex_: BifilteredComplex, window: int | None = None) -> int:
    return epsilon_from(
        tau(complex_, window), nu(complex_, window), nu_prime(complex_, window)
    )


# ---------------------------------------------------------------------------
# Upsilon and V_0
# ---------------------------------------------------------------------------


def upsilon(complex_: BifilteredComplex, t: Fraction, window: int | None = None) -> Fraction:
    """Upsilon(t): -2 times the least level s at which ``C^t_s`` carries a class of grading d.

    Only levels of the grading-d translates can change the answer, so those
    are the candidates, in increasing order.
    """
    t = Fraction(t)
    if not 0 <= t <= 2:
        raise ValueError(f"t must lie in [0, 2], got {t}")
    _, d = _ambient(complex_, window)
    full = FiniteF2Complex(complex_, ConvexRegion.whole())
    basis = full.slice(d)
    level = Level.upsilon(t)
    alexander = {g.name: g.alexander for g in complex_.generators}
    levels = [level.of_translate(alexander[name], k) for name, k in basis]
    matrix = full.boundary_matrix(d)
    for s in sorted(set(levels)):
        kept = [n for n, value in enumerate(levels) if value <= s]
        kernel = gf2.nullspace(matrix[:, kept])
        cycles = gf2.zeros(kernel.shape[0], len(basis))
        cycles[:, kept] = kernel
        if full.class_rank(d, cycles):
            return -2 * s
    raise NotAHomologySphereError(f"no class in grading {d} for t={t}")


def upsilon_table(
    complex_: BifilteredComplex, denominator: int, window: int | None = None
) -> tuple[UpsilonSample, ...]:
    """Samples at ``t = k / denominator`` for ``k = 0 .. 2 * denominator``."""
    if denominator < 1:
        raise ValueError("denominator must be at least 1")
    grid = [Fraction(k, denominator) for k in range(2 * denominator + 1)]
    return tuple(UpsilonSample(t=t, value=upsilon(complex_, t, window)) for t in grid)


def v0(complex_: BifilteredComplex, window: int | None = None) -> int:
    """V_0 = (d - b) / 2 with b the tower bottom of ``C{max(i, j) >= 0}``."""
    _, d = _ambient(complex_, window)
    bottom = certified_flavor(complex_, window, Level.max_shift(0)).bottom()
    value = Fraction(d - bottom, 2)
    if value.denominator != 1 or value < 0:
        raise NotAHomologySphereError(f"V_0 came out as {value}, expected a nonnegative integer")
    return int(value)


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------


def invariant_report(
    complex_: BifilteredComplex,
    window: int | None = None,
    upsilon_denominator: int | None = None,
) -> InvariantReport:
    """Compute every invariant of ``complex_`` at one certified window."""
    if upsilon_denominator is None:
        upsilon_denominator = load_settings().upsilon_denominator
    flavor = certified_flavor(complex_, window)
    tower = flavor.tower_report()
    tau_, nu_, nu_prime_ = (
        tau(complex_, window),
        nu(complex_, window),
        nu_prime(complex_, window),
    )
    report = InvariantReport(
        tau=tau_,
        nu=nu_,
        nu_prime=nu_prime_,
        epsilon=epsilon_from(tau_, nu_, nu_prime_),  # type: ignore[arg-type]
        v0=v0(complex_, window),
        upsilon=upsilon_table(complex_, upsilon_denominator, window),
        d=tower.d,
        n_invariant=tower.n_invariant,
        torsion_orders=tower.torsion_orders,
        hat_rank=hat_rank(complex_),
        generators=len(complex_.generators),
        window=flavor.window,
    )
    logger.debug(f"tau={report.tau} eps={report.epsilon} d={report.d} window={report.window}")
    return report
