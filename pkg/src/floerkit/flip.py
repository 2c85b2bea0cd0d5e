"""Flip maps: chain homotopy equivalences exchanging the i- and j-filtrations.

A flip map phi must be a chain map over F[U, U^-1], preserve the Maslov
grading, carry ``C{j <= s}`` into ``C{i <= s}`` for every s, and induce an
isomorphism on the homology of each such pair for ``s`` in ``[-g, g]``.
"""

from __future__ import annotations

from collections import Counter
from typing import TYPE_CHECKING

import numpy as np
from loguru import logger

from floerkit import gf2
from floerkit.complexes import FiniteF2Complex, transport
from floerkit.config import load_settings
from floerkit.errors import ComplexFormatError, FlipMapError
from floerkit.models import BifilteredComplex, FlipEntry, FlipMap, FlipReport
from floerkit.regions import half_plane_i, half_plane_j

if TYPE_CHECKING:
    from collections.abc import Iterator, Mapping, Sequence

    from floerkit.config import Settings
    from floerkit.gf2 import F2Array

    _TermsView = Mapping[str, Sequence[tuple[str, int]]]

_Terms = dict[str, list[tuple[str, int]]]

MAX_SEARCH_GENERATORS = 24


def _parity(counts: Counter[tuple[str, int]]) -> set[tuple[str, int]]:
    return {key for key, n in counts.items() if n % 2}


def _chain_map_defect(complex_: BifilteredComplex, terms: _TermsView) -> str | None:
    succ = complex_.successors()
    for g in complex_.generators:
        left: Counter[tuple[str, int]] = Counter()
        for mid, a in succ[g.name]:
            for end, e in terms.get(mid, ()):
                left[(end, a + e)] += 1
        right: Counter[tuple[str, int]] = Counter()
        for mid, e in terms.get(g.name, ()):
            for end, b in succ[mid]:
                right[(end, e + b)] += 1
        if _parity(left) != _parity(right):
            return f"phi(d {g.name}) != d(phi {g.name})"
    return None


class SwapHomology:
    """Homology of the pairs ``C{j <= s}`` and ``C{i <= s}`` for ``s`` in ``[-g, g]``.

    Below grading ``min(maslov) - 2g + 2s - 2`` both sides agree with C itself,
    so two gradings there plus everything up to the top of ``C{j <= s}`` are
    enough to decide whether an F[U]-equivariant map is a quasi-isomorphism.
    """

    def __init__(self, complex_: BifilteredComplex) -> None:
        self.complex = complex_
        g = complex_.genus
        low, high = complex_.maslov_range()
        self.pairs: list[tuple[int, FiniteF2Complex, FiniteF2Complex, range]] = []
        for s in range(-g, g + 1):
            gradings = range(low - 2 * g + 2 * s - 3, high + 2 * g + 2 * s + 3)
            self.pairs.append(
                (
                    s,
                    FiniteF2Complex(complex_, half_plane_j(s)),
                    FiniteF2Complex(complex_, half_plane_i(s)),
                    gradings,
                )
            )

    def _images(
        self, terms: _TermsView
    ) -> Iterator[tuple[int, int, FiniteF2Complex, FiniteF2Complex, F2Array]]:
        for s, source, target, gradings in self.pairs:
            for m in gradings:
                images = transport(source, m, source.cycles(m), target, terms)
                yield s, m, source, target, images

    def first_failure(self, terms: _TermsView) -> tuple[int, int] | None:
        """The first ``(s, grading)`` where the induced map is not an isomorphism."""
        for s, m, source, target, images in self._images(terms):
            dim = source.betti(m)
            if dim != target.betti(m) or target.class_rank(m, images) != dim:
                return s, m
        return None

    def agree(
        self,
        first: _TermsView,
        second: _TermsView,
    ) -> bool:
        """Whether two maps induce the same map on every pair."""
        for (_, m, _, target, a), (*_, b) in zip(self._images(first), self._images(second)):
            if target.class_rank(m, a ^ b):
                return False
        return True


def verify_flip(
    complex_: BifilteredComplex, phi: FlipMap, homology: SwapHomology | None = None
) -> FlipReport:
    """Check the flip-map axioms in order, reporting the first one that fails."""
    gens = complex_.by_name()
    for e in phi.entries:
        for end in (e.source, e.target):
            if end not in gens:
                raise ComplexFormatError(
                    f"flip entry {e.source}->{e.target} names unknown generator {end!r}"
                )
    terms = phi.terms()

    defect = _chain_map_defect(complex_, terms)
    if defect is not None:
        return FlipReport(ok=False, failed="chain_map", detail=defect)
    for e in phi.entries:
        x, y = gens[e.source], gens[e.target]
        if y.maslov - 2 * e.u_power != x.maslov:
            return FlipReport(
                ok=False,
                failed="grading",
                detail=f"{x.name}->U^{e.u_power} {y.name} changes the Maslov grading",
            )
    for e in phi.entries:
        if -e.u_power > gens[e.source].alexander:
            return FlipReport(
                ok=False,
                failed="filtration",
                detail=f"U^{e.u_power} {e.target} sits at i={-e.u_power} above j of {e.source}",
            )
    failure = (homology or SwapHomology(complex_)).first_failure(terms)
    if failure is not None:
        s, m = failure
        return FlipReport(
            ok=False,
            failed="quasi_isomorphism",
            detail=f"H(C{{j<={s}}}) -> H(C{{i<={s}}}) is not an isomorphism in grading {m}",
        )
    return FlipReport(ok=True)


def same_homotopy_class(complex_: BifilteredComplex, phi: FlipMap, psi: FlipMap) -> bool:
    """Whether two flip maps induce equal maps on every ``H(C{j <= s}) -> H(C{i <= s})``."""
    return SwapHomology(complex_).agree(phi.terms(), psi.terms())


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------


def _unknowns(complex_: BifilteredComplex, bound: int) -> list[tuple[str, str, int]]:
    out: list[tuple[str, str, int]] = []
    for x in complex_.generators:
        for y in complex_.generators:
            if (y.maslov - x.maslov) % 2:
                continue
            k = (y.maslov - x.maslov) // 2
            if abs(k) <= bound and -k <= x.alexander:
                out.append((x.name, y.name, k))
    return out


def _chain_map_system(
    complex_: BifilteredComplex, unknowns: list[tuple[str, str, int]]
) -> F2Array:
    succ = complex_.successors()
    pred: dict[str, list[str]] = {g.name: [] for g in complex_.generators}
    for e in complex_.differential:
        pred[e.target].append(e.source)
    rows: dict[tuple[str, str], int] = {}
    entries: list[tuple[int, int]] = []

    def row(x: str, z: str) -> int:
        return rows.setdefault((x, z), len(rows))

    for col, (x, y, _) in enumerate(unknowns):
        # phi(d w) for every w with w -> x
        for w in pred[x]:
            entries.append((row(w, y), col))
        # d(phi x)
        for z, _ in succ[y]:
            entries.append((row(x, z), col))
    matrix = gf2.zeros(len(rows), len(unknowns))
    for r, c in entries:
        matrix[r, c] ^= 1
    return matrix


def _to_flip(unknowns: list[tuple[str, str, int]], vector: F2Array) -> FlipMap:
    return FlipMap(
        entries=tuple(
            FlipEntry(source=x, target=y, u_power=k)
            for (x, y, k), bit in zip(unknowns, vector)
            if bit
        )
    )


def find_flip(complex_: BifilteredComplex, settings: Settings | None = None) -> FlipMap:
    """Search for a flip map with entry powers bounded by ``2 * genus``.

    Chain maps respecting grading and the swapped filtration form the null
    space of an F2 system. Its basis vectors are tried first, then seeded
    random combinations, until one passes the quasi-isomorphism check.
    """
    if len(complex_.generators) > MAX_SEARCH_GENERATORS:
        raise FlipMapError(
            f"flip search is limited to {MAX_SEARCH_GENERATORS} generators, "
            f"got {len(complex_.generators)}"
        )
    settings = settings or load_settings()
    unknowns = _unknowns(complex_, 2 * complex_.genus)
    basis = gf2.nullspace(_chain_map_system(complex_, unknowns))
    logger.debug(f"{len(unknowns)} flip unknowns, {basis.shape[0]} independent chain maps")
    if basis.shape[0] == 0:
        raise FlipMapError("no filtered chain map within the power bound")

    homology = SwapHomology(complex_)

    def candidates() -> Iterator[F2Array]:
        yield from basis
        rng = np.random.default_rng(settings.flip_seed)
        for _ in range(settings.flip_attempts):
            coefficients = rng.integers(0, 2, size=basis.shape[0], dtype=np.uint8)
            if coefficients.any():
                yield gf2.combine(coefficients, basis)[0]

    for tried, vector in enumerate(candidates(), start=1):
        terms: _Terms = {}
        for (x, y, k), bit in zip(unknowns, vector):
            if bit:
                terms.setdefault(x, []).append((y, k))
        if homology.first_failure(terms) is None:
            logger.debug(f"flip map found after {tried} candidates")
            return _to_flip(unknowns, vector)
    raise FlipMapError(f"no quasi-isomorphic flip map among {settings.flip_attempts} candidates")
