"""Validation, algebra and finite subquotients of bifiltered complexes.

A region of the (i, j) plane cuts a finite-dimensional F2 complex out of a
complex over F[U, U^-1] one Maslov grading at a time: in grading m a generator
x contributes at most the single translate ``U^k x`` with ``maslov - 2k = m``.
"""

from __future__ import annotations

from collections import Counter
from typing import TYPE_CHECKING

import numpy as np
from loguru import logger

from floerkit import gf2
from floerkit.errors import ComplexValidationError, WindowTooSmallError
from floerkit.models import BifilteredComplex, DiffEntry, Generator, ValidationReport
from floerkit.regions import ConvexRegion, column

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

    from floerkit.gf2 import F2Array

Translate = tuple[str, int]
"""``(name, k)`` standing for ``U^k name``."""

# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def _d_squared(complex_: BifilteredComplex) -> list[str]:
    succ = complex_.successors()
    problems: list[str] = []
    for g in complex_.generators:
        hits: Counter[Translate] = Counter()
        for mid, a in succ[g.name]:
            for end, b in succ[mid]:
                hits[(end, a + b)] += 1
        for (end, power), count in sorted(hits.items()):
            if count % 2:
                problems.append(f"d^2 != 0: d(d({g.name})) contains U^{power} {end}")
    return problems


def validate(complex_: BifilteredComplex) -> ValidationReport:
    """Check d^2 = 0, filtration, grading, reducedness and the stored genus."""
    gens = complex_.by_name()
    violations: list[str] = []
    for e in complex_.differential:
        x, y = gens[e.source], gens[e.target]
        if y.alexander - e.u_power > x.alexander:
            violations.append(f"filtration: {x.name}->U^{e.u_power} {y.name} raises j")
        if y.maslov - 2 * e.u_power != x.maslov - 1:
            violations.append(f"grading: {x.name}->U^{e.u_power} {y.name} is not of degree -1")
        if complex_.reduced and e.u_power == 0 and y.alexander >= x.alexander:
            violations.append(f"reduced: {x.name}->{y.name} lowers neither i nor j")
    violations.extend(_d_squared(complex_))
    spread = max((abs(g.alexander) for g in complex_.generators), default=0)
    if spread != complex_.genus:
        violations.append(f"genus: stored {complex_.genus}, max |alexander| is {spread}")
    return ValidationReport(ok=not violations, violations=tuple(violations))


def require_valid(complex_: BifilteredComplex) -> None:
    report = validate(complex_)
    if not report.ok:
        raise ComplexValidationError("; ".join(report.violations))


# ---------------------------------------------------------------------------
# Algebra
# ---------------------------------------------------------------------------


def _product_names(c1: BifilteredComplex, c2: BifilteredComplex) -> dict[tuple[str, str], str]:
    """``x_y`` for every pair, unless two pairs collide.

    On a collision every underscore inside a factor name is doubled and the
    factors are joined with ``_x_``, which reads back unambiguously.
    """
    pairs = [(x.name, y.name) for x in c1.generators for y in c2.generators]
    names = {(x, y): f"{x}_{y}" for x, y in pairs}
    if len(set(names.values())) == len(names):
        return names
    return {(x, y): f"{x.replace('_', '__')}_x_{y.replace('_', '__')}" for x, y in pairs}


def tensor(c1: BifilteredComplex, c2: BifilteredComplex) -> BifilteredComplex:
    """Tensor product over F[U, U^-1] with the Leibniz differential.

    The generator for ``(x, y)`` is named ``x_y`` when that is unambiguous.
    """
    name = _product_names(c1, c2)
    gens = tuple(
        Generator(
            name=name[x.name, y.name],
            alexander=x.alexander + y.alexander,
            maslov=x.maslov + y.maslov,
        )
        for x in c1.generators
        for y in c2.generators
    )
    arrows: list[DiffEntry] = []
    for e in c1.differential:
        for y in c2.generators:
            arrows.append(
                DiffEntry(
                    source=name[e.source, y.name],
                    target=name[e.target, y.name],
                    u_power=e.u_power,
                )
            )
    for x in c1.generators:
        for e in c2.differential:
            arrows.append(
                DiffEntry(
                    source=name[x.name, e.source],
                    target=name[x.name, e.target],
                    u_power=e.u_power,
                )
            )
    genus = max((abs(g.alexander) for g in gens), default=0)
    return BifilteredComplex(
        genus=genus,
        generators=gens,
        differential=tuple(arrows),
        reduced=c1.reduced and c2.reduced,
    )


def dualize(complex_: BifilteredComplex) -> BifilteredComplex:
    """Dual complex: both gradings negated, every arrow reversed with the same U-power."""
    return BifilteredComplex(
        genus=complex_.genus,
        generators=tuple(
            Generator(name=g.name, alexander=-g.alexander, maslov=-g.maslov)
            for g in complex_.generators
        ),
        differential=tuple(
            DiffEntry(source=e.target, target=e.source, u_power=e.u_power)
            for e in complex_.differential
        ),
        reduced=complex_.reduced,
    )


# ---------------------------------------------------------------------------
# Finite subquotients
# ---------------------------------------------------------------------------


class FiniteF2Complex:
    """The subquotient of a complex cut out by a convex region.

    With ``window`` set, only translates ``U^k x`` with ``|k| <= window`` are
    kept, and an arrow that reaches an excluded translate inside the region
    raises :class:`WindowTooSmallError`. Without it, each grading slice is
    still finite.
    """

    def __init__(
        self, complex_: BifilteredComplex, region: ConvexRegion, window: int | None = None
    ) -> None:
        self.complex = complex_
        self.region = region
        self.window = window
        self._succ = complex_.successors()
        self._gens = complex_.by_name()
        self._k_range = {g.name: region.k_interval(g.alexander) for g in complex_.generators}
        self._slices: dict[int, tuple[Translate, ...]] = {}
        self._indices: dict[int, dict[Translate, int]] = {}
        self._boundary: dict[int, F2Array] = {}
        self._cycles: dict[int, F2Array] = {}

    # -- basis -----------------------------------------------------------

    def _in_region(self, name: str, k: int) -> bool:
        lo, hi = self._k_range[name]
        return (lo is None or k >= lo) and (hi is None or k <= hi)

    def contains(self, name: str, k: int) -> bool:
        if self.window is not None and abs(k) > self.window:
            return False
        return self._in_region(name, k)

    def slice(self, m: int) -> tuple[Translate, ...]:
        """Basis of grading ``m``, in generator order."""
        if m not in self._slices:
            basis: list[Translate] = []
            for g in self.complex.generators:
                if (g.maslov - m) % 2:
                    continue
                k = (g.maslov - m) // 2
                if self.contains(g.name, k):
                    basis.append((g.name, k))
            self._slices[m] = tuple(basis)
            self._indices[m] = {t: n for n, t in enumerate(basis)}
        return self._slices[m]

    def index(self, m: int) -> dict[Translate, int]:
        self.slice(m)
        return self._indices[m]

    def basis(self) -> list[Translate]:
        """All basis translates; needs a window or a region bounded in k."""
        out: list[Translate] = []
        for g in self.complex.generators:
            lo, hi = self._bounded_range(g.name)
            out.extend((g.name, k) for k in range(lo, hi + 1))
        return out

    def _bounded_range(self, name: str) -> tuple[int, int]:
        lo, hi = self._k_range[name]
        if self.window is not None:
            lo = -self.window if lo is None else max(lo, -self.window)
            hi = self.window if hi is None else min(hi, self.window)
        if lo is None or hi is None:
            raise WindowTooSmallError("region is unbounded; a window is required")
        return lo, hi

    def gradings(self) -> list[int]:
        """Every grading with a nonempty slice, ascending."""
        seen = {self._gens[name].maslov - 2 * k for name, k in self.basis()}
        return sorted(seen)

    @property
    def dimension(self) -> int:
        return len(self.basis())

    # -- differential ----------------------------------------------------

    def boundary_matrix(self, m: int) -> F2Array:
        """Matrix of the differential from grading ``m`` to ``m - 1``."""
        if m not in self._boundary:
            cols = self.slice(m)
            rows = self.index(m - 1)
            mat = gf2.zeros(len(rows), len(cols))
            for c, (name, k) in enumerate(cols):
                for target, u in self._succ[name]:
                    key = (target, k + u)
                    r = rows.get(key)
                    if r is not None:
                        mat[r, c] ^= 1
                    elif self.window is not None and self._in_region(target, k + u):
                        raise WindowTooSmallError(
                            f"arrow {name}->{target} reaches U^{k + u} {target}, "
                            f"outside window {self.window}"
                        )
            self._boundary[m] = mat
        return self._boundary[m]

    def cycles(self, m: int) -> F2Array:
        if m not in self._cycles:
            self._cycles[m] = gf2.nullspace(self.boundary_matrix(m))
        return self._cycles[m]

    def boundaries(self, m: int) -> F2Array:
        """Spanning set (rows) of the boundaries in grading ``m``."""
        return np.ascontiguousarray(self.boundary_matrix(m + 1).T)

    def betti(self, m: int) -> int:
        return int(self.cycles(m).shape[0]) - gf2.rank(self.boundary_matrix(m + 1))

    def class_rank(self, m: int, vectors: F2Array) -> int:
        """Dimension of the span of the classes of ``vectors`` in homology."""
        width = len(self.slice(m))
        bounds = self.boundaries(m)
        return gf2.rank(gf2.stack(bounds, vectors, columns=width)) - gf2.rank(bounds)

    def is_boundary(self, m: int, vector: F2Array) -> bool:
        return gf2.in_span(vector, self.boundaries(m))

    def total_rank(self) -> int:
        return sum(self.betti(m) for m in self.gradings())


def subquotient(
    complex_: BifilteredComplex, region: ConvexRegion, window: int | None = None
) -> FiniteF2Complex:
    """Finite F2 complex of the translates of ``complex_`` inside ``region``.

    With a window, every differential is built up front so that a window
    too small for the region fails here rather than mid-computation.
    """
    fc = FiniteF2Complex(complex_, region, window)
    if window is not None:
        for m in fc.gradings():
            fc.boundary_matrix(m)
        logger.debug(f"subquotient with window {window} has {fc.dimension} translates")
    return fc


def transport(
    source: FiniteF2Complex,
    m: int,
    vectors: F2Array,
    target: FiniteF2Complex,
    terms: Mapping[str, Sequence[tuple[str, int]]] | None = None,
    shift: int = 0,
) -> F2Array:
    """Apply a U-equivariant map to chains of ``source`` in grading ``m``.

    ``terms[x]`` lists ``(y, e)`` with ``x -> U^e y``; the default is the
    identity. ``U^shift`` is applied on top, so the image lives in grading
    ``m - 2 * shift`` of ``target``. Terms leaving the target are dropped.
    """
    src = source.slice(m)
    dst = target.index(m - 2 * shift)
    out = gf2.zeros(vectors.shape[0], len(dst))
    if vectors.shape[0] == 0:
        return out
    for c, (name, k) in enumerate(src):
        column_ = vectors[:, c]
        if not column_.any():
            continue
        images = terms.get(name, ()) if terms is not None else ((name, 0),)
        for y, e in images:
            r = dst.get((y, k + e + shift))
            if r is not None:
                out[:, r] ^= column_
    return out


# ---------------------------------------------------------------------------
# Hat data
# ---------------------------------------------------------------------------


def hat_rank(complex_: BifilteredComplex) -> int:
    """Total rank of the homology of the i = 0 column."""
    return FiniteF2Complex(complex_, column(0)).total_rank()


def alexander_polynomial(complex_: BifilteredComplex) -> dict[int, int]:
    """Graded Euler characteristic of the hat column, keyed by Alexander grading.

    Zero coefficients are omitted.
    """
    coeffs: Counter[int] = Counter()
    for g in complex_.generators:
        coeffs[g.alexander] += -1 if g.maslov % 2 else 1
    return {a: v for a, v in sorted(coeffs.items()) if v}
