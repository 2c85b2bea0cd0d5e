"""d-invariants of boundaries of definite plumbing trees.

For a positive-definite plumbing X with at most one bad vertex,

    d(boundary X, s) = (min alpha^2 - b_2) / 4

over characteristic covectors alpha in the class of s, with
``alpha^2 = alpha^T A^-1 alpha``. Negative-definite graphs are evaluated
through ``-A`` and the sign of the answer flipped, and ``reverse`` flips the
sign once more.

All arithmetic is exact: integer matrices go through sympy, square
minimization runs on :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from collections import deque
from fractions import Fraction
from itertools import product
from typing import TYPE_CHECKING, Any, Literal

import numpy as np
import sympy
from loguru import logger

from floerkit import gf2
from floerkit.config import load_settings
from floerkit.errors import (
    BadVertexError,
    EnumerationBudgetError,
    GraphError,
    IndefiniteFormError,
    PipelineError,
)
from floerkit.models import (
    CharCovector,
    GammaRow,
    IntersectionForm,
    PlumbingGraph,
    PlumbingVertex,
    SquareMinimum,
)

if TYPE_CHECKING:
    from collections.abc import Iterator, Sequence

SpinC = Literal["self-conjugate"] | int


def _fraction(value: Any) -> Fraction:
    rational = sympy.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def _matrix(form: IntersectionForm) -> sympy.Matrix:
    return sympy.Matrix([list(row) for row in form.matrix])


def _positive(form: IntersectionForm) -> sympy.Matrix:
    """``A`` or ``-A``, whichever is positive-definite."""
    a = _matrix(form)
    return a if form.definiteness == "positive" else -a


# ---------------------------------------------------------------------------
# Graph and form
# ---------------------------------------------------------------------------


def _check_tree(graph: PlumbingGraph) -> None:
    names = graph.names()
    if not names:
        raise GraphError("plumbing graph has no vertices")
    if len(graph.edges) != len(names) - 1:
        raise GraphError(
            f"{len(names)} vertices and {len(graph.edges)} edges do not form a tree"
        )
    neighbours: dict[str, list[str]] = {name: [] for name in names}
    for a, b in graph.edges:
        neighbours[a].append(b)
        neighbours[b].append(a)
    seen = {names[0]}
    queue = deque([names[0]])
    while queue:
        for nxt in neighbours[queue.popleft()]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    if len(seen) != len(names):
        raise GraphError("plumbing graph is not connected")


def analyze(graph: PlumbingGraph) -> IntersectionForm:
    """Intersection form of a plumbing tree, certified definite by its leading minors."""
    _check_tree(graph)
    names = graph.names()
    position = {name: n for n, name in enumerate(names)}
    a = sympy.zeros(len(names), len(names))
    for n, v in enumerate(graph.vertices):
        a[n, n] = v.weight
    for u, v in graph.edges:
        a[position[u], position[v]] += 1
        a[position[v], position[u]] += 1

    minors = [a[:k, :k].det() for k in range(1, len(names) + 1)]
    if all(m > 0 for m in minors):
        definiteness: Literal["positive", "negative"] = "positive"
    elif all((m > 0) if k % 2 == 0 else (m < 0) for k, m in enumerate(minors, start=1)):
        definiteness = "negative"
    else:
        raise IndefiniteFormError(
            f"leading principal minors {[int(m) for m in minors]} are not those of a definite form"
        )

    sign = 1 if definiteness == "positive" else -1
    bad = tuple(
        v.name for v in graph.vertices if graph.valence(v.name) > sign * v.weight
    )
    if len(bad) > 1:
        raise BadVertexError(f"{len(bad)} bad vertices ({', '.join(bad)}); at most one is allowed")
    return IntersectionForm(
        names=tuple(names),
        matrix=tuple(tuple(int(a[r, c]) for c in range(len(names))) for r in range(len(names))),
        definiteness=definiteness,
        det=int(minors[-1]),
        bad_vertices=bad,
    )


# ---------------------------------------------------------------------------
# Characteristic covectors and Spin^c classes
# ---------------------------------------------------------------------------


def is_characteristic(form: IntersectionForm, alpha: Sequence[int]) -> bool:
    return len(alpha) == form.rank and all(
        (value - form.matrix[n][n]) % 2 == 0 for n, value in enumerate(alpha)
    )


def self_conjugate_class(form: IntersectionForm) -> CharCovector:
    """A characteristic covector of the form ``A x`` with x integral.

    x is the F2 solution of ``A x = diag(A)`` with free variables set to 1,
    lifted to 0/1 integers.
    """
    a = np.array(form.matrix, dtype=np.int64)
    particular = gf2.solve(a, np.diag(a))
    if particular is None:
        raise IndefiniteFormError("diagonal is not in the column space of A mod 2")
    kernel = gf2.nullspace(a)
    x = particular
    if kernel.shape[0]:
        x = x ^ gf2.combine(np.ones(kernel.shape[0], dtype=np.uint8), kernel)[0]
    alpha = a @ x.astype(np.int64)
    return CharCovector(alpha=tuple(int(v) for v in alpha), class_rep=True)


def same_class(form: IntersectionForm, alpha: Sequence[int], beta: Sequence[int]) -> bool:
    """Whether ``(alpha - beta) / 2 = A x`` has an integral solution x."""
    difference = [x - y for x, y in zip(alpha, beta, strict=True)]
    if any(v % 2 for v in difference):
        return False
    half = sympy.Matrix([v // 2 for v in difference])
    solution = _matrix(form).inv() * half
    return all(entry.is_integer for entry in solution)


def smith_normal_form(matrix: sympy.Matrix) -> tuple[list[int], sympy.Matrix, sympy.Matrix]:
    """Diagonal ``d`` and unimodular ``U``, ``V`` with ``U * matrix * V = diag(d)``.

    Works for square matrices of full rank; every ``d_i`` divides the next.
    """
    s = matrix.copy()
    n = s.rows
    left = sympy.eye(n)
    right = sympy.eye(n)

    for k in range(n):
        while True:
            block = [
                (abs(s[r, c]), r, c) for r in range(k, n) for c in range(k, n) if s[r, c] != 0
            ]
            if not block:
                raise IndefiniteFormError("matrix is singular")
            _, r, c = min(block)
            if r != k:
                s.row_swap(k, r)
                left.row_swap(k, r)
            if c != k:
                s.col_swap(k, c)
                right.col_swap(k, c)
            pivot = s[k, k]
            for r in range(k + 1, n):
                q = s[r, k] // pivot
                if q:
                    s.row_op(r, lambda value, col, q=q, k=k: value - q * s[k, col])
                    left.row_op(r, lambda value, col, q=q, k=k: value - q * left[k, col])
            for c in range(k + 1, n):
                q = s[k, c] // pivot
                if q:
                    s.col_op(c, lambda value, row, q=q, k=k: value - q * s[row, k])
                    right.col_op(c, lambda value, row, q=q, k=k: value - q * right[row, k])
            if any(s[r, k] for r in range(k + 1, n)) or any(s[k, c] for c in range(k + 1, n)):
                continue
            stray = next(
                (r for r in range(k + 1, n) for c in range(k + 1, n) if s[r, c] % pivot),
                None,
            )
            if stray is None:
                break
            s.row_op(k, lambda value, col, r=stray: value + s[r, col])
            left.row_op(k, lambda value, col, r=stray: value + left[r, col])
        if s[k, k] < 0:
            s.row_op(k, lambda value, col: -value)
            left.row_op(k, lambda value, col: -value)
    return [int(s[k, k]) for k in range(n)], left, right


def spinc_classes(form: IntersectionForm) -> list[CharCovector]:
    """One characteristic covector per Spin^c structure on the boundary.

    With ``U A V = diag(d)``, representatives are ``alpha_0 + 2 U^-1 u`` for
    u in the box ``[0, d_1) x ... x [0, d_n)``, in lexicographic order of u,
    where ``alpha_0`` is the self-conjugate representative (index 0).
    """
    diagonal, left, _ = smith_normal_form(_matrix(form))
    inverse = left.inv()
    base = self_conjugate_class(form).alpha
    classes: list[CharCovector] = []
    for u in product(*(range(d) for d in diagonal)):
        shift = inverse * sympy.Matrix(u)
        alpha = tuple(int(b + 2 * shift[n]) for n, b in enumerate(base))
        classes.append(CharCovector(alpha=alpha, class_rep=not any(u)))
    logger.debug(f"{len(classes)} Spin^c classes, invariant factors {diagonal}")
    return classes


def square(form: IntersectionForm, alpha: Sequence[int]) -> Fraction:
    """``alpha^T P^-1 alpha`` for the positive-definite sign ``P = +-A``."""
    v = sympy.Matrix(list(alpha))
    return _fraction((v.T * _positive(form).inv() * v)[0, 0])


def sample_class_squares(
    form: IntersectionForm, alpha: CharCovector, count: int = 100, seed: int = 0
) -> list[Fraction]:
    """Squares of ``count`` seeded class members ``alpha + 2 A z`` with ``z`` in ``[-2, 2]^n``."""
    rng = np.random.default_rng(seed)
    a = np.array(form.matrix, dtype=np.int64)
    base = np.array(alpha.alpha, dtype=np.int64)
    out: list[Fraction] = []
    for _ in range(count):
        z = rng.integers(-2, 3, size=form.rank)
        out.append(square(form, [int(v) for v in base + 2 * (a @ z)]))
    return out


# ---------------------------------------------------------------------------
# Square minimization
# ---------------------------------------------------------------------------


def _zigzag(center: Fraction) -> Iterator[int]:
    """Integers in order of nondecreasing distance from ``center``."""
    lo = math.floor(center)
    hi = lo + 1
    while True:
        if center - lo <= hi - center:
            yield lo
            lo -= 1
        else:
            yield hi
            hi += 1


def min_square(
    form: IntersectionForm, alpha: CharCovector, node_limit: int | None = None
) -> SquareMinimum:
    """Least ``beta^2`` over the class ``{alpha + 2 A z}``, by exact branch and bound.

    ``beta^2 = 4 (z - c)^T P (z - c)`` with ``c = -P^-1 alpha / 2`` for the
    positive-definite ``P = +-A``. With ``P = L D L^T`` the quadratic form
    splits into one square per coordinate, which is enumerated from the last
    coordinate down, nearest integers first, pruning against the best value
    so far (initially the one at ``z = 0``).
    """
    if node_limit is None:
        node_limit = load_settings().node_limit
    p = _positive(form)
    n = form.rank
    inverse = p.inv()
    shifted = inverse * sympy.Matrix(list(alpha.alpha))
    center = [-_fraction(shifted[r]) / 2 for r in range(n)]
    lower, diag = p.LDLdecomposition()
    weights = [_fraction(diag[i, i]) for i in range(n)]
    coupling = [[_fraction(lower[j, i]) for j in range(n)] for i in range(n)]

    def centre_of(i: int, z: list[int]) -> Fraction:
        return center[i] - sum(
            (coupling[i][j] * (z[j] - center[j]) for j in range(i + 1, n)), Fraction(0)
        )

    z = [0] * n
    best = Fraction(0)
    for i in range(n - 1, -1, -1):
        best += weights[i] * centre_of(i, z) ** 2
    best_z = list(z)
    nodes = 0

    def visit(i: int, partial: Fraction) -> None:
        nonlocal best, best_z, nodes
        if i < 0:
            if partial < best:
                best, best_z = partial, list(z)
            return
        mid = centre_of(i, z)
        for value in _zigzag(mid):
            nodes += 1
            if nodes > node_limit:
                raise EnumerationBudgetError(f"square minimization exceeded {node_limit} nodes")
            cost = partial + weights[i] * (value - mid) ** 2
            if cost >= best:
                break
            z[i] = value
            visit(i - 1, cost)
        z[i] = 0

    visit(n - 1, Fraction(0))
    a = np.array(form.matrix, dtype=np.int64)
    beta = np.array(alpha.alpha, dtype=np.int64) + 2 * (a @ np.array(best_z, dtype=np.int64))
    logger.debug(f"min square {4 * best} after {nodes} nodes")
    return SquareMinimum(
        value=4 * best,
        minimizer=CharCovector(alpha=tuple(int(v) for v in beta), class_rep=alpha.class_rep),
        nodes=nodes,
    )


# ---------------------------------------------------------------------------
# d-invariants
# ---------------------------------------------------------------------------


def class_representative(form: IntersectionForm, spinc: SpinC) -> CharCovector:
    if spinc == "self-conjugate":
        return self_conjugate_class(form)
    if isinstance(spinc, str):
        raise ValueError(f"unknown Spin^c selector {spinc!r}")
    classes = spinc_classes(form)
    if not 0 <= spinc < len(classes):
        raise ValueError(f"Spin^c index {spinc} out of range; there are {len(classes)} classes")
    return classes[spinc]


def d_plumbing(
    graph: PlumbingGraph,
    spinc: SpinC = "self-conjugate",
    *,
    reverse: bool = False,
    node_limit: int | None = None,
) -> Fraction:
    """d-invariant of the boundary of the plumbing in the chosen Spin^c structure."""
    form = analyze(graph)
    alpha = class_representative(form, spinc)
    minimum = min_square(form, alpha, node_limit)
    d = (minimum.value - form.rank) / 4
    if form.definiteness == "negative":
        d = -d
    return -d if reverse else d


def d_all_classes(
    graph: PlumbingGraph, *, reverse: bool = False, node_limit: int | None = None
) -> list[Fraction]:
    """d-invariants of every Spin^c class, in :func:`spinc_classes` order."""
    form = analyze(graph)
    sign = (1 if form.definiteness == "positive" else -1) * (-1 if reverse else 1)
    return [
        sign * (min_square(form, alpha, node_limit).value - form.rank) / 4
        for alpha in spinc_classes(form)
    ]


# ---------------------------------------------------------------------------
# The Gamma_j family
# ---------------------------------------------------------------------------


def gamma_j(j: int) -> PlumbingGraph:
    """Plumbing tree on ``v1 .. v(2j+5)``: chain v1-v2-v3-v6-...-v(2j+5) with branch v3-v4-v5.

    ``v1`` has weight ``j + 2``, ``v5`` weight ``j + 1`` and the rest weight 2.
    """
    if j < 1:
        raise ValueError(f"j must be at least 1, got {j}")
    count = 2 * j + 5
    weights = {1: j + 2, 5: j + 1}
    vertices = tuple(
        PlumbingVertex(name=f"v{k}", weight=weights.get(k, 2)) for k in range(1, count + 1)
    )
    edges = [("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v5"), ("v3", "v6")]
    edges.extend((f"v{k}", f"v{k + 1}") for k in range(6, count))
    return PlumbingGraph(vertices=vertices, edges=tuple(edges))


def expected_gamma_d(j: int) -> Fraction:
    return Fraction(-j, 2) - 1 if j % 2 else Fraction(-j, 2)


def paper_pipeline(j: int, node_limit: int | None = None) -> GammaRow:
    """d of the self-conjugate structure on the Gamma_j boundary, plus V_0 and theta.

    ``V_0 = (j/2 - d) / 2`` and ``theta = 2 V_0``; both are checked against
    their closed forms in the returned row.
    """
    d = d_plumbing(gamma_j(j), node_limit=node_limit)
    if (2 * d).denominator != 1:
        raise PipelineError(f"d = {d} for j={j} is not a half-integer")
    v0 = (Fraction(j, 2) - d) / 2
    if v0.denominator != 1 or v0 < 0:
        raise PipelineError(f"V_0 = {v0} for j={j} is not a nonnegative integer")
    row = GammaRow(
        j=j,
        d=d,
        v0=int(v0),
        theta=2 * int(v0),
        expected_d=expected_gamma_d(j),
        expected_v0=math.ceil(j / 2),
        ni_wu=Fraction(j, 2) - 2 * v0,
    )
    logger.info(f"j={j}: d={row.d} V0={row.v0} theta={row.theta}")
    return row
