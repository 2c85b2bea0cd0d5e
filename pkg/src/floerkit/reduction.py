"""Cancellation of filtration-preserving arrows.

Any arrow ``x -> y`` with U-power 0 between generators of equal Alexander
grading sits at a single filtration level and can be cancelled: ``x`` and
``y`` are removed and every zig-zag ``z -> y <- x -> w`` becomes a new arrow
``z -> w``. Repeating until no such arrow is left gives a reduced complex.
"""

from __future__ import annotations

from collections import deque

from loguru import logger

from floerkit.errors import ComplexValidationError
from floerkit.models import BifilteredComplex, DiffEntry

_Arrows = dict[str, dict[str, int]]


def _toggle(succ: _Arrows, pred: _Arrows, source: str, target: str, power: int) -> None:
    current = succ[source].get(target)
    if current is None:
        succ[source][target] = power
        pred[target][source] = power
    elif current == power:
        del succ[source][target]
        del pred[target][source]
    else:
        raise ComplexValidationError(
            f"{source}->{target} would carry U-powers {current} and {power}; gradings are broken"
        )


def _cancellable_target(x: str, succ: _Arrows, alexander: dict[str, int]) -> str | None:
    eligible = [y for y, power in succ[x].items() if power == 0 and alexander[y] == alexander[x]]
    return min(eligible, default=None)


def reduce(complex_: BifilteredComplex) -> BifilteredComplex:
    """Return a reduced complex filtered quasi-isomorphic to ``complex_``.

    Generators are visited in order, each cancelling against its least
    eligible target by name; a generator that gains arrows from a
    cancellation is visited again. The output is deterministic and keeps
    the generator order.
    """
    alexander = {g.name: g.alexander for g in complex_.generators}
    succ: _Arrows = {g.name: {} for g in complex_.generators}
    pred: _Arrows = {g.name: {} for g in complex_.generators}
    for e in complex_.differential:
        _toggle(succ, pred, e.source, e.target, e.u_power)

    queue = deque(g.name for g in complex_.generators)
    queued = set(queue)
    cancelled = 0
    while queue:
        x = queue.popleft()
        queued.discard(x)
        if x not in succ:
            continue
        y = _cancellable_target(x, succ, alexander)
        if y is None:
            continue
        incoming = [(z, a) for z, a in pred[y].items() if z != x]
        outgoing = [(w, b) for w, b in succ[x].items() if w != y]
        for z, a in incoming:
            for w, b in outgoing:
                _toggle(succ, pred, z, w, a + b)
            if z not in queued:
                queue.append(z)
                queued.add(z)
        for dead in (x, y):
            for w in list(succ[dead]):
                del pred[w][dead]
            for z in list(pred[dead]):
                del succ[z][dead]
            del succ[dead]
            del pred[dead]
        cancelled += 1

    if cancelled:
        logger.debug(f"cancelled {cancelled} pairs, {len(succ)} generators remain")

    generators = tuple(g for g in complex_.generators if g.name in succ)
    order = {g.name: n for n, g in enumerate(generators)}
    arrows = sorted(
        ((x, y, p) for x, targets in succ.items() for y, p in targets.items()),
        key=lambda a: (order[a[0]], order[a[1]]),
    )
    return BifilteredComplex(
        genus=max((abs(g.alexander) for g in generators), default=0),
        generators=generators,
        differential=tuple(DiffEntry(source=x, target=y, u_power=p) for x, y, p in arrows),
        reduced=True,
    )
