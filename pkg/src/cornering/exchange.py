"""Exchange types up to the evident isomorphisms, and the cells between them.

Nothing exchanged is the same as doing nothing (``I∘ ≅ I ≅ I•``), two
hand-offs in the same direction may be reordered, and handing over
``A * B`` is handing over ``A`` and then ``B``.  Hand-offs in opposite
directions never commute: ``A∘ * B•`` can be turned into ``B• * A∘`` but
not back.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Sequence

from .cells import CellTerm, ExchangeType, Polarity, PolarizedObject
from .rewrite import diagram_cell
from .theory import Theory, Word
from .wiring import Diagram

ExchangeCanonicalForm = tuple  # tuple of single-object PolarizedObject factors


def flatten_exchange(x: ExchangeType) -> list[tuple[str, Polarity]]:
    return [(o, p.polarity) for p in x for o in p.obj]


def _ranker(order, *types: ExchangeType):
    if isinstance(order, Theory):
        known = {o: i for i, o in enumerate(order.objects)}
    elif order is not None:
        known = {o: i for i, o in enumerate(order)}
    else:
        known = {}
    for x in types:
        for o, _ in flatten_exchange(x):
            if o not in known:
                known[o] = len(known)
    return known


def _runs(flat: list[tuple[str, Polarity]]) -> list[tuple[Polarity, list[str]]]:
    runs: list[tuple[Polarity, list[str]]] = []
    for o, pol in flat:
        if runs and runs[-1][0] is pol:
            runs[-1][1].append(o)
        else:
            runs.append((pol, [o]))
    return runs


def canonicalize_exchange(
    x: ExchangeType, order: Theory | Sequence[str] | None = None
) -> ExchangeCanonicalForm:
    """Flatten, drop unit factors and sort each same-polarity run.

    ``order`` is the total order on object generators (a theory uses its
    declaration order); objects it does not mention follow in order of
    first appearance.
    """
    rank = _ranker(order, x)
    out = []
    for pol, objs in _runs(flatten_exchange(x)):
        out.extend(PolarizedObject((o,), pol) for o in sorted(objs, key=rank.__getitem__))
    return tuple(out)


def exchanges_equivalent(x: ExchangeType, y: ExchangeType, order=None) -> bool:
    rank = _ranker(order, x, y)
    names = sorted(rank, key=rank.__getitem__)
    return canonicalize_exchange(x, names) == canonicalize_exchange(y, names)


def _ports(x: ExchangeType, side: str) -> list[tuple[str, Polarity, tuple]]:
    return [(o, p.polarity, (side, i, k)) for i, p in enumerate(x) for k, o in enumerate(p.obj)]


def adapter(x: ExchangeType, y: ExchangeType, order: Theory | Sequence[str] | None = None) -> CellTerm | None:
    """A horizontal cell from ``x`` to ``y`` built from corners and braids.

    Returns None when the two types are not related by the unit, same
    direction reordering and splitting isomorphisms.
    """
    x, y = tuple(x), tuple(y)
    if not exchanges_equivalent(x, y, order):
        return None
    lx = _runs([(o, pol) for o, pol, _ in _ports(x, "L")])
    ry = _runs([(o, pol) for o, pol, _ in _ports(y, "R")])
    assert len(lx) == len(ry)
    left_ports, right_ports = _ports(x, "L"), _ports(y, "R")
    src = {}
    li = ri = 0
    for (pol, lobjs), (_, robjs) in zip(lx, ry):
        # k-th occurrence of an object on the left meets its k-th on the right
        waiting = defaultdict(list)
        for o, _, port in left_ports[li: li + len(lobjs)]:
            waiting[o].append(port)
        for o, _, port in right_ports[ri: ri + len(robjs)]:
            lport = waiting[o].pop(0)
            if pol is Polarity.CIRC:
                src[port] = lport
            else:
                src[lport] = port
        li += len(lobjs)
        ri += len(robjs)
    return diagram_cell(Diagram([], src, (), (), x, y))


def d_circ_bullet(a: Word, b: Word) -> CellTerm:
    """The one-way reordering ``A∘ * B• -> B• * A∘``.

    Receive A from the left, receive B from the right, swap, send B to the
    left, send A to the right.
    """
    a, b = tuple(a), tuple(b)
    left = (PolarizedObject(a, Polarity.CIRC), PolarizedObject(b, Polarity.BULLET))
    right = (PolarizedObject(b, Polarity.BULLET), PolarizedObject(a, Polarity.CIRC))
    src = {("R", 1, k): ("L", 0, k) for k in range(len(a))}
    src.update({("L", 1, k): ("R", 0, k) for k in range(len(b))})
    return diagram_cell(Diagram([], src, (), (), left, right))
