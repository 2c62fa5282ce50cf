"""Crossing cells, the tensor of cells, and checks of their laws.

A crossing carries a resource wire ``B`` straight down past an exchange
wire ``X`` running left to right, without the two interacting.
"""

from __future__ import annotations

from .cells import (
    CellTerm,
    ExchangeType,
    Lift,
    RecvLeft,
    RecvRight,
    SendLeft,
    SendRight,
    VId,
    hcomp,
    vcomp,
    vcomp_all,
)
from .errors import NotHorizontal, NotVertical
from .morphisms import DEFAULT_EQUALITY, EqualityConfig, Verdict
from .rewrite import cells_equal
from .theory import Braid, Identity, Theory, Word, tensor_all


def crossing(b: Word, x: ExchangeType) -> CellTerm:
    """The cell with boundary (left X, right X, top B, bottom B)."""
    b = tuple(b)
    if not x:
        return VId(b)
    parts = []
    for p in x:
        a = p.obj
        if p.circ:
            parts.append(
                vcomp_all([
                    hcomp(RecvLeft(a), VId(b)),
                    Lift(Braid(a, b)),
                    hcomp(VId(b), SendRight(a)),
                ])
            )
        else:
            parts.append(
                vcomp_all([
                    hcomp(VId(b), RecvRight(a)),
                    Lift(Braid(b, a)),
                    hcomp(SendLeft(a), VId(b)),
                ])
            )
    return vcomp_all(parts)


def naturality_sides(alpha: CellTerm, carried: Word) -> tuple[CellTerm, CellTerm]:
    """Both sides of sliding ``alpha`` past a crossing of the wire ``carried``.

    Left: the carried wire first crosses alpha's left boundary, then is
    braided past alpha's bottom.  Right: it is first braided past alpha's
    top, then crosses alpha's right boundary.
    """
    c = tuple(carried)
    bd = alpha.boundary
    lhs = vcomp(hcomp(crossing(c, bd.left), alpha), Lift(Braid(c, bd.bottom)))
    rhs = vcomp(Lift(Braid(c, bd.top)), hcomp(alpha, crossing(c, bd.right)))
    return lhs, rhs


def check_crossing_naturality(
    alpha: CellTerm,
    carried: Word = ("C",),
    theory: Theory | None = None,
    config: EqualityConfig = DEFAULT_EQUALITY,
) -> Verdict:
    lhs, rhs = naturality_sides(alpha, carried)
    return cells_equal(lhs, rhs, theory, config)


def noninteraction_sides(alpha: CellTerm, beta: CellTerm) -> tuple[CellTerm, CellTerm]:
    """A vertical and a horizontal cell meeting through a crossing, both ways."""
    if alpha.left or alpha.right:
        raise NotVertical(alpha.boundary)
    if beta.top or beta.bottom:
        raise NotHorizontal(beta.boundary)
    a, b = alpha.boundary, beta.boundary
    lhs = vcomp(alpha, hcomp(crossing(a.bottom, b.left), beta))
    rhs = vcomp(hcomp(crossing(a.top, b.left), beta), alpha)
    return lhs, rhs


def check_noninteraction(
    alpha: CellTerm,
    beta: CellTerm,
    theory: Theory | None = None,
    config: EqualityConfig = DEFAULT_EQUALITY,
) -> Verdict:
    lhs, rhs = noninteraction_sides(alpha, beta)
    return cells_equal(lhs, rhs, theory, config)


def tensor_cells(a: CellTerm, b: CellTerm) -> CellTerm:
    """The monoidal product of two cells.

    ``a`` sits above ``b``: a's right boundary crosses over b's top wires,
    and b's left boundary crosses under a's bottom wires.
    """
    ba, bb = a.boundary, b.boundary
    upper = hcomp(a, crossing(bb.top, ba.right))
    lower = hcomp(crossing(ba.bottom, bb.left), b)
    return vcomp(upper, lower)


def middle_exchange(u: Word, v: Word, w: Word, z: Word) -> CellTerm:
    """``1_u * sigma(v, w) * 1_z`` lifted: the middle-wire exchange."""
    return Lift(tensor_all([Identity(tuple(u)), Braid(tuple(v), tuple(w)), Identity(tuple(z))]))


def pseudofunctoriality_sides(a, b, c, d) -> tuple[CellTerm, CellTerm]:
    """``tensor(a|c, b|d)`` against ``tensor(a,b) | tensor(c,d)`` with the
    middle wires exchanged above and below."""
    ba, bb, bc, bd = (x.boundary for x in (a, b, c, d))
    lhs = tensor_cells(hcomp(a, c), hcomp(b, d))
    top = middle_exchange(ba.top, bc.top, bb.top, bd.top)
    bottom = middle_exchange(ba.bottom, bb.bottom, bc.bottom, bd.bottom)
    rhs = vcomp_all([top, hcomp(tensor_cells(a, b), tensor_cells(c, d)), bottom])
    return lhs, rhs
