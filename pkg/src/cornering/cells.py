"""Cell terms of the free cornering and their four-sided boundaries.

A cell has a left and right boundary (exchange types: words of polarized
objects) and a top and bottom boundary (object words).  The four corner
generators are typed so that both yanking equations of each polarity are
well formed::

    send_right(A) : left I,  top A, right A∘, bottom I
    recv_left(A)  : left A∘, top I, right I,  bottom A
    send_left(A)  : left A•, top A, right I,  bottom I
    recv_right(A) : left I,  top I, right A•, bottom A
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

from .errors import HCompMismatch, VCompMismatch
from .theory import MorphismTerm, Word, show_word


class Polarity(enum.Enum):
    CIRC = "∘"  # left participant gives to the right one
    BULLET = "•"  # right participant gives to the left one

    @property
    def ascii(self) -> str:
        return "^o" if self is Polarity.CIRC else "^*"

    def flip(self) -> "Polarity":
        return Polarity.BULLET if self is Polarity.CIRC else Polarity.CIRC


@dataclass(frozen=True, order=False)
class PolarizedObject:
    obj: Word
    polarity: Polarity

    @property
    def circ(self) -> bool:
        return self.polarity is Polarity.CIRC

    def __str__(self):
        if len(self.obj) == 1:
            return f"{self.obj[0]}{self.polarity.value}"
        if not self.obj:
            return f"I{self.polarity.value}"
        return f"({show_word(self.obj)}){self.polarity.value}"


ExchangeType = tuple  # tuple[PolarizedObject, ...]; () is the unit I


def circ(*names: str) -> PolarizedObject:
    return PolarizedObject(tuple(names), Polarity.CIRC)


def bullet(*names: str) -> PolarizedObject:
    return PolarizedObject(tuple(names), Polarity.BULLET)


def xt(*factors: PolarizedObject) -> ExchangeType:
    return tuple(factors)


def show_exchange(x: ExchangeType) -> str:
    return " * ".join(str(p) for p in x) if x else "I"


@dataclass(frozen=True)
class CellBoundary:
    left: ExchangeType
    right: ExchangeType
    top: Word
    bottom: Word

    def __str__(self):
        return (
            f"left {show_exchange(self.left)}, right {show_exchange(self.right)}, "
            f"top {show_word(self.top)}, bottom {show_word(self.bottom)}"
        )

    @property
    def is_vertical(self) -> bool:
        return not self.left and not self.right

    @property
    def is_horizontal(self) -> bool:
        return not self.top and not self.bottom


class CellTerm:
    """Base class; every node carries ``left``/``right``/``top``/``bottom``."""

    __slots__ = ()

    @property
    def boundary(self) -> CellBoundary:
        return CellBoundary(self.left, self.right, self.top, self.bottom)

    def __or__(self, other):
        return hcomp(self, other)

    def __truediv__(self, other):
        return vcomp(self, other)


def _leaf(cls):
    cls.__str__ = lambda self: f"{cls.keyword}({show_word(self.obj)})"
    return cls


@_leaf
@dataclass(frozen=True)
class SendRight(CellTerm):
    obj: Word
    keyword = "send_right"

    @property
    def left(self):
        return ()

    @property
    def right(self):
        return (PolarizedObject(self.obj, Polarity.CIRC),)

    @property
    def top(self):
        return self.obj

    @property
    def bottom(self):
        return ()


@_leaf
@dataclass(frozen=True)
class RecvLeft(CellTerm):
    obj: Word
    keyword = "recv_left"

    @property
    def left(self):
        return (PolarizedObject(self.obj, Polarity.CIRC),)

    @property
    def right(self):
        return ()

    @property
    def top(self):
        return ()

    @property
    def bottom(self):
        return self.obj


@_leaf
@dataclass(frozen=True)
class SendLeft(CellTerm):
    obj: Word
    keyword = "send_left"

    @property
    def left(self):
        return (PolarizedObject(self.obj, Polarity.BULLET),)

    @property
    def right(self):
        return ()

    @property
    def top(self):
        return self.obj

    @property
    def bottom(self):
        return ()


@_leaf
@dataclass(frozen=True)
class RecvRight(CellTerm):
    obj: Word
    keyword = "recv_right"

    @property
    def left(self):
        return ()

    @property
    def right(self):
        return (PolarizedObject(self.obj, Polarity.BULLET),)

    @property
    def top(self):
        return ()

    @property
    def bottom(self):
        return self.obj


CORNERS = (SendRight, RecvLeft, SendLeft, RecvRight)


@dataclass(frozen=True)
class Lift(CellTerm):
    morphism: MorphismTerm

    @property
    def left(self):
        return ()

    @property
    def right(self):
        return ()

    @property
    def top(self):
        return self.morphism.dom

    @property
    def bottom(self):
        return self.morphism.cod

    def __str__(self):
        return f"lift({self.morphism})"


@dataclass(frozen=True)
class VId(CellTerm):
    obj: Word

    @property
    def left(self):
        return ()

    @property
    def right(self):
        return ()

    @property
    def top(self):
        return self.obj

    @property
    def bottom(self):
        return self.obj

    def __str__(self):
        return f"vid({show_word(self.obj)})"


@dataclass(frozen=True)
class HId(CellTerm):
    """Horizontal identity on a non-empty exchange type (use :func:`hid`)."""

    exchange: ExchangeType

    def __post_init__(self):
        if not self.exchange:
            raise ValueError("HId(I) is the empty cell; use hid(()) or EMPTY")

    @property
    def left(self):
        return self.exchange

    @property
    def right(self):
        return self.exchange

    @property
    def top(self):
        return ()

    @property
    def bottom(self):
        return ()

    def __str__(self):
        return f"hid({show_exchange(self.exchange)})"


EMPTY = VId(())


def hid(x: ExchangeType) -> CellTerm:
    return HId(tuple(x)) if x else EMPTY


def vid(w: Word) -> CellTerm:
    return VId(tuple(w)) if w else EMPTY


@dataclass(frozen=True)
class HComp(CellTerm):
    first: CellTerm
    second: CellTerm
    left: ExchangeType = field(init=False, compare=False, repr=False)
    right: ExchangeType = field(init=False, compare=False, repr=False)
    top: Word = field(init=False, compare=False, repr=False)
    bottom: Word = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.first.right != self.second.left:
            raise HCompMismatch(self.first.right, self.second.left)
        object.__setattr__(self, "left", self.first.left)
        object.__setattr__(self, "right", self.second.right)
        object.__setattr__(self, "top", self.first.top + self.second.top)
        object.__setattr__(self, "bottom", self.first.bottom + self.second.bottom)

    def __str__(self):
        b = str(self.second)
        if isinstance(self.second, HComp):
            b = f"({b})"
        return f"{self.first} | {b}"


@dataclass(frozen=True)
class VComp(CellTerm):
    first: CellTerm
    second: CellTerm
    left: ExchangeType = field(init=False, compare=False, repr=False)
    right: ExchangeType = field(init=False, compare=False, repr=False)
    top: Word = field(init=False, compare=False, repr=False)
    bottom: Word = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.first.bottom != self.second.top:
            raise VCompMismatch(self.first.bottom, self.second.top)
        object.__setattr__(self, "left", self.first.left + self.second.left)
        object.__setattr__(self, "right", self.first.right + self.second.right)
        object.__setattr__(self, "top", self.first.top)
        object.__setattr__(self, "bottom", self.second.bottom)

    def __str__(self):
        a, b = str(self.first), str(self.second)
        if isinstance(self.first, HComp):
            a = f"({a})"
        if isinstance(self.second, (HComp, VComp)):
            b = f"({b})"
        return f"{a} / {b}"


def hcomp(a: CellTerm, b: CellTerm) -> CellTerm:
    return HComp(a, b)


def vcomp(a: CellTerm, b: CellTerm) -> CellTerm:
    return VComp(a, b)


def hcomp_all(cells: Iterable[CellTerm]) -> CellTerm:
    cells = list(cells)
    if not cells:
        return EMPTY
    out = cells[0]
    for c in cells[1:]:
        out = HComp(out, c)
    return out


def vcomp_all(cells: Iterable[CellTerm]) -> CellTerm:
    cells = list(cells)
    if not cells:
        return EMPTY
    out = cells[0]
    for c in cells[1:]:
        out = VComp(out, c)
    return out


def boundary_of(c: CellTerm) -> CellBoundary:
    """Recompute the boundary bottom-up, checking every composite."""
    if isinstance(c, HComp):
        a, b = boundary_of(c.first), boundary_of(c.second)
        if a.right != b.left:
            raise HCompMismatch(a.right, b.left)
        return CellBoundary(a.left, b.right, a.top + b.top, a.bottom + b.bottom)
    if isinstance(c, VComp):
        a, b = boundary_of(c.first), boundary_of(c.second)
        if a.bottom != b.top:
            raise VCompMismatch(a.bottom, b.top)
        return CellBoundary(a.left + b.left, a.right + b.right, a.top, b.bottom)
    if isinstance(c, CellTerm):
        return c.boundary
    raise TypeError(f"not a cell term: {c!r}")


def exchange_objects(x: ExchangeType) -> set[str]:
    return {o for p in x for o in p.obj}


def cell_objects(c: CellTerm) -> set[str]:
    from .theory import objects_in

    if isinstance(c, (HComp, VComp)):
        return cell_objects(c.first) | cell_objects(c.second)
    if isinstance(c, Lift):
        return objects_in(c.morphism)
    b = c.boundary
    return set(b.top) | set(b.bottom) | exchange_objects(b.left) | exchange_objects(b.right)


def leaves(c: CellTerm) -> list[CellTerm]:
    if isinstance(c, (HComp, VComp)):
        return leaves(c.first) + leaves(c.second)
    return [c]


def generator_count(c: CellTerm) -> int:
    """Corner occurrences plus generator/braid occurrences inside lifts."""
    from .theory import Braid, Generator, Seq, Tensor

    def count_m(m):
        if isinstance(m, (Generator, Braid)):
            return 1
        if isinstance(m, Seq):
            return count_m(m.first) + count_m(m.second)
        if isinstance(m, Tensor):
            return count_m(m.left) + count_m(m.right)
        return 0

    total = 0
    for leaf in leaves(c):
        if isinstance(leaf, CORNERS):
            total += 1
        elif isinstance(leaf, Lift):
            total += count_m(leaf.morphism)
    return total
