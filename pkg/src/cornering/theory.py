"""Presented symmetric strict monoidal categories (resource theories).

Object words are plain tuples of generator names, so the monoid laws for
``*`` hold by representation: ``()`` is the unit ``I`` and concatenation is
the tensor.  Morphism terms are immutable expression trees which cache their
boundaries at construction time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import (
    BoundaryMismatch,
    DuplicateName,
    IllTypedComposite,
    UndeclaredArrow,
    UndeclaredObject,
)

Word = tuple  # tuple[str, ...]; () is the unit I

DUAL_SUFFIX = "*"


def word(*names: str) -> Word:
    return tuple(names)


def show_word(w: Word) -> str:
    return " * ".join(w) if w else "I"


def dual_name(name: str) -> str:
    """``A -> A*`` and ``A* -> A``: the double star collapses."""
    if name.endswith(DUAL_SUFFIX):
        return name[: -len(DUAL_SUFFIX)]
    return name + DUAL_SUFFIX


# --------------------------------------------------------------------------
# morphism terms


class MorphismTerm:
    """Base class of morphism expressions; ``dom``/``cod`` are cached."""

    __slots__ = ()

    def then(self, other: "MorphismTerm") -> "MorphismTerm":
        return Seq(self, other)

    def tensor(self, other: "MorphismTerm") -> "MorphismTerm":
        return Tensor(self, other)

    def __rshift__(self, other):
        return Seq(self, other)

    def __matmul__(self, other):
        return Tensor(self, other)


@dataclass(frozen=True)
class Identity(MorphismTerm):
    obj: Word

    @property
    def dom(self):
        return self.obj

    @property
    def cod(self):
        return self.obj

    def __str__(self):
        return f"id({show_word(self.obj)})"


@dataclass(frozen=True)
class Generator(MorphismTerm):
    name: str
    dom: Word
    cod: Word

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Braid(MorphismTerm):
    """The symmetry ``sigma_{A,B} : A * B -> B * A`` on words."""

    left: Word
    right: Word

    @property
    def dom(self):
        return self.left + self.right

    @property
    def cod(self):
        return self.right + self.left

    def __str__(self):
        return f"sigma({show_word(self.left)}, {show_word(self.right)})"


@dataclass(frozen=True)
class Seq(MorphismTerm):
    first: MorphismTerm
    second: MorphismTerm
    dom: Word = field(init=False, compare=False, repr=False)
    cod: Word = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.first.cod != self.second.dom:
            raise IllTypedComposite(
                f"cannot compose {self.first} : {show_word(self.first.dom)} -> "
                f"{show_word(self.first.cod)} with {self.second} : "
                f"{show_word(self.second.dom)} -> {show_word(self.second.cod)}"
            )
        object.__setattr__(self, "dom", self.first.dom)
        object.__setattr__(self, "cod", self.second.cod)

    def __str__(self):
        return f"{_paren(self.first)} ; {_paren(self.second, right_side=True)}"


@dataclass(frozen=True)
class Tensor(MorphismTerm):
    left: MorphismTerm
    right: MorphismTerm
    dom: Word = field(init=False, compare=False, repr=False)
    cod: Word = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "dom", self.left.dom + self.right.dom)
        object.__setattr__(self, "cod", self.left.cod + self.right.cod)

    def __str__(self):
        return f"{_paren(self.left, in_tensor=True)} * {_paren(self.right, True, True)}"


def _paren(term, right_side=False, in_tensor=False):
    # ";" binds looser than "*"; both parse left-associatively
    text = str(term)
    if isinstance(term, Seq) and (in_tensor or right_side):
        return f"({text})"
    if isinstance(term, Tensor) and in_tensor and right_side:
        return f"({text})"
    return text


def boundary(m: MorphismTerm) -> tuple[Word, Word]:
    """``(domain, codomain)`` recomputed structurally from the leaves."""
    if isinstance(m, (Identity, Generator, Braid)):
        return m.dom, m.cod
    if isinstance(m, Seq):
        d1, c1 = boundary(m.first)
        d2, c2 = boundary(m.second)
        if c1 != d2:
            raise IllTypedComposite(f"{m.first} ends in {show_word(c1)}, {m.second} starts at {show_word(d2)}")
        return d1, c2
    if isinstance(m, Tensor):
        d1, c1 = boundary(m.left)
        d2, c2 = boundary(m.right)
        return d1 + d2, c1 + c2
    raise TypeError(f"not a morphism term: {m!r}")


def seq_all(terms: Iterable[MorphismTerm], obj: Word | None = None) -> MorphismTerm:
    terms = list(terms)
    if not terms:
        if obj is None:
            raise ValueError("empty composite needs an object")
        return Identity(obj)
    out = terms[0]
    for t in terms[1:]:
        out = Seq(out, t)
    return out


def tensor_all(terms: Iterable[MorphismTerm]) -> MorphismTerm:
    """Tensor of the non-trivial factors; identities on ``I`` are dropped."""
    terms = [t for t in terms if not (isinstance(t, Identity) and not t.obj)]
    if not terms:
        return Identity(())
    out = terms[0]
    for t in terms[1:]:
        out = Tensor(out, t)
    return out


def padded(prefix: Word, term: MorphismTerm, suffix: Word) -> MorphismTerm:
    return tensor_all([Identity(prefix), term, Identity(suffix)])


def generators_in(m: MorphismTerm) -> list[str]:
    if isinstance(m, Generator):
        return [m.name]
    if isinstance(m, Seq):
        return generators_in(m.first) + generators_in(m.second)
    if isinstance(m, Tensor):
        return generators_in(m.left) + generators_in(m.right)
    return []


def objects_in(m: MorphismTerm) -> set[str]:
    if isinstance(m, (Identity, Generator, Braid)):
        return set(m.dom) | set(m.cod)
    if isinstance(m, Seq):
        return objects_in(m.first) | objects_in(m.second)
    if isinstance(m, Tensor):
        return objects_in(m.left) | objects_in(m.right)
    raise TypeError(m)


# --------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class ArrowDecl:
    name: str
    dom: Word
    cod: Word


@dataclass
class TheoryPresentation:
    name: str
    object_generators: list[str] = field(default_factory=list)
    arrow_generators: list[ArrowDecl] = field(default_factory=list)
    equations: list[tuple[MorphismTerm, MorphismTerm]] = field(default_factory=list)
    compact_closed: bool = False


@dataclass(frozen=True)
class Theory:
    """A validated presentation.  Build with :func:`validate_theory`."""

    name: str
    objects: tuple[str, ...]
    arrows: tuple[ArrowDecl, ...]
    equations: tuple[tuple[MorphismTerm, MorphismTerm], ...] = ()
    compact_closed: bool = False
    dualized: bool = False
    # unit/counit generator name -> the object they are attached to
    units: tuple[tuple[str, str], ...] = ()
    counits: tuple[tuple[str, str], ...] = ()
    # indices of equations handled natively (snake equations)
    builtin_equations: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "_arrow_map", {a.name: a for a in self.arrows})
        object.__setattr__(self, "_order", {o: i for i, o in enumerate(self.objects)})

    def arrow(self, name: str) -> ArrowDecl:
        try:
            return self._arrow_map[name]
        except KeyError:
            raise UndeclaredArrow(name) from None

    def has_arrow(self, name: str) -> bool:
        return name in self._arrow_map

    def gen(self, name: str) -> Generator:
        a = self.arrow(name)
        return Generator(a.name, a.dom, a.cod)

    def has_object(self, name: str) -> bool:
        return name in self._order

    def order(self, name: str) -> int:
        return self._order[name]

    def check_word(self, w: Word, where: str = "") -> Word:
        for o in w:
            if o not in self._order:
                raise UndeclaredObject(o, where)
        return tuple(w)

    def check_term(self, m: MorphismTerm) -> MorphismTerm:
        _check_term(self, m)
        return m

    @property
    def unit_map(self) -> dict[str, str]:
        return dict(self.units)

    @property
    def counit_map(self) -> dict[str, str]:
        return dict(self.counits)

    def user_equations(self):
        return [e for i, e in enumerate(self.equations) if i not in self.builtin_equations]

    def presentation(self) -> TheoryPresentation:
        return TheoryPresentation(
            name=self.name,
            object_generators=list(self.objects),
            arrow_generators=list(self.arrows),
            equations=list(self.equations),
            compact_closed=self.compact_closed,
        )


def _check_term(theory: Theory, m: MorphismTerm) -> None:
    if isinstance(m, Generator):
        decl = theory.arrow(m.name)
        if (decl.dom, decl.cod) != (m.dom, m.cod):
            raise BoundaryMismatch(f"generator {m.name} used with a type other than its declaration")
        return
    if isinstance(m, (Identity, Braid)):
        theory.check_word(m.dom, str(m))
        return
    if isinstance(m, Seq):
        _check_term(theory, m.first)
        _check_term(theory, m.second)
        return
    if isinstance(m, Tensor):
        _check_term(theory, m.left)
        _check_term(theory, m.right)
        return
    raise TypeError(f"not a morphism term: {m!r}")


def validate_theory(p: TheoryPresentation) -> Theory:
    seen: set[str] = set()
    for o in p.object_generators:
        if o in seen:
            raise DuplicateName(o)
        seen.add(o)
    objects = tuple(p.object_generators)
    arrows = []
    for a in p.arrow_generators:
        if a.name in seen:
            raise DuplicateName(a.name)
        seen.add(a.name)
        for o in a.dom + a.cod:
            if o not in objects:
                raise UndeclaredObject(o, f"arrow {a.name}")
        arrows.append(ArrowDecl(a.name, tuple(a.dom), tuple(a.cod)))
    theory = Theory(p.name, objects, tuple(arrows), (), p.compact_closed)
    for i, (lhs, rhs) in enumerate(p.equations):
        theory.check_term(lhs)
        theory.check_term(rhs)
        if boundary(lhs) != boundary(rhs):
            raise BoundaryMismatch(
                f"equation {i}: {lhs} : {show_word(lhs.dom)} -> {show_word(lhs.cod)} "
                f"but {rhs} : {show_word(rhs.dom)} -> {show_word(rhs.cod)}",
                index=i,
            )
    return Theory(p.name, objects, tuple(arrows), tuple(p.equations), p.compact_closed)


def free_theory(name: str, objects: Iterable[str]) -> Theory:
    """The theory with the given objects and no arrows."""
    return validate_theory(TheoryPresentation(name, list(objects)))
