"""Compact closed resource theories: duals, credit and debit, and balancing.

A unit ``eta_A : I -> A * A*`` creates a matching credit (``A``) and debit
(``A*``); a counit ``eps_A : A* * A -> I`` cancels a debit against a
credit.  With these available every exchange can be reversed, and the
horizontal cells themselves form a compact closed category.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .cells import (
    CellTerm,
    ExchangeType,
    Lift,
    Polarity,
    PolarizedObject,
    RecvLeft,
    RecvRight,
    SendLeft,
    SendRight,
    VId,
    hcomp,
    vcomp_all,
)
from .errors import AlreadyDualized, RequiresCompactBase, UndeclaredObject
from .morphisms import contract_all_snakes
from .rewrite import diagram_cell
from .theory import (
    ArrowDecl,
    Braid,
    Generator,
    Identity,
    MorphismTerm,
    Seq,
    Tensor,
    Theory,
    Word,
    dual_name,
)
from .wiring import Diagram, diagram_morphism, morphism_diagram


def unit_name(obj: str) -> str:
    return f"eta_{obj}"


def counit_name(obj: str) -> str:
    return f"eps_{obj}"


def dualize_theory(theory: Theory) -> Theory:
    """Adjoin ``A*``, ``eta_A``, ``eps_A`` and both snake equations for every object."""
    if theory.dualized:
        raise AlreadyDualized(f"theory {theory.name} already has duals")
    if not theory.compact_closed:
        raise RequiresCompactBase(f"theory {theory.name} is not declared compact")
    objects = list(theory.objects) + [dual_name(o) for o in theory.objects]
    arrows = list(theory.arrows)
    equations = list(theory.equations)
    builtin = set()
    units, counits = [], []
    for a in theory.objects:
        s = dual_name(a)
        eta = ArrowDecl(unit_name(a), (), (a, s))
        eps = ArrowDecl(counit_name(a), (s, a), ())
        arrows += [eta, eps]
        units.append((eta.name, a))
        counits.append((eps.name, a))
        g_eta = Generator(eta.name, eta.dom, eta.cod)
        g_eps = Generator(eps.name, eps.dom, eps.cod)
        # (eta * 1_A) ; (1_A * eps) = 1_A  and  (1_A* * eta) ; (eps * 1_A*) = 1_A*
        builtin.add(len(equations))
        equations.append((Seq(Tensor(g_eta, Identity((a,))), Tensor(Identity((a,)), g_eps)), Identity((a,))))
        builtin.add(len(equations))
        equations.append((Seq(Tensor(Identity((s,)), g_eta), Tensor(g_eps, Identity((s,)))), Identity((s,))))
    return Theory(
        theory.name,
        tuple(objects),
        tuple(arrows),
        tuple(equations),
        True,
        dualized=True,
        units=tuple(units),
        counits=tuple(counits),
        builtin_equations=frozenset(builtin),
    )


def borrow_map(theory: Theory | None) -> dict[str, tuple[str, str]]:
    """Base object -> (unit, counit) labels; empty unless dualized."""
    if theory is None or not theory.dualized:
        return {}
    counit = {obj: name for name, obj in theory.counits}
    return {obj: (name, counit[obj]) for name, obj in theory.units}


def _require_dualized(theory: Theory | None) -> Theory:
    if theory is None or not theory.dualized:
        raise RequiresCompactBase("this construction needs a dualized compact closed theory")
    return theory


def _gens(theory: Theory, a: str) -> tuple[Generator, Generator]:
    if a not in dict((o, n) for n, o in theory.units):
        raise UndeclaredObject(a, "dualized objects")
    return theory.gen(unit_name(a)), theory.gen(counit_name(a))


# ---------------------------------------------------------------- exchanges


def exchange_dual(x: ExchangeType) -> ExchangeType:
    """Flip every polarity; the objects themselves are unchanged."""
    return tuple(PolarizedObject(p.obj, p.polarity.flip()) for p in x)


def h_unit(x: ExchangeType, theory: Theory | None = None) -> CellTerm:
    """Horizontal cell with left ``I`` and right ``X * X^*``."""
    x = tuple(x)
    n = len(x)
    src = {}
    for i, p in enumerate(x):
        for k in range(len(p.obj)):
            a, b = ("R", i, k), ("R", n + i, k)
            # on the right boundary the ∘ ports are the targets
            src.update({a: b} if p.circ else {b: a})
    right = x + exchange_dual(x)
    return diagram_cell(Diagram([], src, (), (), (), right), borrow=borrow_map(theory))


def h_counit(x: ExchangeType, theory: Theory | None = None) -> CellTerm:
    """Horizontal cell with left ``X^* * X`` and right ``I``."""
    x = tuple(x)
    n = len(x)
    src = {}
    for i, p in enumerate(x):
        for k in range(len(p.obj)):
            a, b = ("L", i, k), ("L", n + i, k)
            # on the left boundary the • ports are the targets
            src.update({a: b} if p.circ else {b: a})
    left = exchange_dual(x) + x
    return diagram_cell(Diagram([], src, (), (), left, ()), borrow=borrow_map(theory))


def snake_sides(x: ExchangeType, theory: Theory | None = None):
    """The two zig-zag composites at ``X`` and at ``X^*``, each to be the identity."""
    from .cells import hid, vcomp

    x = tuple(x)
    xs = exchange_dual(x)
    unit, counit = h_unit(x, theory), h_counit(x, theory)
    first = hcomp(vcomp(unit, hid(x)), vcomp(hid(x), counit))
    second = hcomp(vcomp(hid(xs), unit), vcomp(counit, hid(xs)))
    return (first, hid(x)), (second, hid(xs))


# ----------------------------------------------------------------- reversal


def reversal_iso(a: str, theory: Theory, polarity: Polarity = Polarity.CIRC):
    """Mutually inverse cells ``A∘ -> (A*)•`` and back (or ``A• -> (A*)∘``)."""
    theory = _require_dualized(theory)
    if isinstance(a, tuple):
        (a,) = a
    s = dual_name(a)
    eta, eps = _gens(theory, a)
    if polarity is Polarity.CIRC:
        forward = vcomp_all([
            RecvLeft((a,)),
            hcomp(VId((a,)), RecvRight((s,))),
            Lift(Seq(Braid((a,), (s,)), eps)),
        ])
        backward = vcomp_all([
            Lift(Seq(eta, Braid((a,), (s,)))),
            hcomp(SendLeft((s,)), VId((a,))),
            SendRight((a,)),
        ])
    else:
        forward = vcomp_all([
            Lift(eta),
            hcomp(SendLeft((a,)), VId((s,))),
            SendRight((s,)),
        ])
        backward = vcomp_all([
            RecvLeft((s,)),
            hcomp(VId((s,)), RecvRight((a,))),
            Lift(eps),
        ])
    return forward, backward


def symmetry_inverse(a: Word, b: Word, theory: Theory | None) -> CellTerm:
    """The reordering ``B• * A∘ -> A∘ * B•``, which needs duals."""
    a, b = tuple(a), tuple(b)
    left = (PolarizedObject(b, Polarity.BULLET), PolarizedObject(a, Polarity.CIRC))
    right = (PolarizedObject(a, Polarity.CIRC), PolarizedObject(b, Polarity.BULLET))
    src = {("R", 0, k): ("L", 1, k) for k in range(len(a))}
    src.update({("L", 0, k): ("R", 1, k) for k in range(len(b))})
    return diagram_cell(Diagram([], src, (), (), left, right), borrow=borrow_map(theory))


# ------------------------------------------------------------------ ledgers


@dataclass
class LedgerReport:
    cancelled_pairs: list[tuple[str, str]] = field(default_factory=list)
    residual_credits: list[str] = field(default_factory=list)
    residual_debits: list[str] = field(default_factory=list)

    @property
    def balanced(self) -> bool:
        return not self.residual_credits and not self.residual_debits

    def to_json(self) -> dict:
        return {
            "cancelled_pairs": [list(p) for p in self.cancelled_pairs],
            "residual_credits": list(self.residual_credits),
            "residual_debits": list(self.residual_debits),
            "balanced": self.balanced,
        }


def balance_ledger(m: MorphismTerm, theory: Theory) -> tuple[MorphismTerm, LedgerReport]:
    """Cancel every unit/counit pair joined in snake position.

    Each leftover unit or counit on ``A`` leaves one credit ``A`` and one
    debit ``A*`` open.  The returned morphism equals ``m``.
    """
    theory = _require_dualized(theory)
    d, pairs = contract_all_snakes(morphism_diagram(m), theory)
    units, counits = theory.unit_map, theory.counit_map
    credits: Counter = Counter()
    debits: Counter = Counter()
    for box in d.boxes:
        obj = units.get(box.label) or counits.get(box.label)
        if obj is not None:
            credits[obj] += 1
            debits[dual_name(obj)] += 1
    report = LedgerReport(
        cancelled_pairs=pairs,
        residual_credits=sorted(credits.elements()),
        residual_debits=sorted(debits.elements()),
    )
    return diagram_morphism(d), report
