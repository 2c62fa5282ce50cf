"""Normal forms, rewriting and equality for cells of the free cornering.

Two engines live here.  :func:`rewrite_fixpoint` rewrites the term itself
with the oriented yanking and lift-functoriality rules, picking the
topmost-leftmost redex each time, so its trace is reproducible.
:func:`cells_equal` and :func:`to_row_normal_form` work on the wiring
diagram of the cell instead, which makes interchange, yanking and lift
functoriality hold on the nose.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cells import (
    EMPTY,
    CellBoundary,
    CellTerm,
    HComp,
    HId,
    Lift,
    RecvLeft,
    RecvRight,
    SendLeft,
    SendRight,
    VComp,
    VId,
    hcomp_all,
    vcomp_all,
)
from .errors import (
    BoundaryMismatch,
    CausalCycle,
    NotVertical,
    ResidualCorners,
    StepBudgetExceeded,
)
from .morphisms import DEFAULT_EQUALITY, EqualityConfig, Verdict, diagrams_equal
from .theory import Braid, Generator, Identity, MorphismTerm, Seq, Tensor, Theory
from .wiring import canonical_order, cell_diagram, relabel, schedule, schedule_morphism

# ----------------------------------------------------------------------------
# row normal form


@dataclass(frozen=True)
class Row:
    """One elementary row: a generator cell padded by vertical identities."""

    prefix: tuple
    slice: CellTerm
    suffix: tuple

    def cell(self) -> CellTerm:
        parts = []
        if self.prefix:
            parts.append(VId(self.prefix))
        parts.append(self.slice)
        if self.suffix:
            parts.append(VId(self.suffix))
        return hcomp_all(parts)

    def __str__(self):
        return str(self.cell())


@dataclass(frozen=True)
class RowNormalForm:
    rows: tuple[Row, ...]
    boundary: CellBoundary

    def to_cell(self) -> CellTerm:
        if not self.rows:
            return VId(self.boundary.top) if self.boundary.top else EMPTY
        return vcomp_all(r.cell() for r in self.rows)

    def __len__(self):
        return len(self.rows)


def _row_of_step(st) -> Row:
    if st.kind == "box":
        box = st.payload
        return Row(st.prefix, Lift(Generator(box.label, box.dom, box.cod)), st.suffix)
    if st.kind == "braid":
        u, v = st.payload
        return Row(st.prefix, Lift(Braid(u, v)), st.suffix)
    corner = {
        "recv_left": RecvLeft,
        "send_left": SendLeft,
        "recv_right": RecvRight,
        "send_right": SendRight,
    }[st.kind]
    return Row(st.prefix, corner(st.payload), st.suffix)


def to_row_normal_form(c: CellTerm) -> RowNormalForm:
    """Canonical topmost-leftmost elementary rows of a cell.

    Raises :class:`CausalCycle` if the cell's wiring has no schedule.
    """
    d = cell_diagram(c)
    d = relabel(d, canonical_order(d))
    sched = schedule(d, list(range(len(d.boxes))))
    return RowNormalForm(tuple(_row_of_step(st) for st in sched.steps), c.boundary)


def diagram_cell(d, borrow=None, order=None) -> CellTerm:
    """Synthesize a cell term whose wiring is ``d``.

    Boxes fire in ``order`` (default: canonical); see :func:`schedule` for
    ``borrow``.
    """
    if order is None:
        d = relabel(d, canonical_order(d))
        order = list(range(len(d.boxes)))
    sched = schedule(d, order, borrow)
    rows = [_row_of_step(st).cell() for st in sched.steps]
    if rows:
        return vcomp_all(rows)
    if d.left or d.right:
        return HId(d.left)
    return VId(d.top) if d.top else EMPTY


# ----------------------------------------------------------------------------
# equality and evaluation


def cells_equal(
    a: CellTerm,
    b: CellTerm,
    theory: Theory | None = None,
    config: EqualityConfig = DEFAULT_EQUALITY,
) -> Verdict:
    """Sound tri-state equality of two cells with the same boundary."""
    if a.boundary != b.boundary:
        raise BoundaryMismatch(f"cells have different boundaries: ({a.boundary}) vs ({b.boundary})")
    return diagrams_equal(cell_diagram(a), cell_diagram(b), theory, config)


def eval_vertical(c: CellTerm) -> MorphismTerm:
    """The morphism of the base theory that a vertical cell denotes."""
    if c.left or c.right:
        raise NotVertical(c.boundary)
    d = cell_diagram(c)
    d = relabel(d, canonical_order(d))
    try:
        sched = schedule(d, list(range(len(d.boxes))))
    except CausalCycle as exc:
        raise ResidualCorners(c) from exc
    return schedule_morphism(sched, d.top)


# ----------------------------------------------------------------------------
# literal term rewriting

RULES = (
    "unit",
    "yank-∘-h",
    "yank-∘-v",
    "yank-•-h",
    "yank-•-v",
    "lift-seq",
    "lift-tensor",
    "lift-id",
    "vid-merge",
    "hid-merge",
)


@dataclass
class _Node:
    kind: str  # "h" or "v"
    kids: list = field(default_factory=list)


def _flatten(c: CellTerm):
    if isinstance(c, (HComp, VComp)):
        kind = "h" if isinstance(c, HComp) else "v"
        node = _Node(kind)
        for part in (c.first, c.second):
            sub = _flatten(part)
            if isinstance(sub, _Node) and sub.kind == kind:
                node.kids.extend(sub.kids)
            else:
                node.kids.append(sub)
        return node
    return c


def _rebuild(n) -> CellTerm:
    if isinstance(n, _Node):
        parts = [_rebuild(k) for k in n.kids]
        return hcomp_all(parts) if n.kind == "h" else vcomp_all(parts)
    return n


def _size(n, memo):
    if id(n) in memo:
        return memo[id(n)]
    if isinstance(n, _Node):
        sizes = [_size(k, memo) for k in n.kids]
        if n.kind == "h":
            out = (max(s[0] for s in sizes), sum(s[1] for s in sizes))
        else:
            out = (sum(s[0] for s in sizes), max(s[1] for s in sizes))
    else:
        out = (1, 1)
    memo[id(n)] = out
    return out


def _is_unit(c) -> bool:
    return isinstance(c, VId) and not c.obj


def _pair_rule(kind: str, a, b, rules):
    """The contractum of an adjacent pair, or None."""
    if "unit" in rules and _is_unit(a):
        return "unit", b
    if "unit" in rules and _is_unit(b):
        return "unit", a
    if kind == "h":
        if "yank-∘-h" in rules and isinstance(a, SendRight) and isinstance(b, RecvLeft) and a.obj == b.obj:
            return "yank-∘-h", VId(a.obj)
        if "yank-•-h" in rules and isinstance(a, RecvRight) and isinstance(b, SendLeft) and a.obj == b.obj:
            return "yank-•-h", VId(a.obj)
        if "lift-tensor" in rules and isinstance(a, Lift) and isinstance(b, Lift):
            return "lift-tensor", Lift(Tensor(a.morphism, b.morphism))
        if "lift-id" in rules and isinstance(a, VId) and isinstance(b, Lift):
            return "lift-id", Lift(Tensor(Identity(a.obj), b.morphism))
        if "lift-id" in rules and isinstance(a, Lift) and isinstance(b, VId):
            return "lift-id", Lift(Tensor(a.morphism, Identity(b.obj)))
        if "vid-merge" in rules and isinstance(a, VId) and isinstance(b, VId):
            return "vid-merge", VId(a.obj + b.obj)
        if "unit" in rules and isinstance(a, HId):
            return "unit", b
        if "unit" in rules and isinstance(b, HId):
            return "unit", a
    else:
        if "yank-∘-v" in rules and isinstance(a, RecvLeft) and isinstance(b, SendRight) and a.obj == b.obj:
            return "yank-∘-v", HId((a.left[0],))
        if "yank-•-v" in rules and isinstance(a, RecvRight) and isinstance(b, SendLeft) and a.obj == b.obj:
            return "yank-•-v", HId((a.right[0],))
        if "lift-seq" in rules and isinstance(a, Lift) and isinstance(b, Lift):
            return "lift-seq", Lift(Seq(a.morphism, b.morphism))
        if "hid-merge" in rules and isinstance(a, HId) and isinstance(b, HId):
            return "hid-merge", HId(a.exchange + b.exchange)
        if "unit" in rules and isinstance(a, VId):
            return "unit", b
        if "unit" in rules and isinstance(b, VId):
            return "unit", a
    return None


def _find_redex(root, rules):
    """Topmost-leftmost redex: (row, col, depth, node, index, name, contractum)."""
    memo = {}
    best = None

    def visit(n, row, col, depth):
        nonlocal best
        if not isinstance(n, _Node):
            return
        r, c = row, col
        for i, kid in enumerate(n.kids):
            if i + 1 < len(n.kids):
                hit = _pair_rule(n.kind, kid, n.kids[i + 1], rules)
                if hit is not None:
                    cand = (r, c, depth)
                    if best is None or cand < best[:3]:
                        best = (r, c, depth, n, i, hit[0], hit[1])
            visit(kid, r, c, depth + 1)
            h, w = _size(kid, memo)
            if n.kind == "h":
                c += w
            else:
                r += h

    visit(root, 0, 0, 0)
    return best


def _splice(root, node, i, contractum):
    node.kids[i: i + 2] = [contractum]
    return _normalize_shape(root)


def _normalize_shape(n):
    if not isinstance(n, _Node):
        return n
    kids = []
    for k in n.kids:
        k = _normalize_shape(k)
        if isinstance(k, _Node) and k.kind == n.kind:
            kids.extend(k.kids)
        else:
            kids.append(k)
    n.kids = kids
    if len(kids) == 1:
        return kids[0]
    return n


def rewrite_fixpoint(
    c: CellTerm,
    rules=RULES,
    budget: int = 10_000,
    trace: list | None = None,
) -> CellTerm:
    """Rewrite with the oriented built-in rules until none applies.

    Each step replaces one adjacent pair inside a flattened chain, so every
    step strictly decreases the number of term nodes.  When ``trace`` is a
    list, one line ``"rule-name @ row,col"`` is appended per step, with the
    coordinates of the redex in the term's grid layout.
    """
    rules = frozenset(rules)
    root = _flatten(c)
    for _ in range(budget):
        hit = _find_redex(root, rules)
        if hit is None:
            return _rebuild(root)
        row, col, _depth, node, i, name, contractum = hit
        if trace is not None:
            trace.append(f"{name} @ {row},{col}")
        root = _splice(root, node, i, contractum)
        if not isinstance(root, _Node):
            return root
    if _find_redex(root, rules) is None:
        return _rebuild(root)
    raise StepBudgetExceeded(budget, _rebuild(root))
