"""Open wiring diagrams: the graph form of morphisms and cells.

A :class:`Diagram` is a set of boxes (generator occurrences) plus a
monogamous wiring: every *target* endpoint is fed by exactly one *source*
endpoint.  Endpoints are tuples:

    ("T", i)          top port i              (source)
    ("B", i)          bottom port i           (target)
    ("L", i, k)       wire k of left factor i (source if ∘, target if •)
    ("R", i, k)       wire k of right factor i (target if ∘, source if •)
    ("I", b, i)       input i of box b        (target)
    ("O", b, j)       output j of box b       (source)

Corners contribute no boxes: they only reroute a wire between a vertical
and a horizontal side, so the yanking equations hold on the nose.  Lifted
morphisms contribute their generator boxes, so lift functoriality holds on
the nose too, and interchange is invisible because the wiring does not
record the order in which independent pieces were pasted.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .cells import (
    CellTerm,
    ExchangeType,
    HComp,
    HId,
    Lift,
    PolarizedObject,
    RecvLeft,
    RecvRight,
    SendLeft,
    SendRight,
    VComp,
    VId,
)
from .errors import CausalCycle, CorneringError, RequiresCompactBase
from .theory import (
    Braid,
    Generator,
    Identity,
    MorphismTerm,
    Seq,
    Tensor,
    Word,
    padded,
)


@dataclass(frozen=True)
class Box:
    label: str
    dom: Word
    cod: Word
    tag: object = None


@dataclass
class Diagram:
    boxes: list[Box]
    src: dict  # target endpoint -> source endpoint
    top: Word = ()
    bottom: Word = ()
    left: ExchangeType = ()
    right: ExchangeType = ()

    # ---------------------------------------------------------------- ports
    def sources(self) -> list[tuple]:
        out = [("T", i) for i in range(len(self.top))]
        out += _side_ports("L", self.left, want_circ=True)
        out += _side_ports("R", self.right, want_circ=False)
        for b, box in enumerate(self.boxes):
            out += [("O", b, j) for j in range(len(box.cod))]
        return out

    def targets(self) -> list[tuple]:
        out = [("B", i) for i in range(len(self.bottom))]
        out += _side_ports("L", self.left, want_circ=False)
        out += _side_ports("R", self.right, want_circ=True)
        for b, box in enumerate(self.boxes):
            out += [("I", b, i) for i in range(len(box.dom))]
        return out

    def boundary_ports(self) -> list[tuple]:
        ports = [("T", i) for i in range(len(self.top))]
        ports += [("L", i, k) for i, p in enumerate(self.left) for k in range(len(p.obj))]
        ports += [("R", i, k) for i, p in enumerate(self.right) for k in range(len(p.obj))]
        ports += [("B", i) for i in range(len(self.bottom))]
        return ports

    def tgt(self) -> dict:
        return {s: t for t, s in self.src.items()}

    def object_at(self, endpoint) -> str:
        kind = endpoint[0]
        if kind == "T":
            return self.top[endpoint[1]]
        if kind == "B":
            return self.bottom[endpoint[1]]
        if kind == "L":
            return self.left[endpoint[1]].obj[endpoint[2]]
        if kind == "R":
            return self.right[endpoint[1]].obj[endpoint[2]]
        if kind == "I":
            return self.boxes[endpoint[1]].dom[endpoint[2]]
        if kind == "O":
            return self.boxes[endpoint[1]].cod[endpoint[2]]
        raise ValueError(endpoint)

    def check(self) -> None:
        """Assert monogamy and type agreement of every wire."""
        targets = set(self.targets())
        sources = set(self.sources())
        if set(self.src) != targets:
            raise AssertionError("every target must be fed exactly once")
        used = list(self.src.values())
        if len(set(used)) != len(used) or set(used) != sources:
            raise AssertionError("every source must feed exactly one target")
        for t, s in self.src.items():
            if self.object_at(t) != self.object_at(s):
                raise AssertionError(f"wire {s} -> {t} changes type")


def _side_ports(side: str, x: ExchangeType, want_circ: bool) -> list[tuple]:
    return [
        (side, i, k)
        for i, p in enumerate(x)
        if p.circ == want_circ
        for k in range(len(p.obj))
    ]


# ------------------------------------------------------------------ builders


def identity_diagram(w: Word) -> Diagram:
    return Diagram([], {("B", i): ("T", i) for i in range(len(w))}, tuple(w), tuple(w))


def box_diagram(label: str, dom: Word, cod: Word, tag=None) -> Diagram:
    src = {("I", 0, i): ("T", i) for i in range(len(dom))}
    src.update({("B", j): ("O", 0, j) for j in range(len(cod))})
    return Diagram([Box(label, tuple(dom), tuple(cod), tag)], src, tuple(dom), tuple(cod))


def braid_diagram(u: Word, v: Word) -> Diagram:
    n, m = len(u), len(v)
    src = {("B", j): ("T", n + j) for j in range(m)}
    src.update({("B", m + j): ("T", j) for j in range(n)})
    return Diagram([], src, tuple(u) + tuple(v), tuple(v) + tuple(u))


def _rename(endpoint, box_offset, t=0, b=0, l=0, r=0):
    kind = endpoint[0]
    if kind in ("I", "O"):
        return (kind, endpoint[1] + box_offset, endpoint[2])
    if kind == "T":
        return ("T", endpoint[1] + t)
    if kind == "B":
        return ("B", endpoint[1] + b)
    if kind == "L":
        return ("L", endpoint[1] + l, endpoint[2])
    return ("R", endpoint[1] + r, endpoint[2])


def _resolve(src: dict) -> dict:
    """Eliminate interface endpoints ("X", ...) by following wires through them."""
    out = {}
    for t, s in src.items():
        if t[0] == "X":
            continue
        steps = 0
        while s[0] == "X":
            s = src[s]
            steps += 1
            if steps > len(src):
                raise CausalCycle(["closed wire loop through a composite boundary"])
        out[t] = s
    return out


def vcomp_diagrams(a: Diagram, b: Diagram) -> Diagram:
    """Glue the bottom of ``a`` to the top of ``b``."""
    if a.bottom != b.top:
        raise CorneringError("vertical gluing needs matching words")
    off = len(a.boxes)
    src = {}
    for t, s in a.src.items():
        t2 = ("X", t[1]) if t[0] == "B" else t
        src[t2] = s
    for t, s in b.src.items():
        t2 = _rename(t, off, l=len(a.left), r=len(a.right))
        s2 = ("X", s[1]) if s[0] == "T" else _rename(s, off, l=len(a.left), r=len(a.right))
        src[t2] = s2
    return Diagram(a.boxes + b.boxes, _resolve(src), a.top, b.bottom, a.left + b.left, a.right + b.right)


def hcomp_diagrams(a: Diagram, b: Diagram) -> Diagram:
    """Glue the right side of ``a`` to the left side of ``b``."""
    if a.right != b.left:
        raise CorneringError("horizontal gluing needs matching exchange types")
    off = len(a.boxes)
    src = {}
    for t, s in a.src.items():
        t2 = ("X", t[1], t[2]) if t[0] == "R" else t
        s2 = ("X", s[1], s[2]) if s[0] == "R" else s
        src[t2] = s2
    for t, s in b.src.items():
        t2 = ("X", t[1], t[2]) if t[0] == "L" else _rename(t, off, t=len(a.top), b=len(a.bottom))
        s2 = ("X", s[1], s[2]) if s[0] == "L" else _rename(s, off, t=len(a.top), b=len(a.bottom))
        src[t2] = s2
    return Diagram(
        a.boxes + b.boxes, _resolve(src), a.top + b.top, a.bottom + b.bottom, a.left, b.right
    )


def morphism_diagram(m: MorphismTerm) -> Diagram:
    if isinstance(m, Identity):
        return identity_diagram(m.obj)
    if isinstance(m, Generator):
        return box_diagram(m.name, m.dom, m.cod)
    if isinstance(m, Braid):
        return braid_diagram(m.left, m.right)
    if isinstance(m, Seq):
        return vcomp_diagrams(morphism_diagram(m.first), morphism_diagram(m.second))
    if isinstance(m, Tensor):
        return hcomp_diagrams(morphism_diagram(m.left), morphism_diagram(m.right))
    raise TypeError(f"not a morphism term: {m!r}")


def cell_diagram(c: CellTerm, keep_corners: bool = False, tag=None) -> Diagram:
    """Trace the wires of a cell term.

    With ``keep_corners`` every corner becomes a pass-through box labelled by
    its constructor (used for rendering); otherwise corners vanish.
    """
    if isinstance(c, HComp):
        return hcomp_diagrams(cell_diagram(c.first, keep_corners, tag), cell_diagram(c.second, keep_corners, tag))
    if isinstance(c, VComp):
        return vcomp_diagrams(cell_diagram(c.first, keep_corners, tag), cell_diagram(c.second, keep_corners, tag))
    if isinstance(c, Lift):
        d = morphism_diagram(c.morphism)
        if tag is not None:
            d.boxes = [Box(bx.label, bx.dom, bx.cod, tag) for bx in d.boxes]
        return d
    if isinstance(c, VId):
        return identity_diagram(c.obj)
    if isinstance(c, HId):
        src = {}
        for i, p in enumerate(c.exchange):
            for k in range(len(p.obj)):
                if p.circ:
                    src[("R", i, k)] = ("L", i, k)
                else:
                    src[("L", i, k)] = ("R", i, k)
        return Diagram([], src, (), (), c.exchange, c.exchange)
    if isinstance(c, (SendRight, RecvLeft, SendLeft, RecvRight)):
        return _corner_diagram(c, keep_corners, tag)
    raise TypeError(f"not a cell term: {c!r}")


def _corner_diagram(c, keep_corners, tag) -> Diagram:
    n = len(c.obj)
    b = c.boundary
    if isinstance(c, SendRight):
        ins, outs = [("T", k) for k in range(n)], [("R", 0, k) for k in range(n)]
    elif isinstance(c, RecvLeft):
        ins, outs = [("L", 0, k) for k in range(n)], [("B", k) for k in range(n)]
    elif isinstance(c, SendLeft):
        ins, outs = [("T", k) for k in range(n)], [("L", 0, k) for k in range(n)]
    else:
        ins, outs = [("R", 0, k) for k in range(n)], [("B", k) for k in range(n)]
    if not keep_corners:
        src = {t: s for s, t in zip(ins, outs)}
        return Diagram([], src, b.top, b.bottom, b.left, b.right)
    box = Box(c.keyword, c.obj, c.obj, tag)
    src = {("I", 0, k): s for k, s in enumerate(ins)}
    src.update({t: ("O", 0, k) for k, t in enumerate(outs)})
    return Diagram([box], src, b.top, b.bottom, b.left, b.right)


# ------------------------------------------------------------- canonical keys


def _box_ports(d: Diagram, b: int) -> list[tuple]:
    box = d.boxes[b]
    return [("I", b, i) for i in range(len(box.dom))] + [("O", b, j) for j in range(len(box.cod))]


def _partners(d: Diagram, transparent: Mapping[str, str]):
    """Undirected partner map on real endpoints, plus closed wire loops.

    Boxes whose label is in ``transparent`` (units and counits of a compact
    closed theory) are dissolved into plain wire bends.
    """
    link = {}
    for t, s in d.src.items():
        link[t] = s
        link[s] = t
    inner = {}
    for b, box in enumerate(d.boxes):
        kind = transparent.get(box.label)
        if kind == "unit":
            inner[("O", b, 0)] = ("O", b, 1)
            inner[("O", b, 1)] = ("O", b, 0)
        elif kind == "counit":
            inner[("I", b, 0)] = ("I", b, 1)
            inner[("I", b, 1)] = ("I", b, 0)
    partner = {}
    visited = set()
    for e in link:
        if e in inner or e in partner:
            continue
        cur = link[e]
        while cur in inner:
            visited.add(cur)
            visited.add(inner[cur])
            cur = link[inner[cur]]
        partner[e] = cur
        partner[cur] = e
    loops = []
    for e in inner:
        if e in visited:
            continue
        # a closed loop made only of bends
        cur = e
        while cur not in visited:
            visited.add(cur)
            visited.add(inner[cur])
            cur = link[inner[cur]]
        loops.append(_base(d.object_at(e)))
    return partner, sorted(loops)


def canonical_order(d: Diagram, transparent: Mapping[str, str] | None = None) -> list[int]:
    """Boxes in canonical order (reachable from the boundary first)."""
    key, order = _canonical(d, transparent or {})
    return order


def canonical_key(d: Diagram, transparent: Mapping[str, str] | None = None):
    """A hashable invariant: equal iff the diagrams are isomorphic rel boundary."""
    key, order = _canonical(d, transparent or {})
    return key


def _canonical(d: Diagram, transparent):
    partner, loops = _partners(d, transparent)
    real = [b for b, box in enumerate(d.boxes) if box.label not in transparent]
    label = {}
    order = []

    def bfs(seeds, local_label, local_order):
        queue = deque(seeds)
        while queue:
            e = queue.popleft()
            p = partner.get(e)
            if p is None:
                continue
            if p[0] in ("I", "O") and p[1] not in local_label:
                local_label[p[1]] = len(local_order)
                local_order.append(p[1])
                queue.extend(_box_ports(d, p[1]))

    bfs(d.boundary_ports(), label, order)

    def name(e, lab):
        if e[0] in ("I", "O"):
            return (e[0], lab[e[1]], e[2])
        return e

    def encode(lab, ords):
        boxes = tuple((d.boxes[b].label, d.boxes[b].dom, d.boxes[b].cod) for b in ords)
        edges = set()
        ports = [q for b in ords for q in _box_ports(d, b)]
        for e in ports:
            p = partner[e]
            edges.add(tuple(sorted((name(e, lab), name(p, lab)), key=repr)))
        return boxes, tuple(sorted(edges, key=repr))

    boundary_edges = set()
    for e in d.boundary_ports():
        p = partner[e]
        if p[0] not in ("I", "O"):
            boundary_edges.add(tuple(sorted((e, p), key=repr)))
    main = encode(label, order)

    floating = []
    rest = [b for b in real if b not in label]
    done = set()
    for b in rest:
        if b in done:
            continue
        comp_lab = {}
        comp_ord = []
        comp_lab[b] = 0
        comp_ord.append(b)
        bfs(_box_ports(d, b), comp_lab, comp_ord)
        members = list(comp_ord)
        done.update(members)
        best = None
        best_order = None
        for root in members:
            lab = {root: 0}
            ords = [root]
            bfs(_box_ports(d, root), lab, ords)
            enc = encode(lab, ords)
            if best is None or repr(enc) < repr(best):
                best, best_order = enc, ords
        floating.append((best, best_order))
    floating.sort(key=lambda f: repr(f[0]))
    for _, ords in floating:
        order.extend(ords)
    key = (
        tuple(d.top),
        tuple(d.bottom),
        tuple(d.left),
        tuple(d.right),
        tuple(sorted(boundary_edges, key=repr)),
        main,
        tuple(f[0] for f in floating),
        tuple(loops),
    )
    return key, order


def relabel(d: Diagram, order: list[int]) -> Diagram:
    """Renumber the boxes so that ``order[i]`` becomes box ``i``; drops others."""
    new_index = {b: i for i, b in enumerate(order)}

    def ren(e):
        if e[0] in ("I", "O"):
            return (e[0], new_index[e[1]], e[2])
        return e

    src = {ren(t): ren(s) for t, s in d.src.items()}
    return Diagram([d.boxes[b] for b in order], src, d.top, d.bottom, d.left, d.right)


# ---------------------------------------------------------- reachability


def box_successors(d: Diagram, tgt: dict | None = None) -> dict[int, set]:
    tgt = tgt if tgt is not None else d.tgt()
    succ = {b: set() for b in range(len(d.boxes))}
    for b, box in enumerate(d.boxes):
        for j in range(len(box.cod)):
            t = tgt[("O", b, j)]
            if t[0] == "I":
                succ[b].add(t[1])
    return succ


def reachable_boxes(succ: dict[int, set], starts: Iterable[int]) -> set[int]:
    seen = set()
    stack = list(starts)
    while stack:
        b = stack.pop()
        if b in seen:
            continue
        seen.add(b)
        stack.extend(succ[b])
    return seen


def is_acyclic(d: Diagram) -> bool:
    succ = box_successors(d)
    indeg = {b: 0 for b in succ}
    for b in succ:
        for c in succ[b]:
            indeg[c] += 1
    queue = [b for b, n in indeg.items() if n == 0]
    count = 0
    while queue:
        b = queue.pop()
        count += 1
        for c in succ[b]:
            indeg[c] -= 1
            if indeg[c] == 0:
                queue.append(c)
    return count == len(succ)


# ------------------------------------------------------ equation rewriting


@dataclass
class Pattern:
    """The left-hand side of a directed equation, as a diagram."""

    name: str
    lhs: Diagram
    rhs: Diagram
    usable: bool = True
    growth: int = 0

    @classmethod
    def from_terms(cls, name: str, lhs: MorphismTerm, rhs: MorphismTerm) -> "Pattern":
        dl, dr = morphism_diagram(lhs), morphism_diagram(rhs)
        usable = bool(dl.boxes) and all(s[0] != "T" for t, s in dl.src.items() if t[0] == "B")
        return cls(name, dl, dr, usable, len(dr.boxes) - len(dl.boxes))


def find_matches(g: Diagram, p: Pattern, limit: int | None = None) -> list[dict[int, int]]:
    """Convex embeddings of the pattern's boxes into ``g``."""
    if not p.usable:
        return []
    lhs = p.lhs
    n = len(lhs.boxes)
    # connectivity-first order of pattern boxes
    adj = {b: set() for b in range(n)}
    for t, s in lhs.src.items():
        if t[0] == "I" and s[0] == "O":
            adj[t[1]].add(s[1])
            adj[s[1]].add(t[1])
    porder = []
    for b in range(n):
        if b in porder:
            continue
        queue = deque([b])
        while queue:
            x = queue.popleft()
            if x in porder:
                continue
            porder.append(x)
            queue.extend(sorted(adj[x]))
    g_tgt = g.tgt()
    succ = box_successors(g, g_tgt)
    by_label: dict[str, list[int]] = {}
    for b, box in enumerate(g.boxes):
        by_label.setdefault(box.label, []).append(b)

    results = []

    def consistent(phi):
        for t, s in lhs.src.items():
            if t[0] == "I" and t[1] in phi and s[0] == "O" and s[1] in phi:
                if g.src[("I", phi[t[1]], t[2])] != ("O", phi[s[1]], s[2]):
                    return False
        return True

    def extend(i, phi, used):
        if limit is not None and len(results) >= limit:
            return
        if i == len(porder):
            if _valid_embedding(g, g_tgt, succ, lhs, phi):
                results.append(dict(phi))
            return
        pb = porder[i]
        for gb in by_label.get(lhs.boxes[pb].label, []):
            if gb in used:
                continue
            if (g.boxes[gb].dom, g.boxes[gb].cod) != (lhs.boxes[pb].dom, lhs.boxes[pb].cod):
                continue
            phi[pb] = gb
            if consistent(phi):
                used.add(gb)
                extend(i + 1, phi, used)
                used.discard(gb)
            del phi[pb]

    extend(0, {}, set())
    return results


def _valid_embedding(g, g_tgt, succ, lhs, phi) -> bool:
    image = set(phi.values())
    for t, s in lhs.src.items():
        if t[0] == "I" and s[0] == "T":
            gs = g.src[("I", phi[t[1]], t[2])]
            if gs[0] == "O" and gs[1] in image:
                return False
    exits = []
    for t, s in lhs.src.items():
        if t[0] == "B":
            gt = g_tgt[("O", phi[s[1]], s[2])]
            if gt[0] == "I":
                if gt[1] in image:
                    return False
                exits.append(gt[1])
    # convexity: nothing leaving the match may come back into it
    outside = reachable_boxes({b: (v - image) for b, v in succ.items()}, exits)
    for b in outside:
        if succ[b] & image:
            return False
    return True


def apply_match(g: Diagram, p: Pattern, phi: dict[int, int]) -> Diagram:
    lhs, rhs = p.lhs, p.rhs
    image = set(phi.values())
    g_tgt = g.tgt()
    feeds = {}
    for t, s in lhs.src.items():
        if t[0] == "I" and s[0] == "T":
            feeds[s[1]] = g.src[("I", phi[t[1]], t[2])]
    drains = {}
    for t, s in lhs.src.items():
        if t[0] == "B":
            drains[t[1]] = g_tgt[("O", phi[s[1]], s[2])]
    keep = [b for b in range(len(g.boxes)) if b not in image]
    new_index = {b: i for i, b in enumerate(keep)}
    off = len(keep)

    def ren(e):
        if e[0] in ("I", "O"):
            return (e[0], new_index[e[1]], e[2])
        return e

    src = {}
    for t, s in g.src.items():
        if t[0] == "I" and t[1] in image:
            continue
        if s[0] == "O" and s[1] in image:
            continue
        src[ren(t)] = ren(s)
    for t, s in rhs.src.items():
        if t[0] == "B":
            t2 = drains[t[1]]
            t2 = ren(t2)
        else:
            t2 = (t[0], t[1] + off, t[2])
        if s[0] == "T":
            s2 = ren(feeds[s[1]])
        else:
            s2 = (s[0], s[1] + off, s[2])
        src[t2] = s2
    boxes = [g.boxes[b] for b in keep] + list(rhs.boxes)
    return Diagram(boxes, src, g.top, g.bottom, g.left, g.right)


# ----------------------------------------------------------- snake contraction


def snake_redexes(d: Diagram, units: Mapping[str, str], counits: Mapping[str, str]):
    """Pairs (unit box, counit box, which) connected by exactly one wire."""
    out = []
    for c, box in enumerate(d.boxes):
        if box.label not in counits:
            continue
        s0 = d.src[("I", c, 0)]
        s1 = d.src[("I", c, 1)]
        for which, s in ((1, s0), (0, s1)):
            if s[0] != "O" or d.boxes[s[1]].label not in units:
                continue
            b = s[1]
            if units[d.boxes[b].label] != counits[box.label]:
                continue
            other = s1 if which == 1 else s0
            if other[0] == "O" and other[1] == b:
                continue  # closed loop, not a snake
            out.append((b, c, which))
    return out


def contract_snake(d: Diagram, b: int, c: int, which: int) -> Diagram | None:
    """Cancel a unit/counit pair joined by one wire; None if that would loop."""
    tgt = d.tgt()
    if which == 1:  # dual wire joins them: the plain wire passes through
        s = d.src[("I", c, 1)]
        t = tgt[("O", b, 0)]
    else:
        s = d.src[("I", c, 0)]
        t = tgt[("O", b, 1)]
    if s[0] == "O" and t[0] == "I":
        succ = box_successors(d, tgt)
        if s[1] in reachable_boxes(succ, [t[1]]):
            return None
    keep = [x for x in range(len(d.boxes)) if x not in (b, c)]
    new_index = {x: i for i, x in enumerate(keep)}

    def ren(e):
        if e[0] in ("I", "O"):
            return (e[0], new_index[e[1]], e[2])
        return e

    src = {}
    for tt, ss in d.src.items():
        if tt[0] == "I" and tt[1] in (b, c):
            continue
        if ss[0] == "O" and ss[1] in (b, c):
            continue
        src[ren(tt)] = ren(ss)
    src[ren(t)] = ren(s)
    return Diagram([d.boxes[x] for x in keep], src, d.top, d.bottom, d.left, d.right)


# --------------------------------------------------------------- scheduling


@dataclass
class Step:
    """One elementary row of a schedule."""

    kind: str  # "box" | "braid" | "recv_left" | "send_left" | "recv_right" | "send_right"
    prefix: Word
    suffix: Word
    payload: object  # Box, (Word, Word) for braids, or the moved word
    ref: object = None  # box index / (side, factor) for boundary events


@dataclass
class Schedule:
    steps: list[Step] = field(default_factory=list)
    events: list[tuple] = field(default_factory=list)  # order of non-braid steps


def schedule(
    d: Diagram,
    order: list[int] | None = None,
    borrow: Mapping[str, tuple[str, str]] | None = None,
) -> Schedule:
    """Canonical topmost-leftmost schedule of a diagram as elementary rows.

    ``order`` fixes tie-breaking between boxes (defaults to the canonical
    order).  Raises :class:`CausalCycle` when no event can fire.

    With ``borrow`` (base object -> (unit label, counit label)) a deadlocked
    send is unblocked by creating the resource and its dual with a unit, and
    the dual is cancelled by a counit as soon as the real resource arrives.
    """
    if order is None:
        order = canonical_order(d)
    rank = {b: i for i, b in enumerate(order)}
    state: list[tuple] = [("T", i) for i in range(len(d.top))]
    objs: dict[tuple, str] = {("T", i): o for i, o in enumerate(d.top)}
    for b, box in enumerate(d.boxes):
        for j, o in enumerate(box.cod):
            objs[("O", b, j)] = o
    for side, x in (("L", d.left), ("R", d.right)):
        for i, p in enumerate(x):
            for k, o in enumerate(p.obj):
                objs[(side, i, k)] = o
    pending_boxes = set(range(len(d.boxes)))
    li = ri = 0
    sched = Schedule()
    alias: dict[tuple, tuple] = {}  # borrowed source -> stand-in wire
    debt: dict[tuple, tuple] = {}  # borrowed source -> dual wire awaiting it
    borrowed = 0

    def resolve(w):
        return alias.get(w, w)

    def word_of(ws):
        return tuple(objs[w] for w in ws)

    def move(wire, dest):
        i = state.index(wire)
        if i == dest:
            return
        if i > dest:
            sched.steps.append(
                Step("braid", word_of(state[:dest]), word_of(state[i + 1:]),
                     (word_of(state[dest:i]), (objs[wire],)))
            )
            state.insert(dest, state.pop(i))
        else:
            sched.steps.append(
                Step("braid", word_of(state[:i]), word_of(state[dest + 1:]),
                     ((objs[wire],), word_of(state[i + 1:dest + 1])))
            )
            state.insert(dest, state.pop(i))

    def settle(new_wires):
        for w in new_wires:
            if w not in debt:
                continue
            dual = debt.pop(w)
            base = _base(objs[w])
            ins = [dual, w] if objs[dual] != base else [w, dual]
            pos = min(state.index(x) for x in ins)
            for j, x in enumerate(ins):
                move(x, pos + j)
            box = Box(borrow[base][1], (objs[ins[0]], objs[ins[1]]), ())
            sched.steps.append(
                Step("box", word_of(state[:pos]), word_of(state[pos + 2:]), box, ("counit", w))
            )
            del state[pos: pos + 2]
            sched.events.append(("counit", w))

    def lend(w, at_front):
        nonlocal borrowed
        base = _base(objs[w])
        if borrow is None or base not in borrow:
            raise RequiresCompactBase(f"sending {objs[w]} before it is available needs a unit for {base}")
        e0, e1 = ("E", borrowed, 0), ("E", borrowed, 1)
        borrowed += 1
        objs[e0], objs[e1] = base, base + "*"
        box = Box(borrow[base][0], (), (base, base + "*"))
        pos = 0 if at_front else len(state)
        sched.steps.append(Step("box", word_of(state[:pos]), word_of(state[pos:]), box, ("unit", w)))
        state[pos:pos] = [e0, e1]
        sched.events.append(("unit", w))
        alias[w], debt[w] = (e0, e1) if objs[w] == base else (e1, e0)

    while pending_boxes or li < len(d.left) or ri < len(d.right):
        live = set(state)
        candidates = []
        if li < len(d.left):
            p = d.left[li]
            if p.circ:
                candidates.append(((-1, 0, 0), "L"))
            else:
                need = [resolve(d.src[("L", li, k)]) for k in range(len(p.obj))]
                if all(w in live for w in need):
                    candidates.append(((-1, 0, 0), "L"))
        for b in pending_boxes:
            need = [d.src[("I", b, i)] for i in range(len(d.boxes[b].dom))]
            if all(w in live for w in need):
                pos = min((state.index(w) for w in need), default=0)
                candidates.append(((pos, 1, rank[b]), b))
        if ri < len(d.right):
            p = d.right[ri]
            if not p.circ:
                candidates.append(((len(state) + 1, 2, 0), "R"))
            else:
                need = [resolve(d.src[("R", ri, k)]) for k in range(len(p.obj))]
                if all(w in live for w in need):
                    candidates.append(((len(state) + 1, 2, 0), "R"))
        if not candidates and borrow is not None:
            if li < len(d.left) and not d.left[li].circ:
                targets, front = [("L", li, k) for k in range(len(d.left[li].obj))], True
            elif ri < len(d.right) and d.right[ri].circ:
                targets, front = [("R", ri, k) for k in range(len(d.right[ri].obj))], False
            else:
                targets = []
            missing = [d.src[t] for t in targets if resolve(d.src[t]) not in live]
            if missing:
                for w in missing:
                    lend(w, front)
                continue
        if not candidates:
            stuck = [f"box {d.boxes[b].label}" for b in sorted(pending_boxes)]
            if li < len(d.left):
                stuck.append(f"left {d.left[li]}")
            if ri < len(d.right):
                stuck.append(f"right {d.right[ri]}")
            raise CausalCycle(stuck)
        _, choice = min(candidates, key=lambda c: c[0])
        if choice == "L":
            p = d.left[li]
            wires = [("L", li, k) for k in range(len(p.obj))]
            if p.circ:
                sched.steps.append(Step("recv_left", (), word_of(state), p.obj, ("L", li)))
                state[0:0] = wires
                settle(wires)
            else:
                need = [resolve(d.src[w]) for w in wires]
                for j, w in enumerate(need):
                    move(w, j)
                del state[: len(need)]
                sched.steps.append(Step("send_left", (), word_of(state), p.obj, ("L", li)))
            sched.events.append(("L", li))
            li += 1
        elif choice == "R":
            p = d.right[ri]
            wires = [("R", ri, k) for k in range(len(p.obj))]
            if not p.circ:
                sched.steps.append(Step("recv_right", word_of(state), (), p.obj, ("R", ri)))
                state.extend(wires)
                settle(wires)
            else:
                need = [resolve(d.src[w]) for w in wires]
                for w in need:
                    move(w, len(state) - 1)
                del state[len(state) - len(need):]
                sched.steps.append(Step("send_right", word_of(state), (), p.obj, ("R", ri)))
            sched.events.append(("R", ri))
            ri += 1
        else:
            b = choice
            box = d.boxes[b]
            need = [d.src[("I", b, i)] for i in range(len(box.dom))]
            pos = min((state.index(w) for w in need), default=0)
            for j, w in enumerate(need):
                move(w, pos + j)
            prefix = word_of(state[:pos])
            suffix = word_of(state[pos + len(need):])
            sched.steps.append(Step("box", prefix, suffix, box, b))
            outs = [("O", b, j) for j in range(len(box.cod))]
            state[pos: pos + len(need)] = outs
            sched.events.append(("box", b))
            settle(outs)
            pending_boxes.discard(b)
    final = [d.src[("B", i)] for i in range(len(d.bottom))]
    for j, w in enumerate(final):
        move(w, j)
    return sched


def _base(name: str) -> str:
    return name[:-1] if name.endswith("*") else name


def schedule_morphism(sched: Schedule, dom: Word) -> MorphismTerm:
    """Compose the rows of a boundary-free schedule into a morphism term."""
    from .theory import seq_all

    terms = []
    for st in sched.steps:
        if st.kind == "braid":
            u, v = st.payload
            terms.append(padded(st.prefix, Braid(u, v), st.suffix))
        elif st.kind == "box":
            box = st.payload
            terms.append(padded(st.prefix, Generator(box.label, box.dom, box.cod), st.suffix))
        else:
            raise CorneringError("schedule has boundary events; not a vertical cell")
    return seq_all(terms, dom)


def diagram_morphism(d: Diagram) -> MorphismTerm:
    d = relabel(d, canonical_order(d))
    return schedule_morphism(schedule(d, list(range(len(d.boxes)))), d.top)


def polarity_sides(x: ExchangeType) -> list[PolarizedObject]:
    return list(x)
