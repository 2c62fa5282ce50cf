"""Rows of cells read as concurrent participants exchanging resources.

Each top-level horizontal factor of a cell is one participant, and the
boundary between participants ``i-1`` and ``i`` carries the messages of
its exchange type, in order.  The trace is a static reading of the cell:

* on either side of a boundary, the messages happen in the order of that
  side's exchange type;
* inside a participant, a send waits for every receive whose resource
  flows into it.

The linearization sorts events by (longest-path rank, boundary, ordinal).
"""

from __future__ import annotations

import queue
import threading
from dataclasses import dataclass, field
from typing import Sequence

from .cells import CellTerm, HComp, ExchangeType, hcomp_all, show_exchange
from .errors import BoundaryClash, CausalCycle, NotVertical
from .exchange import adapter
from .rewrite import eval_vertical
from .theory import MorphismTerm, Theory, Word, show_word
from .wiring import cell_diagram

RIGHTWARD = ">"  # ∘: the left participant gives to the right one
LEFTWARD = "<"  # •: the right participant gives to the left one


def compose_row(
    cells: Sequence[CellTerm],
    mode: str = "exact",
    order: Theory | Sequence[str] | None = None,
) -> CellTerm:
    """Horizontal composite of ``cells``; ``lemma`` mode inserts adapters."""
    if mode not in ("exact", "lemma"):
        raise ValueError(f"unknown mode {mode!r}")
    cells = list(cells)
    out = []
    for i, c in enumerate(cells):
        if i:
            left_t, right_t = cells[i - 1].right, c.left
            if left_t != right_t:
                glue = adapter(left_t, right_t, order) if mode == "lemma" else None
                if glue is None:
                    raise BoundaryClash(i, left_t, right_t)
                out.append(glue)
        out.append(c)
    return hcomp_all(out)


def participants(c: CellTerm) -> list[CellTerm]:
    if isinstance(c, HComp):
        return participants(c.first) + participants(c.second)
    return [c]


@dataclass(frozen=True, order=True)
class BoundaryEvent:
    boundary_index: int
    ordinal: int
    obj: Word
    direction: str

    def line(self) -> str:
        return f"boundary={self.boundary_index} ordinal={self.ordinal} obj={show_word(self.obj)} dir={self.direction}"

    def to_json(self) -> dict:
        return {
            "boundary": self.boundary_index,
            "ordinal": self.ordinal,
            "obj": list(self.obj),
            "dir": self.direction,
        }


@dataclass
class CausalTrace:
    events: list[BoundaryEvent] = field(default_factory=list)
    order: set[tuple[BoundaryEvent, BoundaryEvent]] = field(default_factory=set)
    linearization: list[BoundaryEvent] = field(default_factory=list)

    def lines(self) -> list[str]:
        return [e.line() for e in self.linearization]

    def precedes(self, a: BoundaryEvent, b: BoundaryEvent) -> bool:
        """Whether ``a`` must happen before ``b`` (transitively)."""
        succ = {}
        for x, y in self.order:
            succ.setdefault(x, []).append(y)
        stack, seen = [a], set()
        while stack:
            x = stack.pop()
            for y in succ.get(x, []):
                if y == b:
                    return True
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return False

    def is_linear_extension(self, seq: Sequence[BoundaryEvent]) -> bool:
        pos = {e: i for i, e in enumerate(seq)}
        if set(pos) != set(self.events) or len(seq) != len(self.events):
            return False
        return all(pos[a] < pos[b] for a, b in self.order)

    def to_json(self) -> dict:
        index = {e: i for i, e in enumerate(self.linearization)}
        return {
            "events": [e.to_json() for e in self.linearization],
            "order": sorted([index[a], index[b]] for a, b in self.order),
        }


# ------------------------------------------------------------------ analysis


def _side_messages(x: ExchangeType):
    """Per factor: (message key, ordinal, obj, direction)."""
    counts = {RIGHTWARD: 0, LEFTWARD: 0}
    out = []
    for j, p in enumerate(x):
        d = RIGHTWARD if p.circ else LEFTWARD
        out.append(((d, counts[d]), j, p.obj, d))
        counts[d] += 1
    return out


def _flows(part: CellTerm) -> list[tuple[tuple, tuple]]:
    """(receive factor, send factor) pairs joined by a resource path."""
    d = cell_diagram(part)
    memo: dict[int, frozenset] = {}

    def origins(source) -> frozenset:
        if source[0] in ("L", "R"):
            return frozenset([(source[0], source[1])])
        if source[0] == "O":
            b = source[1]
            if b not in memo:
                memo[b] = frozenset()
                acc = set()
                for i in range(len(d.boxes[b].dom)):
                    acc |= origins(d.src[("I", b, i)])
                memo[b] = frozenset(acc)
            return memo[b]
        return frozenset()

    out = []
    for side, x in (("L", d.left), ("R", d.right)):
        for i, p in enumerate(x):
            sends = (not p.circ) if side == "L" else p.circ
            if not sends:
                continue
            for k in range(len(p.obj)):
                for origin in origins(d.src[(side, i, k)]):
                    out.append((origin, (side, i)))
    return out


def extract_trace(c: CellTerm | Sequence[CellTerm]) -> CausalTrace:
    """Events and causal order of a row.

    ``c`` is either a composite cell or a raw list of participants; a raw
    list is not type-checked at the shared boundaries, which is how a
    mismatched (and deadlocking) pair can be analysed at all.
    """
    parts = list(c) if isinstance(c, (list, tuple)) else participants(c)
    # message node: (boundary, direction, k)
    info: dict[tuple, BoundaryEvent] = {}
    edges: set[tuple] = set()
    factor_node: dict[tuple, tuple] = {}  # (participant, side, factor) -> node

    def register(boundary, x, participant, side, authoritative):
        prev = None
        for key, j, obj, d in _side_messages(x):
            node = (boundary,) + key
            event = BoundaryEvent(boundary, j, obj, d)
            if authoritative:
                info[node] = event
            else:
                info.setdefault(node, event)
            factor_node[(participant, side, j)] = node
            if prev is not None:
                edges.add((prev, node))
            prev = node

    for p, part in enumerate(parts):
        # boundary p is on this participant's left, p+1 on its right; the
        # left participant's view of a shared boundary names its events
        register(p, part.left, p, "L", authoritative=(p == 0))
        register(p + 1, part.right, p, "R", authoritative=True)
        for (s_side, s_i), (t_side, t_i) in _flows(part):
            edges.add((factor_node[(p, s_side, s_i)], factor_node[(p, t_side, t_i)]))

    nodes = sorted(info)
    succ = {v: set() for v in nodes}
    for a, b in edges:
        succ[a].add(b)
    rank = _ranks(nodes, succ, info)
    events = [info[v] for v in nodes]
    order = {(info[a], info[b]) for a, b in edges}
    lin = sorted(nodes, key=lambda v: (rank[v], info[v].boundary_index, info[v].ordinal))
    return CausalTrace(events, order, [info[v] for v in lin])


def _ranks(nodes, succ, info) -> dict:
    indeg = {v: 0 for v in nodes}
    for v in nodes:
        for w in succ[v]:
            indeg[w] += 1
    rank = {v: 0 for v in nodes}
    ready = [v for v in nodes if indeg[v] == 0]
    done = 0
    while ready:
        v = ready.pop()
        done += 1
        for w in succ[v]:
            rank[w] = max(rank[w], rank[v] + 1)
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    if done != len(nodes):
        raise CausalCycle([info[v].line() for v in _find_cycle(nodes, succ, indeg)])
    return rank


def _find_cycle(nodes, succ, indeg):
    remaining = {v for v in nodes if indeg[v] > 0}
    start = min(remaining)
    path, seen = [start], {start: 0}
    cur = start
    while True:
        cur = min(w for w in succ[cur] if w in remaining)
        if cur in seen:
            return path[seen[cur]:] + [cur]
        seen[cur] = len(path)
        path.append(cur)


def run(c: CellTerm) -> tuple[MorphismTerm, CausalTrace]:
    """The material history of a closed row together with its event trace."""
    if c.left or c.right:
        raise NotVertical(c.boundary)
    trace = extract_trace(c)
    return eval_vertical(c), trace


# -------------------------------------------------------------- concurrent demo


def replay_concurrently(c: CellTerm, trace: CausalTrace | None = None, timeout: float = 5.0):
    """Replay the trace on one thread per participant over ordered channels.

    Every boundary has one FIFO channel per direction.  Each worker performs
    its own sends and receives in the order the linearization gives them;
    the environment beyond the outer boundaries is played by two extra
    workers.  Returns the events in the order their receives completed.
    """
    trace = trace if trace is not None else extract_trace(c)
    n = len(participants(c))
    channels = {
        (b, d): queue.Queue() for b in range(n + 1) for d in (RIGHTWARD, LEFTWARD)
    }
    log: list[BoundaryEvent] = []
    lock = threading.Lock()
    errors: list[BaseException] = []

    def owner(e: BoundaryEvent, sending: bool) -> int:
        # participant index; -1 and n are the environment
        left_of = e.boundary_index - 1
        right_of = e.boundary_index
        if e.direction == RIGHTWARD:
            return left_of if sending else right_of
        return right_of if sending else left_of

    plans: dict[int, list] = {p: [] for p in range(-1, n + 1)}
    for e in trace.linearization:
        plans[owner(e, True)].append(("send", e))
        plans[owner(e, False)].append(("recv", e))

    def worker(p):
        try:
            for action, e in plans[p]:
                ch = channels[(e.boundary_index, e.direction)]
                if action == "send":
                    ch.put(e)
                else:
                    got = ch.get(timeout=timeout)
                    if got != e:
                        raise RuntimeError(f"participant {p} expected {e.line()} got {got.line()}")
                    with lock:
                        log.append(e)
        except BaseException as exc:  # reported to the caller
            errors.append(exc)

    threads = [threading.Thread(target=worker, args=(p,), daemon=True) for p in plans]
    for t in threads:
        t.start()
    for t in threads:
        t.join(timeout * 4)
    if errors:
        raise errors[0]
    return log


def describe_boundaries(c: CellTerm) -> list[str]:
    parts = participants(c)
    types = [parts[0].left] + [p.right for p in parts]
    return [f"{i}: {show_exchange(x)}" for i, x in enumerate(types)]
