"""Random well-typed cells, for property tests and benchmarks.

A random cell is a stack of rows over a running list of wires.  Each row
walks the wires left to right and replaces a few of them by a lifted arrow,
a braid or a bent-and-straightened corner pair; its ends may receive a new
wire from a side or send the outermost wire away.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .cells import (
    EMPTY,
    CellTerm,
    ExchangeType,
    Lift,
    RecvLeft,
    RecvRight,
    SendLeft,
    SendRight,
    VId,
    generator_count,
    hcomp,
    hcomp_all,
    vcomp,
)
from .theory import Braid, Generator, Theory, Word


@dataclass
class CellGenConfig:
    rows: int = 4
    max_width: int = 4
    left_corners: bool = True  # False keeps the left boundary as given
    right_corners: bool = True
    p_side: float = 0.35
    p_atom: float = 0.5
    p_yank: float = 0.15
    max_generators: int | None = None


def random_word(rng: random.Random, objects, n: int) -> Word:
    return tuple(rng.choice(objects) for _ in range(n))


def _objects(theory: Theory) -> list[str]:
    return [o for o in theory.objects if not o.endswith("*")] or list(theory.objects)


def _arrows(theory: Theory) -> list[Generator]:
    return [theory.gen(a.name) for a in theory.arrows]


def random_row(rng: random.Random, theory: Theory, state: Word, cfg: CellGenConfig):
    """One row over ``state``; returns (cell, new state)."""
    objects = _objects(theory)
    state = list(state)
    head: list[CellTerm] = []
    tail: list[CellTerm] = []
    out_front: list[str] = []
    out_back: list[str] = []
    if cfg.left_corners and rng.random() < cfg.p_side:
        if state and (len(state) >= cfg.max_width or rng.random() < 0.5):
            head.append(SendLeft((state.pop(0),)))
        else:
            a = rng.choice(objects)
            head.append(RecvLeft((a,)))
            out_front.append(a)
    if cfg.right_corners and rng.random() < cfg.p_side:
        if state and (len(state) >= cfg.max_width or rng.random() < 0.5):
            tail.append(SendRight((state.pop(),)))
        else:
            a = rng.choice(objects)
            tail.append(RecvRight((a,)))
            out_back.append(a)
    middle: list[CellTerm] = []
    produced: list[str] = []
    ids: list[str] = []

    def flush():
        if ids:
            middle.append(VId(tuple(ids)))
            produced.extend(ids)
            ids.clear()

    arrows = _arrows(theory)
    i = 0
    while i < len(state):
        roll = rng.random()
        if roll < cfg.p_atom:
            fits = [f for f in arrows if f.dom and tuple(state[i: i + len(f.dom)]) == f.dom]
            if fits:
                f = rng.choice(fits)
                flush()
                middle.append(Lift(f))
                produced.extend(f.cod)
                i += len(f.dom)
                continue
            if i + 1 < len(state) and rng.random() < 0.5:
                flush()
                u, v = (state[i],), (state[i + 1],)
                middle.append(Lift(Braid(u, v)))
                produced.extend(v + u)
                i += 2
                continue
        if roll > 1 - cfg.p_yank:
            flush()
            a = (state[i],)
            pair = hcomp(SendRight(a), RecvLeft(a)) if rng.random() < 0.5 else hcomp(RecvRight(a), SendLeft(a))
            middle.append(pair)
            produced.append(state[i])
            i += 1
            continue
        ids.append(state[i])
        i += 1
    flush()
    if not state and not head and not tail:
        # nothing to act on: make something out of nothing
        sources = [f for f in arrows if not f.dom]
        if sources and rng.random() < 0.5:
            f = rng.choice(sources)
            middle.append(Lift(f))
            produced.extend(f.cod)
        elif cfg.right_corners:
            a = rng.choice(objects)
            tail.append(RecvRight((a,)))
            out_back.append(a)
        elif cfg.left_corners:
            a = rng.choice(objects)
            head.append(RecvLeft((a,)))
            out_front.append(a)
    parts = head + middle + tail
    cell = hcomp_all(parts) if parts else EMPTY
    return cell, tuple(out_front + produced + out_back)


def absorb(left: ExchangeType, state: Word):
    """Rows taking in a prescribed left boundary, one factor per row.

    A ∘ factor is received; a • factor is sent from the first wires matching
    it, braided to the far left first.
    """
    rows = []
    state = tuple(state)
    for p in left:
        if p.circ:
            rows.append(hcomp(RecvLeft(p.obj), VId(state)) if state else RecvLeft(p.obj))
            state = p.obj + state
            continue
        k = len(p.obj)
        i = next((i for i in range(len(state) - k + 1) if state[i: i + k] == p.obj), None)
        if i is None:
            raise ValueError(f"no wires {p.obj} to send for a •-factor")
        if i:
            rows.append(hcomp(Lift(Braid(state[:i], p.obj)), VId(state[i + k:])) if state[i + k:]
                        else Lift(Braid(state[:i], p.obj)))
            state = p.obj + state[:i] + state[i + k:]
        rows.append(hcomp(SendLeft(p.obj), VId(state[k:])) if state[k:] else SendLeft(p.obj))
        state = state[k:]
    return rows, state


def needed(left: ExchangeType) -> Word:
    """The wires a cell must have on top to absorb ``left`` by :func:`absorb`."""
    return tuple(o for p in left if not p.circ for o in p.obj)


def supply(c: CellTerm, wires: Word) -> CellTerm:
    """Extend ``c`` downwards by receiving ``wires`` one by one from the right."""
    for o in wires:
        state = c.bottom
        row = hcomp(VId(state), RecvRight((o,))) if state else RecvRight((o,))
        c = vcomp(c, row)
    return c


def random_cell(
    rng: random.Random,
    theory: Theory,
    cfg: CellGenConfig | None = None,
    top: Word | None = None,
    left: ExchangeType | None = None,
) -> CellTerm:
    """A random cell with the given top (default random) and left boundary.

    ``left`` is taken in first (see :func:`absorb`); a given ``top`` must then
    contain the wires of its • factors.
    """
    cfg = cfg or CellGenConfig()
    objects = _objects(theory)
    if left is not None:
        cfg = CellGenConfig(**{**cfg.__dict__, "left_corners": False})
    if top is None:
        top = needed(left or ()) + random_word(rng, objects, rng.randint(1, min(3, cfg.max_width)))
    state = tuple(top)
    rows, state = absorb(left or (), state)
    count = sum(generator_count(r) for r in rows)
    for _ in range(cfg.rows):
        row, new_state = random_row(rng, theory, state, cfg)
        n = generator_count(row)
        if cfg.max_generators is not None and count + n > cfg.max_generators:
            break
        rows.append(row)
        count += n
        state = new_state
    if not rows:
        return VId(tuple(top)) if top else EMPTY
    return _bracket(rng, rows)


def _bracket(rng: random.Random, rows: list[CellTerm]) -> CellTerm:
    """Vertical composite with a random bracketing."""
    if len(rows) == 1:
        return rows[0]
    k = rng.randint(1, len(rows) - 1)
    return vcomp(_bracket(rng, rows[:k]), _bracket(rng, rows[k:]))


def random_vertical(rng: random.Random, theory: Theory, rows: int = 4, **kw) -> CellTerm:
    return random_cell(rng, theory, CellGenConfig(rows=rows, left_corners=False, right_corners=False, **kw))


def random_horizontal(rng: random.Random, theory: Theory, rows: int = 3) -> CellTerm:
    """A cell with empty top and bottom: wires come in and leave by the sides."""
    cfg = CellGenConfig(rows=rows, p_atom=0.6)
    c = random_cell(rng, theory, cfg, top=())
    state = c.bottom
    while state:
        if rng.random() < 0.5:
            row = hcomp(VId(state[:-1]), SendRight(state[-1:])) if len(state) > 1 else SendRight(state)
            state = state[:-1]
        else:
            row = hcomp(SendLeft(state[:1]), VId(state[1:])) if len(state) > 1 else SendLeft(state)
            state = state[1:]
        c = vcomp(c, row)
    return c


def random_square(rng: random.Random, theory: Theory, rows: int = 2):
    """Four cells ``a, b, c, d`` pasting as ``a`` over ``b`` beside ``c`` over ``d``."""
    cfg = CellGenConfig(rows=rows)
    a = random_cell(rng, theory, cfg)
    b = random_cell(rng, theory, cfg, top=a.bottom)
    c = random_cell(rng, theory, cfg, left=a.right)
    c = supply(c, needed(b.right))
    d = random_cell(rng, theory, cfg, top=c.bottom, left=b.right)
    return a, b, c, d
