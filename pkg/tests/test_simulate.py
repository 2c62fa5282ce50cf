import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cornering import fixtures
from cornering.cells import Lift, Polarity, PolarizedObject, RecvLeft, RecvRight, SendLeft, SendRight, VId, hcomp, vcomp
from cornering.dsl import parse_morphism
from cornering.errors import BoundaryClash, CausalCycle, NotVertical
from cornering.generate import random_horizontal
from cornering.morphisms import Verdict, morphisms_equal
from cornering.rewrite import eval_vertical
from cornering.simulate import (
    BoundaryEvent,
    compose_row,
    describe_boundaries,
    extract_trace,
    participants,
    replay_concurrently,
    run,
)

from oracles import netlist_signature, symbolic_history

def circ(*o):
    return PolarizedObject(tuple(o), Polarity.CIRC)


def bullet(*o):
    return PolarizedObject(tuple(o), Polarity.BULLET)


EXPECTED_HISTORY = "id(water) * sigma(oven, flour) ; mix * id(oven) ; bake ; sigma(bread, oven)"
EXPECTED_TRACE = [
    "boundary=2 ordinal=0 obj=flour dir=<",
    "boundary=1 ordinal=0 obj=flour dir=<",
    "boundary=1 ordinal=1 obj=dough dir=>",
    "boundary=2 ordinal=1 obj=bread dir=>",
]


def bakery(ws):
    return ws.row_cells("bakery")


def test_baking_row_history_matches_the_wire_tracer(baking_row):
    row = compose_row(bakery(baking_row), "exact", baking_row.theory)
    expected = parse_morphism(EXPECTED_HISTORY, baking_row.theory)
    history, trace = run(row)
    assert (history.dom, history.cod) == (("water", "oven", "flour"), ("oven", "bread"))
    assert morphisms_equal(history, expected, baking_row.theory) is Verdict.EQUAL
    outputs, dangling = netlist_signature(row)
    assert outputs == symbolic_history(expected) and not dangling


def test_baking_row_trace(baking_row):
    row = compose_row(bakery(baking_row))
    trace = extract_trace(row)
    assert trace.lines() == EXPECTED_TRACE
    assert len(participants(row)) == 3
    assert describe_boundaries(row) == ["0: I", "1: flour• * dough∘", "2: flour• * bread∘", "3: I"]


def test_trace_agrees_with_the_boundary_types(baking_row):
    cells = bakery(baking_row)
    trace = extract_trace(compose_row(cells))
    for i in range(1, len(cells)):
        events = sorted(e for e in trace.events if e.boundary_index == i)
        x = cells[i - 1].right
        assert [(e.obj, e.direction) for e in events] == [(p.obj, ">" if p.circ else "<") for p in x]


def test_trace_order_facts(baking_row):
    trace = extract_trace(compose_row(bakery(baking_row)))
    flour2, flour1, dough, bread = trace.linearization
    assert trace.precedes(flour2, flour1)  # the baker passes the flour on
    assert trace.precedes(flour1, dough)  # the mixer needs it
    assert trace.precedes(dough, bread)
    assert not trace.precedes(bread, flour2)
    assert trace.is_linear_extension(trace.linearization)
    assert not trace.is_linear_extension(list(reversed(trace.linearization)))


def test_replay_extends_the_static_order(baking_row):
    row = compose_row(bakery(baking_row))
    trace = extract_trace(row)
    for _ in range(5):
        log = replay_concurrently(row, trace)
        assert trace.is_linear_extension(log)


def test_money_row_balances_its_boundaries(money_row):
    row = compose_row(money_row.row_cells("market"))
    history, trace = run(row)
    assert trace.is_linear_extension(replay_concurrently(row, trace))
    assert [e.obj for e in trace.linearization].count(("$1",)) == 3


def test_lift_has_an_empty_trace(baking):
    history, trace = run(Lift(baking.gen("knead")))
    assert history == baking.gen("knead")
    assert trace.events == [] and trace.lines() == []


def test_run_needs_a_closed_row():
    with pytest.raises(NotVertical):
        run(SendRight(("A",)))


def test_mismatched_row_clashes_in_exact_mode():
    ws = fixtures.lemma_row()
    with pytest.raises(BoundaryClash):
        compose_row(ws.row_cells("supper"), "exact", ws.theory)


def test_lemma_mode_glues_with_an_adapter():
    ws = fixtures.lemma_row()
    row = compose_row(ws.row_cells("supper"), "lemma", ws.theory)
    assert len(participants(row)) == 3
    history, trace = run(row)
    assert history == ws.theory.gen("mix")
    assert trace.is_linear_extension(replay_concurrently(row, trace))


def test_unknown_mode():
    with pytest.raises(ValueError):
        compose_row([VId(("A",))], "loose")


def test_deadlocked_pair_is_a_causal_cycle():
    # the left one waits for B before giving A; the right one waits for A first
    sigma = Lift(parse_morphism("sigma(A, B)"))
    left = vcomp(vcomp(hcomp(VId(("A",)), RecvRight(("B",))), sigma), hcomp(VId(("B",)), SendRight(("A",))))
    right = vcomp(vcomp(hcomp(RecvLeft(("A",)), VId(("B",))), sigma), hcomp(SendLeft(("B",)), VId(("A",))))
    assert left.right == (bullet("B"), circ("A")) and right.left == (circ("A"), bullet("B"))
    with pytest.raises(BoundaryClash):
        compose_row([left, right])
    with pytest.raises(CausalCycle) as info:
        extract_trace([left, right])
    assert "boundary=1" in str(info.value)


def test_event_json():
    e = BoundaryEvent(1, 0, ("flour",), "<")
    assert e.to_json() == {"boundary": 1, "ordinal": 0, "obj": ["flour"], "dir": "<"}


@given(st.integers(0, 100_000))
def test_random_horizontal_cells_have_acyclic_traces(seed):
    t = fixtures.baking()
    rng = random.Random(seed)
    c = random_horizontal(rng, t, rows=3)
    trace = extract_trace(c)
    assert trace.is_linear_extension(trace.linearization)
    for i, e in enumerate(trace.linearization):
        for f in trace.linearization[i + 1:]:
            assert not trace.precedes(f, e)
