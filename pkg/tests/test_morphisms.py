import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cornering import fixtures
from cornering.dsl import parse_morphism, parse_workspace
from cornering.errors import BoundaryMismatch
from cornering.generate import random_vertical
from cornering.morphisms import EqualityConfig, Verdict, morphisms_equal, normalize_morphism
from cornering.rewrite import eval_vertical

from oracles import MatrixModel, eval_symbolic

KNEADING = """theory K { objects dough, A; arrows knead: dough -> dough, f: A -> A;
  equations knead ; knead = knead; }"""


def m(text, theory):
    return parse_morphism(text, theory)


def test_two_loaves_are_equal():
    ws = fixtures.two_loaves()
    a, b = ws.cells["together"].morphism, ws.cells["one_by_one"].morphism
    assert morphisms_equal(a, b, ws.theory) is Verdict.EQUAL


def test_kneading_twice_is_not_kneading_once(baking):
    assert morphisms_equal(m("knead", baking), m("knead ; knead", baking), baking) is Verdict.NOT_EQUAL
    assert morphisms_equal(m("knead", baking), m("id(dough)", baking), baking) is Verdict.NOT_EQUAL


def test_imposed_equation_is_used():
    t = parse_workspace(KNEADING).theory
    assert morphisms_equal(m("knead ; knead ; knead", t), m("knead", t), t) is Verdict.EQUAL
    assert morphisms_equal(m("knead * f", t), m("(knead ; knead) * f", t), t) is Verdict.EQUAL


def test_equation_elsewhere_does_not_block_a_no():
    t = parse_workspace(KNEADING).theory
    assert morphisms_equal(m("f", t), m("f ; f", t), t) is Verdict.NOT_EQUAL


def test_unknown_when_the_search_cannot_finish():
    t = parse_workspace(KNEADING).theory
    # reversing the equation grows terms forever, so no is never certain
    assert morphisms_equal(m("knead", t), m("id(dough)", t), t) is Verdict.UNKNOWN


def test_unknown_for_equations_without_boxes():
    t = parse_workspace("theory S { objects A; arrows f: A -> A; equations sigma(A, A) = id(A * A); }").theory
    assert morphisms_equal(m("f", t), m("f ; f", t), t) is Verdict.UNKNOWN


def test_tiny_budget_gives_unknown():
    t = parse_workspace(KNEADING).theory
    cfg = EqualityConfig(max_steps=1, max_states=2)
    v = morphisms_equal(m("knead;knead;knead;knead;knead", t), m("knead ; f", t) if False else m("knead", t), t, cfg)
    assert v in (Verdict.EQUAL, Verdict.UNKNOWN)


def test_verdict_truthiness():
    assert Verdict.EQUAL and not Verdict.NOT_EQUAL and not Verdict.UNKNOWN
    assert str(Verdict.NOT_EQUAL) == "NotEqualStructurally"


def test_mismatched_types_raise(baking):
    with pytest.raises(BoundaryMismatch):
        morphisms_equal(m("knead", baking), m("mix", baking), baking)


def test_naturality_of_the_braiding(baking):
    lhs = m("knead * mix ; sigma(dough, dough)", baking)
    rhs = m("sigma(dough, water * flour) ; mix * knead", baking)
    assert morphisms_equal(lhs, rhs, baking) is Verdict.EQUAL


def test_braid_on_words_and_hexagon(baking):
    lhs = m("sigma(water * flour, oven)", baking)
    rhs = m("id(water) * sigma(flour, oven) ; sigma(water, oven) * id(flour)", baking)
    assert morphisms_equal(lhs, rhs, baking) is Verdict.EQUAL
    assert morphisms_equal(m("sigma(water, flour)", baking), m("sigma(water, flour) ; sigma(flour, water) ; sigma(water, flour)", baking), baking)


@given(st.integers(0, 10_000))
def test_normal_form_is_sound_and_idempotent(seed):
    t = fixtures.baking()
    f = eval_vertical(random_vertical(random.Random(seed), t, rows=5))
    n = normalize_morphism(f, t)
    assert normalize_morphism(n, t) == n
    assert morphisms_equal(f, n, t) is Verdict.EQUAL
    inputs = [("x", i) for i in range(len(f.dom))]
    assert eval_symbolic(f, inputs) == eval_symbolic(n, inputs)
    model = MatrixModel(t, seed)
    assert np.array_equal(model(f), model(n))


@given(st.integers(0, 10_000), st.integers(0, 10_000))
def test_equal_verdicts_agree_with_a_matrix_model(s1, s2):
    t = fixtures.baking()
    f = eval_vertical(random_vertical(random.Random(s1), t, rows=3))
    rng = random.Random(s2)
    g = eval_vertical(random_vertical(rng, t, rows=3))
    if (f.dom, f.cod) != (g.dom, g.cod):
        g = normalize_morphism(f, t)
    model = MatrixModel(t, s1 + s2)
    v = morphisms_equal(f, g, t)
    assert v is not Verdict.UNKNOWN
    if v is Verdict.EQUAL:
        assert np.array_equal(model(f), model(g))
    inputs = [("x", i) for i in range(len(f.dom))]
    assert (v is Verdict.EQUAL) == (eval_symbolic(f, inputs) == eval_symbolic(g, inputs))
