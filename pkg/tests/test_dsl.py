import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cornering import fixtures
from cornering.cells import Polarity, PolarizedObject, RecvRight, SendLeft
from cornering.dsl import (
    format_cell,
    format_exchange,
    format_morphism,
    format_theory,
    format_word,
    load_workspace,
    parse_cell,
    parse_exchange,
    parse_morphism,
    parse_word,
    parse_workspace,
    tokenize,
)
from cornering.errors import (
    DslSyntaxError,
    EmptyWorkspace,
    HCompMismatch,
    UndeclaredArrow,
    UndeclaredObject,
    VCompMismatch,
)
from cornering.generate import random_cell
from cornering.theory import Braid, Identity, Seq, Tensor


def test_precedence_of_morphism_operators(baking):
    m = parse_morphism("mix * id(oven) ; bake", baking)
    assert isinstance(m, Seq) and isinstance(m.first, Tensor)
    assert parse_morphism("(mix * id(oven)) ; bake", baking) == m
    assert parse_morphism("mix ⊗ id(oven) ; bake", baking) == m


def test_precedence_of_cell_operators(baking):
    with pytest.raises(VCompMismatch):
        parse_cell("vid(water) | recv_right(flour) / lift(mix)", baking)
    c = parse_cell("(vid(water) | recv_right(flour)) / lift(mix)", baking)
    assert c.boundary.bottom == ("dough",)


def test_slash_binds_tighter_than_bar(baking):
    c = parse_cell("lift(knead) / lift(knead) | vid(oven)", baking)
    assert c.boundary.top == ("dough", "oven")


def test_exchange_marks():
    x = parse_exchange("A∘ * B• * C^o * D^*")
    assert [p.polarity for p in x] == [Polarity.CIRC, Polarity.BULLET, Polarity.CIRC, Polarity.BULLET]
    assert format_exchange(x) == "A∘ * B• * C∘ * D•"
    assert format_exchange(x, ascii=True) == "A^o * B^* * C^o * D^*"


def test_grouped_exchange_and_unit():
    x = parse_exchange("(A * B)∘ * I•")
    assert x == (PolarizedObject(("A", "B"), Polarity.CIRC), PolarizedObject((), Polarity.BULLET))


def test_dual_objects_use_an_apostrophe():
    t = fixtures.money_baking()
    assert parse_word("flour' * $1", t) == ("flour*", "$1")
    assert format_word(("flour*", "$1")) == "flour' * $1"
    assert format_morphism(t.gen("eta_$1")) == "eta_$1"


def test_dollar_in_identifiers():
    assert [tok.text for tok in tokenize("$1 * x")][:3] == ["$1", "*", "x"]


def test_comments_are_ignored(baking):
    assert parse_morphism("knead # kneads\n ; knead", baking) == parse_morphism("knead ; knead", baking)


def test_undeclared_names(baking):
    with pytest.raises(UndeclaredArrow):
        parse_morphism("fold", baking)
    with pytest.raises(UndeclaredObject):
        parse_word("butter", baking)
    with pytest.raises(UndeclaredObject):
        parse_workspace("theory T { objects A; arrows f: A -> B; }")


def test_syntax_errors_carry_a_location():
    with pytest.raises(DslSyntaxError) as info:
        parse_workspace("theory T { objects A; arrows f: A -> A; }\ncell x = lift(f ; ;);")
    assert (info.value.line, info.value.column) == (2, 17)
    assert str(info.value).startswith("2:")


def test_ill_typed_cells_carry_a_location():
    text = "theory T { objects A, B; arrows f: A -> A; }\ncell x = lift(f) | vid(B);\ncell y = lift(f) / vid(B);"
    with pytest.raises(VCompMismatch) as info:
        parse_workspace(text)
    assert "line 3" in str(info.value)
    with pytest.raises(HCompMismatch):
        parse_cell("send_right(A) | send_right(A)")


def test_empty_workspace():
    with pytest.raises(EmptyWorkspace):
        parse_workspace("# nothing here\n").target()


def test_workspace_statements(tmp_path, baking_row):
    assert set(baking_row.cells) == {"mixer", "baker", "customer"}
    assert baking_row.rows == {"bakery": ["mixer", "baker", "customer"]}
    (tmp_path / "t.theory").write_text("theory T { objects A; arrows f: A -> A; }\n")
    (tmp_path / "w.ws").write_text('use "t.theory";\ncell a = lift(f);\ncell b = a / a;\nlift(f) / vid(A)\n')
    ws = load_workspace(tmp_path / "w.ws")
    assert ws.theory.name == "T"
    assert ws.cells["b"].boundary.top == ("A",)
    assert ws.target() == ws.main


def test_use_cycles_are_harmless(tmp_path):
    (tmp_path / "a.ws").write_text('use "b.ws";\ntheory T { objects A; arrows f: A -> A; }\n')
    (tmp_path / "b.ws").write_text('use "a.ws";\n')
    assert load_workspace(tmp_path / "a.ws").theory.name == "T"


def test_compact_theories_are_dualized_on_load():
    t = fixtures.money_baking()
    assert t.dualized and "$1*" in t.objects
    text = format_theory(t)
    assert "compact;" in text and "eta_" not in text
    expanded = format_theory(t, expanded=True)
    assert "eta_$1" in expanded and "$1'" in expanded and "compact;" not in expanded


def test_theory_round_trip(baking):
    again = parse_workspace(format_theory(baking)).theory
    assert again == baking


def test_equations_round_trip():
    t = parse_workspace("theory K { objects d; arrows k: d -> d; equations k ; k = k; }").theory
    assert parse_workspace(format_theory(t)).theory == t


def test_corner_printing(baking):
    assert format_cell(RecvRight(("flour",))) == "recv_right(flour)"
    assert parse_cell(format_cell(SendLeft(("water", "oven"))), baking) == SendLeft(("water", "oven"))


morph_words = st.lists(st.sampled_from(["water", "flour", "oven"]), min_size=1, max_size=3).map(tuple)


@given(morph_words, morph_words)
def test_morphism_round_trip(u, v):
    m = Seq(Tensor(Identity(u), Braid(v, u)), Tensor(Identity(u), Identity(u + v)))
    assert parse_morphism(format_morphism(m)) == m


@given(st.integers(0, 100_000))
def test_cell_round_trip(seed):
    t = fixtures.baking()
    c = random_cell(random.Random(seed), t)
    text = format_cell(c)
    assert parse_cell(text, t) == c
    assert parse_cell(format_cell(c, ascii=True), t) == c
