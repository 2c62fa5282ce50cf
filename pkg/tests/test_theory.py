import pytest

from cornering.errors import BoundaryMismatch, DuplicateName, IllTypedComposite, UndeclaredArrow, UndeclaredObject
from cornering.theory import (
    ArrowDecl,
    Braid,
    Generator,
    Identity,
    Seq,
    Tensor,
    TheoryPresentation,
    boundary,
    free_theory,
    padded,
    validate_theory,
)


def test_baking_fixture_declares_the_objects_and_arrows(baking):
    assert baking.objects == ("bread", "dough", "water", "flour", "oven")
    assert [a.name for a in baking.arrows] == ["mix", "knead", "bake"]
    assert baking.arrow("mix").dom == ("water", "flour")


def test_bake_produces_bread_and_an_oven(baking):
    # the displayed type in the source reads dough * oven; the prose wins
    assert baking.arrow("bake").cod == ("bread", "oven")


def test_duplicate_object_is_rejected():
    with pytest.raises(DuplicateName):
        validate_theory(TheoryPresentation("T", ["A", "A"]))


def test_arrow_name_clashing_with_object():
    with pytest.raises(DuplicateName):
        validate_theory(TheoryPresentation("T", ["A"], [ArrowDecl("A", ("A",), ("A",))]))


def test_arrow_over_undeclared_object():
    with pytest.raises(UndeclaredObject) as err:
        validate_theory(TheoryPresentation("T", ["A"], [ArrowDecl("f", ("A",), ("B",))]))
    assert err.value.name == "B"


def test_equation_sides_must_share_a_type():
    f = Generator("f", ("A",), ("B",))
    pres = TheoryPresentation("T", ["A", "B"], [ArrowDecl("f", ("A",), ("B",))], [(f, Identity(("A",)))])
    with pytest.raises(BoundaryMismatch) as err:
        validate_theory(pres)
    assert err.value.index == 0


def test_equation_with_unknown_arrow():
    g = Generator("g", ("A",), ("A",))
    with pytest.raises(UndeclaredArrow):
        validate_theory(TheoryPresentation("T", ["A"], [], [(g, g)]))


def test_seq_typechecks():
    f = Generator("f", ("A",), ("B",))
    with pytest.raises(IllTypedComposite):
        Seq(f, f)


def test_boundaries_of_composites():
    f = Generator("f", ("A",), ("B",))
    g = Generator("g", ("B", "C"), ())
    m = Seq(Tensor(f, Identity(("C",))), g)
    assert boundary(m) == (("A", "C"), ())
    assert boundary(Braid(("A", "B"), ("C",))) == (("A", "B", "C"), ("C", "A", "B"))
    assert boundary(padded(("X",), f, ("Y",))) == (("X", "A", "Y"), ("X", "B", "Y"))


def test_free_theory_has_no_arrows():
    t = free_theory("F", ["A", "B"])
    assert t.arrows == () and t.has_object("B") and not t.has_object("C")


def test_generator_must_match_its_declaration(baking):
    wrong = Generator("mix", ("water",), ("dough",))
    with pytest.raises(BoundaryMismatch):
        baking.check_term(wrong)
