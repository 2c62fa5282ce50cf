import numpy as np
import pytest

from cornering import fixtures
from cornering.cells import Polarity, PolarizedObject, hcomp, hid
from cornering.compact import (
    balance_ledger,
    dualize_theory,
    exchange_dual,
    h_counit,
    h_unit,
    reversal_iso,
    snake_sides,
    symmetry_inverse,
)
from cornering.errors import AlreadyDualized, RequiresCompactBase
from cornering.exchange import d_circ_bullet
from cornering.morphisms import Verdict
from cornering.rewrite import cells_equal, eval_vertical
from cornering.theory import dual_name

from oracles import MatrixModel, netlist_signature


def circ(*o):
    return PolarizedObject(tuple(o), Polarity.CIRC)


def bullet(*o):
    return PolarizedObject(tuple(o), Polarity.BULLET)


def wires(theory):
    return frozenset(n for n, _ in theory.units) | frozenset(n for n, _ in theory.counits)


def test_dualize_adds_duals_units_and_snakes():
    t = fixtures.money_baking()
    base = len(t.objects) // 2
    assert t.dualized
    for o in t.objects[:base]:
        assert dual_name(o) in t.objects
        assert t.gen(f"eta_{o}").cod == (o, dual_name(o))
        assert t.gen(f"eps_{o}").dom == (dual_name(o), o)
    assert len(t.equations) == 2 * base + len(t.user_equations())


def test_dualize_needs_a_compact_base(baking):
    with pytest.raises(RequiresCompactBase):
        dualize_theory(baking)
    with pytest.raises(AlreadyDualized):
        dualize_theory(fixtures.money_baking())


def test_snake_equations_hold_in_the_matrix_model():
    t = fixtures.money_baking()
    model = MatrixModel(t, seed=3)
    for lhs, rhs in t.equations:
        assert np.array_equal(model(lhs), model(rhs))


SNAKE_CASES = [(circ("flour"),), (bullet("flour"),), (), (circ("flour"), bullet("$1")), (bullet("water", "oven"),)]


@pytest.mark.parametrize("x", SNAKE_CASES, ids=["circ", "bullet", "unit", "mixed", "tensor"])
def test_snakes(x):
    t = fixtures.money_baking()
    assert h_unit(x, t).boundary.right == x + exchange_dual(x)
    assert h_counit(x, t).boundary.left == exchange_dual(x) + x
    for lhs, rhs in snake_sides(x, t):
        assert lhs.boundary == rhs.boundary
        assert cells_equal(lhs, rhs, t) is Verdict.EQUAL
        assert netlist_signature(lhs, wires(t)) == netlist_signature(rhs)


@pytest.mark.parametrize("pol", list(Polarity))
@pytest.mark.parametrize("obj", ["flour", "$1"])
def test_reversal_round_trips(obj, pol):
    t = fixtures.money_baking()
    forward, backward = reversal_iso(obj, t, pol)
    x = (PolarizedObject((obj,), pol),)
    assert forward.boundary.left == x
    assert forward.boundary.right == (PolarizedObject((dual_name(obj),), pol.flip()),)
    assert cells_equal(hcomp(forward, backward), hid(x), t) is Verdict.EQUAL
    assert cells_equal(hcomp(backward, forward), hid(forward.boundary.right), t) is Verdict.EQUAL
    assert netlist_signature(hcomp(forward, backward), wires(t)) == netlist_signature(hid(x))


def test_reversal_needs_duals(baking):
    with pytest.raises(RequiresCompactBase):
        reversal_iso("flour", baking)


@pytest.mark.parametrize("a,b", [(("flour",), ("$1",)), (("water", "oven"), ("bread",))])
def test_symmetry_inverse_inverts_the_one_way_reordering(a, b):
    t = fixtures.money_baking()
    d, s = d_circ_bullet(a, b), symmetry_inverse(a, b, t)
    assert s.boundary.left == d.boundary.right and s.boundary.right == d.boundary.left
    assert cells_equal(hcomp(d, s), hid(d.boundary.left), t) is Verdict.EQUAL
    assert cells_equal(hcomp(s, d), hid(s.boundary.left), t) is Verdict.EQUAL
    assert netlist_signature(hcomp(s, d), wires(t)) == netlist_signature(hid(s.boundary.left))


def test_symmetry_inverse_needs_duals(baking):
    with pytest.raises(Exception):
        symmetry_inverse(("flour",), ("water",), baking)


def test_debit_row_balances_with_one_cancelled_pair(money_row):
    t = fixtures.money_baking()
    history = eval_vertical(money_row.target())
    balanced, report = balance_ledger(history, t)
    assert report.balanced
    assert report.cancelled_pairs == [("eta_$1", "eps_$1")]
    model = MatrixModel(t, seed=5)
    assert np.array_equal(model(balanced), model(history))


def test_open_loan_is_reported():
    t = fixtures.money_baking()
    _, report = balance_ledger(t.gen("eta_$1"), t)
    assert not report.balanced
    assert report.residual_credits == ["$1"] and report.residual_debits == ["$1*"]
    assert report.to_json()["balanced"] is False


def test_snake_in_a_morphism_cancels():
    t = fixtures.money_baking()
    lhs, rhs = t.equations[0]
    straightened, report = balance_ledger(lhs, t)
    assert report.balanced and len(report.cancelled_pairs) == 1
    assert straightened == rhs or np.array_equal(MatrixModel(t)(straightened), MatrixModel(t)(rhs))
