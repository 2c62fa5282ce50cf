import json
import random
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from cornering import fixtures
from cornering.compact import balance_ledger
from cornering.generate import random_cell
from cornering.rewrite import eval_vertical
from cornering.serialize import (
    cell_from_json,
    cell_to_json,
    dumps,
    morphism_from_json,
    morphism_to_json,
    theory_from_json,
    theory_to_json,
)
from cornering.simulate import compose_row, extract_trace

SCHEMAS = Path(__file__).resolve().parents[1] / "schemas"


@pytest.fixture(scope="module")
def validators():
    docs = {p.name: json.loads(p.read_text()) for p in SCHEMAS.glob("*.schema.json")}
    registry = Registry().with_resources(
        (name, Resource.from_contents(doc)) for name, doc in docs.items()
    )
    out = {}
    for name, doc in docs.items():
        Draft202012Validator.check_schema(doc)
        out[name.split(".")[0]] = Draft202012Validator(doc, registry=registry)
    return out


def test_theories_round_trip(validators, baking):
    for t in (baking, fixtures.money_baking(), fixtures.two_loaves().theory):
        doc = theory_to_json(t)
        validators["theory"].validate(doc)
        assert theory_from_json(json.loads(dumps(doc))) == t


def test_theory_with_equations():
    from cornering.dsl import parse_workspace

    t = parse_workspace("theory K { objects d; arrows k: d -> d; equations k ; k = k; }").theory
    assert theory_from_json(theory_to_json(t)) == t


def test_dumps_is_stable(baking_row):
    c = baking_row.target()
    assert dumps(cell_to_json(c)) == dumps(cell_to_json(c))
    text = dumps({"b": "∘", "a": 1})
    assert text == '{\n  "a": 1,\n  "b": "∘"\n}\n'


@given(st.integers(0, 100_000))
def test_cells_round_trip(seed):
    t = fixtures.baking()
    c = random_cell(random.Random(seed), t)
    doc = cell_to_json(c)
    assert cell_from_json(json.loads(dumps(doc))) == c


def test_cells_and_morphisms_match_their_schemas(validators, baking_row):
    for c in [baking_row.target(), *baking_row.cells.values()]:
        validators["cell"].validate(cell_to_json(c))
    m = eval_vertical(baking_row.target())
    validators["morphism"].validate(morphism_to_json(m))
    assert morphism_from_json(morphism_to_json(m)) == m


def test_trace_and_ledger_match_their_schemas(validators, baking_row, money_row):
    row = compose_row(baking_row.row_cells("bakery"))
    validators["trace"].validate(extract_trace(row).to_json())
    _, report = balance_ledger(eval_vertical(money_row.target()), fixtures.money_baking())
    validators["ledger"].validate(report.to_json())


def test_unknown_kinds_are_rejected():
    with pytest.raises(ValueError):
        cell_from_json({"kind": "spiral"})
    with pytest.raises(ValueError):
        morphism_from_json({"kind": "spiral"})


def test_schema_rejects_a_bad_polarity(validators):
    bad = {"kind": "hid", "exchange": [{"obj": ["A"], "polarity": "x"}]}
    assert not validators["cell"].is_valid(bad)
