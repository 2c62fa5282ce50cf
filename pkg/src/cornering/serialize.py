"""JSON forms of theories, morphisms, cells, traces and ledger reports.

Every node is an object with a ``kind`` field; words are lists of object
names, and polarized objects are ``{"obj": [...], "polarity": "∘" | "•"}``.
The schemas live in ``schemas/`` at the repository root.
"""

from __future__ import annotations

import json
from typing import Any

from .cells import (
    CellTerm,
    ExchangeType,
    HComp,
    HId,
    Lift,
    Polarity,
    PolarizedObject,
    RecvLeft,
    RecvRight,
    SendLeft,
    SendRight,
    VComp,
    VId,
)
from .compact import dualize_theory
from .theory import (
    ArrowDecl,
    Braid,
    Generator,
    Identity,
    MorphismTerm,
    Seq,
    Tensor,
    Theory,
    TheoryPresentation,
    validate_theory,
)

_CORNERS = {cls.keyword: cls for cls in (SendRight, RecvLeft, SendLeft, RecvRight)}


# ---------------------------------------------------------------- morphisms


def morphism_to_json(m: MorphismTerm) -> dict:
    if isinstance(m, Identity):
        return {"kind": "id", "obj": list(m.obj)}
    if isinstance(m, Generator):
        return {"kind": "gen", "name": m.name, "dom": list(m.dom), "cod": list(m.cod)}
    if isinstance(m, Braid):
        return {"kind": "braid", "left": list(m.left), "right": list(m.right)}
    if isinstance(m, Seq):
        return {"kind": "seq", "first": morphism_to_json(m.first), "second": morphism_to_json(m.second)}
    if isinstance(m, Tensor):
        return {"kind": "tensor", "left": morphism_to_json(m.left), "right": morphism_to_json(m.right)}
    raise TypeError(m)


def morphism_from_json(d: dict) -> MorphismTerm:
    kind = d["kind"]
    if kind == "id":
        return Identity(tuple(d["obj"]))
    if kind == "gen":
        return Generator(d["name"], tuple(d["dom"]), tuple(d["cod"]))
    if kind == "braid":
        return Braid(tuple(d["left"]), tuple(d["right"]))
    if kind == "seq":
        return Seq(morphism_from_json(d["first"]), morphism_from_json(d["second"]))
    if kind == "tensor":
        return Tensor(morphism_from_json(d["left"]), morphism_from_json(d["right"]))
    raise ValueError(f"unknown morphism kind {kind!r}")


# ------------------------------------------------------------------ exchanges


def exchange_to_json(x: ExchangeType) -> list:
    return [{"obj": list(p.obj), "polarity": p.polarity.value} for p in x]


def exchange_from_json(items: list) -> ExchangeType:
    return tuple(PolarizedObject(tuple(p["obj"]), Polarity(p["polarity"])) for p in items)


# ---------------------------------------------------------------------- cells


def cell_to_json(c: CellTerm) -> dict:
    if isinstance(c, HComp):
        return {"kind": "hcomp", "first": cell_to_json(c.first), "second": cell_to_json(c.second)}
    if isinstance(c, VComp):
        return {"kind": "vcomp", "first": cell_to_json(c.first), "second": cell_to_json(c.second)}
    if isinstance(c, Lift):
        return {"kind": "lift", "morphism": morphism_to_json(c.morphism)}
    if isinstance(c, VId):
        return {"kind": "vid", "obj": list(c.obj)}
    if isinstance(c, HId):
        return {"kind": "hid", "exchange": exchange_to_json(c.exchange)}
    return {"kind": c.keyword, "obj": list(c.obj)}


def cell_from_json(d: dict) -> CellTerm:
    kind = d["kind"]
    if kind == "hcomp":
        return HComp(cell_from_json(d["first"]), cell_from_json(d["second"]))
    if kind == "vcomp":
        return VComp(cell_from_json(d["first"]), cell_from_json(d["second"]))
    if kind == "lift":
        return Lift(morphism_from_json(d["morphism"]))
    if kind == "vid":
        return VId(tuple(d["obj"]))
    if kind == "hid":
        x = exchange_from_json(d["exchange"])
        return HId(x) if x else VId(())
    if kind in _CORNERS:
        return _CORNERS[kind](tuple(d["obj"]))
    raise ValueError(f"unknown cell kind {kind!r}")


# ------------------------------------------------------------------- theories


def theory_to_json(t: Theory) -> dict:
    """The presentation a theory was built from; duals are regenerated on load."""
    generated = {n for n, _ in t.units} | {n for n, _ in t.counits}
    return {
        "name": t.name,
        "objects": [o for o in t.objects[: _base_count(t)]],
        "arrows": [
            {"name": a.name, "dom": list(a.dom), "cod": list(a.cod)}
            for a in t.arrows
            if a.name not in generated
        ],
        "equations": [
            {"lhs": morphism_to_json(l), "rhs": morphism_to_json(r)} for l, r in t.user_equations()
        ],
        "compact_closed": t.compact_closed,
        "dualized": t.dualized,
    }


def _base_count(t: Theory) -> int:
    return len(t.objects) // 2 if t.dualized else len(t.objects)


def theory_from_json(d: dict) -> Theory:
    pres = TheoryPresentation(
        d["name"],
        list(d["objects"]),
        [ArrowDecl(a["name"], tuple(a["dom"]), tuple(a["cod"])) for a in d["arrows"]],
        [(morphism_from_json(e["lhs"]), morphism_from_json(e["rhs"])) for e in d.get("equations", [])],
        d.get("compact_closed", False),
    )
    t = validate_theory(pres)
    return dualize_theory(t) if d.get("dualized") else t


# ----------------------------------------------------------------------- text


def dumps(obj: Any) -> str:
    """Stable JSON text: sorted keys, two-space indent, Unicode kept."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
