"""Command line front end.

Exit codes: 0 on success or Equal, 1 on NotEqual / no adapter / an
unbalanced ledger, 2 on errors, 3 when equality is Unknown.

Cells are named as ``FILE`` (the file's main cell, else its last row, else
its last cell) or ``FILE:NAME`` for a named cell or row.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import dsl
from .cells import Polarity
from .compact import balance_ledger, dualize_theory, reversal_iso
from .crossing import crossing
from .errors import CorneringError
from .exchange import adapter
from .morphisms import EqualityConfig, Verdict
from .render import export_diagram
from .rewrite import cells_equal, eval_vertical, rewrite_fixpoint, to_row_normal_form
from .serialize import cell_to_json, dumps, morphism_to_json, theory_to_json
from .simulate import compose_row, extract_trace, replay_concurrently

EXIT_OK, EXIT_NO, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2, 3


class Target:
    """A cell picked out of a workspace file."""

    def __init__(self, ref: str, mode: str = "exact"):
        path, _, name = ref.partition(":") if not Path(ref).exists() else (ref, "", "")
        self.workspace = dsl.load_workspace(path)
        self.theory = self.workspace.theory
        ws = self.workspace
        if name:
            if name in ws.rows:
                self.row = ws.row_cells(name)
                self.cell = compose_row(self.row, mode, self.theory)
            elif name in ws.cells:
                self.row, self.cell = None, ws.cells[name]
            else:
                raise CorneringError(f"{path} defines no cell or row named {name!r}")
        elif ws.main is None and ws.rows:
            self.row = ws.row_cells(list(ws.rows)[-1])
            self.cell = compose_row(self.row, mode, self.theory)
        else:
            self.row, self.cell = None, ws.target()


def _theory(path: str | None):
    return dsl.load_theory(path) if path else None


def _out(text: str, path: str | None = None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _verdict_code(v: Verdict) -> int:
    return {Verdict.EQUAL: EXIT_OK, Verdict.NOT_EQUAL: EXIT_NO}.get(v, EXIT_UNKNOWN)


# ------------------------------------------------------------------- verbs


def cmd_check(args) -> int:
    ws = dsl.load_workspace(args.file)
    if ws.theory is not None:
        t = ws.theory
        print(f"theory {t.name}: {len(t.objects)} objects, {len(t.arrows)} arrows, "
              f"{len(t.user_equations())} equations" + (", compact" if t.compact_closed else ""))
    for name, c in ws.cells.items():
        print(f"cell {name}: {c.boundary}")
    for name, cells in ws.rows.items():
        row = compose_row([ws.cells[c] for c in cells], args.mode, ws.theory)
        print(f"row {name}: {row.boundary}")
    if ws.main is not None:
        print(f"main: {ws.main.boundary}")
    return EXIT_OK


def cmd_normalize(args) -> int:
    t = Target(args.file)
    if args.rows:
        for row in to_row_normal_form(t.cell).rows:
            print(dsl.format_cell(row.cell(), args.ascii))
        return EXIT_OK
    trace: list[str] = []
    out = rewrite_fixpoint(t.cell, budget=args.budget, trace=trace)
    if args.trace:
        for line in trace:
            print(line)
    print(dsl.format_cell(out, args.ascii))
    return EXIT_OK


def cmd_equal(args) -> int:
    a, b = Target(args.first), Target(args.second)
    theory = _theory(args.theory) or a.theory or b.theory
    config = EqualityConfig(max_steps=args.depth)
    v = cells_equal(a.cell, b.cell, theory, config)
    print(v.value)
    return _verdict_code(v)


def cmd_eval(args) -> int:
    t = Target(args.file, args.mode)
    m = eval_vertical(t.cell)
    if args.json:
        _out(dumps(morphism_to_json(m)))
    else:
        print(dsl.format_morphism(m))
    return EXIT_OK


def cmd_cross(args) -> int:
    theory = _theory(args.theory)
    b = dsl.parse_word(args.wire, theory)
    x = dsl.parse_exchange(args.exchange, theory)
    print(dsl.format_cell(crossing(b, x), args.ascii))
    return EXIT_OK


def cmd_adapt(args) -> int:
    theory = _theory(args.theory)
    x = dsl.parse_exchange(args.source, theory)
    y = dsl.parse_exchange(args.target, theory)
    cell = adapter(x, y, theory)
    if cell is None:
        print("none")
        return EXIT_NO
    print(dsl.format_cell(cell, args.ascii))
    return EXIT_OK


def cmd_dualize(args) -> int:
    t = dualize_theory(dsl.load_theory(args.file, dualize=False))
    if args.json:
        _out(dumps(theory_to_json(t)))
    else:
        _out(dsl.format_theory(t, expanded=True))
    return EXIT_OK


def cmd_reversal(args) -> int:
    theory = dsl.load_theory(args.theory)
    pol = Polarity.BULLET if args.polarity in ("•", "^*", "bullet") else Polarity.CIRC
    (obj,) = dsl.parse_word(args.object, theory)
    forward, backward = reversal_iso(obj, theory, pol)
    print(f"forward:  {dsl.format_cell(forward, args.ascii)}")
    print(f"backward: {dsl.format_cell(backward, args.ascii)}")
    return EXIT_OK


def cmd_balance(args) -> int:
    t = Target(args.file, args.mode)
    theory = _theory(args.theory) or t.theory
    _, report = balance_ledger(eval_vertical(t.cell), theory)
    _out(dumps(report.to_json()))
    return EXIT_OK if report.balanced else EXIT_NO


def cmd_simulate(args) -> int:
    t = Target(args.file, args.mode)
    emit = [e.strip() for e in args.emit.split(",") if e.strip()]
    trace = extract_trace(t.cell)
    history = eval_vertical(t.cell) if not (t.cell.left or t.cell.right) else None
    if args.replay:
        log = replay_concurrently(t.cell, trace)
        if not trace.is_linear_extension(log):
            raise CorneringError("concurrent replay broke the causal order")
    for kind in emit:
        if kind == "trace":
            for line in trace.lines():
                print(line)
        elif kind == "json":
            doc = {"trace": trace.to_json()}
            if history is not None:
                doc["history"] = dsl.format_morphism(history)
                doc["history_term"] = morphism_to_json(history)
            _out(dumps(doc))
        elif kind == "dot":
            _out(export_diagram(t.cell, "dot"))
        else:
            raise CorneringError(f"unknown emit kind {kind!r}")
    return EXIT_OK


def cmd_render(args) -> int:
    t = Target(args.file)
    _out(export_diagram(t.cell, args.format), args.out)
    return EXIT_OK


def cmd_json(args) -> int:
    t = Target(args.file)
    _out(dumps(cell_to_json(t.cell)))
    return EXIT_OK


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cornering", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def verb(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        return p

    def ascii_flag(p):
        p.add_argument("--ascii", action="store_true", help="print ^o/^* instead of ∘/•")

    def mode_flag(p):
        p.add_argument("--mode", choices=["exact", "lemma"], default="exact",
                       help="lemma mode glues mismatched boundaries with adapters")

    p = verb("check", cmd_check, "type-check a workspace")
    p.add_argument("file")
    mode_flag(p)

    p = verb("normalize", cmd_normalize, "rewrite a cell with the built-in rules")
    p.add_argument("file")
    p.add_argument("--trace", action="store_true", help="print one line per rewrite step")
    p.add_argument("--rows", action="store_true", help="print the row normal form instead")
    p.add_argument("--budget", type=int, default=10_000)
    ascii_flag(p)

    p = verb("equal", cmd_equal, "decide whether two cells are equal")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--theory")
    p.add_argument("--depth", type=int, default=64, help="rewrite steps per search")

    p = verb("eval", cmd_eval, "material history of a vertical cell")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    mode_flag(p)

    p = verb("cross", cmd_cross, "the crossing of a wire over an exchange")
    p.add_argument("wire")
    p.add_argument("exchange")
    p.add_argument("--theory")
    ascii_flag(p)

    p = verb("adapt", cmd_adapt, "a cell between equivalent exchange types")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--theory")
    ascii_flag(p)

    p = verb("dualize", cmd_dualize, "adjoin duals to a compact theory")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")

    p = verb("reversal", cmd_reversal, "the isomorphism A∘ ≅ (A')• or A• ≅ (A')∘")
    p.add_argument("object")
    p.add_argument("--theory", required=True)
    p.add_argument("--polarity", default="∘", choices=["∘", "•", "^o", "^*", "circ", "bullet"])
    ascii_flag(p)

    p = verb("balance", cmd_balance, "cancel credit/debit pairs in a history")
    p.add_argument("file")
    p.add_argument("--theory")
    mode_flag(p)

    p = verb("simulate", cmd_simulate, "run a row as an exchange protocol")
    p.add_argument("file")
    mode_flag(p)
    p.add_argument("--emit", default="trace", help="comma separated: trace, json, dot")
    p.add_argument("--replay", action="store_true", help="also replay on threads and check the order")

    p = verb("render", cmd_render, "export a cell as a string diagram")
    p.add_argument("file")
    p.add_argument("--format", choices=["dot", "tikz"], default="dot")
    p.add_argument("--out")

    p = verb("json", cmd_json, "print a cell as JSON")
    p.add_argument("file")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (CorneringError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
