"""Text syntax for theories, morphisms, exchange types, cells and workspaces.

    theory Baking {
      objects bread, dough, water, flour, oven;
      arrows mix: water * flour -> dough, knead: dough -> dough,
             bake: dough * oven -> bread * oven;
      equations knead ; knead = knead;      # optional
      compact;                              # optional
    }
    use "baking.theory";
    cell mixer = (vid(water) | recv_right(flour)) / lift(mix) / send_right(dough);
    row bakery = mixer, baker, trader;

Morphisms use ``;`` (loosest), ``*`` or ``⊗``, ``id(W)``, ``sigma(U, V)``
and arrow names.  Cells use ``|`` and ``/`` (tighter), the four corners,
``lift(m)``, ``vid(W)``, ``hid(X)`` and names of earlier cells.  Exchange
types mark polarity with ``∘``/``•`` or ``^o``/``^*``.  The dual of an
object ``A`` is written ``A'``.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

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
    hcomp,
    vcomp,
)
from .compact import dualize_theory
from .errors import CorneringError, DslSyntaxError, EmptyWorkspace, UndeclaredObject
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
    Word,
    dual_name,
    validate_theory,
)

CORNER_KEYWORDS = {
    "send_right": SendRight,
    "recv_left": RecvLeft,
    "send_left": SendLeft,
    "recv_right": RecvRight,
}

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+|\#[^\n]*)
  | (?P<nl>\n)
  | (?P<string>"[^"\n]*")
  | (?P<circ>∘|\^o)
  | (?P<bullet>•|\^\*)
  | (?P<arrow>->|→)
  | (?P<ident>[A-Za-z_$][A-Za-z0-9_$]*'*)
  | (?P<op>[(){},;:=|/*⊗])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise DslSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind != "ws":
                if kind == "op" and value == "⊗":
                    value = "*"
                if kind == "arrow":
                    value = "->"
                tokens.append(Token(kind, value, line, col))
            col += len(value)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


def _object_name(token_text: str) -> str:
    base = token_text.rstrip("'")
    name = base
    for _ in range(len(token_text) - len(base)):
        name = dual_name(name)
    return name


class Parser:
    def __init__(self, text: str, theory: Theory | None = None, cells: dict | None = None):
        self.tokens = tokenize(text)
        self.i = 0
        self.theory = theory
        self.cells = cells if cells is not None else {}

    # -------------------------------------------------------------- helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        return DslSyntaxError(message, tok.line, tok.column)

    def at(self, text: str) -> bool:
        return self.tok.kind in ("op", "ident", "arrow") and self.tok.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        tok = self.tok
        self.i += 1
        return tok

    def ident(self, what: str = "identifier") -> Token:
        if self.tok.kind != "ident":
            found = self.tok.text or "end of input"
            raise self.error(f"expected {what}, found {found!r}")
        tok = self.tok
        self.i += 1
        return tok

    def at_end(self) -> bool:
        return self.tok.kind == "eof"

    def check_object(self, name: str, tok: Token) -> str:
        if self.theory is not None and not self.theory.has_object(name):
            raise UndeclaredObject(name, f"line {tok.line}, column {tok.column}")
        return name

    # ---------------------------------------------------------------- words
    def word(self) -> Word:
        if self.accept("I"):
            return ()
        out = [self.object_name()]
        while self.at("*"):
            self.i += 1
            out.append(self.object_name())
        return tuple(out)

    def object_name(self) -> str:
        tok = self.ident("object name")
        if tok.text == "I":
            raise self.error("I cannot appear inside a non-empty word", tok)
        return self.check_object(_object_name(tok.text), tok)

    # ------------------------------------------------------------ exchanges
    def mark(self) -> Polarity:
        if self.tok.kind == "circ":
            self.i += 1
            return Polarity.CIRC
        if self.tok.kind == "bullet":
            self.i += 1
            return Polarity.BULLET
        raise self.error("expected a polarity mark (∘, •, ^o or ^*)")

    def exchange(self) -> ExchangeType:
        if self.at("I") and self.tokens[self.i + 1].kind not in ("circ", "bullet"):
            self.i += 1
            return ()
        out = [self.polarized()]
        while self.accept("*"):
            out.append(self.polarized())
        return tuple(out)

    def polarized(self) -> PolarizedObject:
        if self.accept("("):
            w = self.word()
            self.expect(")")
        elif self.accept("I"):
            w = ()
        else:
            w = (self.object_name(),)
        return PolarizedObject(w, self.mark())

    # ------------------------------------------------------------ morphisms
    def morphism(self) -> MorphismTerm:
        out = self.mtensor()
        while self.at(";") and self._continues_morphism():
            tok = self.tok
            self.i += 1
            out = self._compose(Seq, out, self.mtensor(), tok)
        return out

    def _continues_morphism(self) -> bool:
        # a ";" ends a statement unless a morphism atom follows
        nxt = self.tokens[self.i + 1]
        if nxt.kind == "ident":
            return nxt.text not in _STATEMENT_KEYWORDS and nxt.text != "}"
        return nxt.kind == "op" and nxt.text == "("

    def mtensor(self) -> MorphismTerm:
        out = self.matom()
        while self.at("*"):
            tok = self.tok
            self.i += 1
            out = self._compose(Tensor, out, self.matom(), tok)
        return out

    def matom(self) -> MorphismTerm:
        if self.accept("("):
            m = self.morphism()
            self.expect(")")
            return m
        tok = self.ident("morphism")
        if tok.text == "id":
            self.expect("(")
            w = self.word()
            self.expect(")")
            return Identity(w)
        if tok.text == "sigma":
            self.expect("(")
            u = self.word()
            self.expect(",")
            v = self.word()
            self.expect(")")
            return Braid(u, v)
        if self.theory is None:
            raise CorneringError(f"arrow {tok.text!r} used without a theory (line {tok.line})")
        return self.theory.gen(tok.text)

    # ---------------------------------------------------------------- cells
    def cell(self) -> CellTerm:
        out = self.vterm()
        while self.at("|"):
            tok = self.tok
            self.i += 1
            rhs = self.vterm()
            out = self._compose(hcomp, out, rhs, tok)
        return out

    def vterm(self) -> CellTerm:
        out = self.catom()
        while self.at("/"):
            tok = self.tok
            self.i += 1
            rhs = self.catom()
            out = self._compose(vcomp, out, rhs, tok)
        return out

    def _compose(self, fn, a, b, tok):
        try:
            return fn(a, b)
        except CorneringError as exc:
            raise _located(exc, tok) from None

    def catom(self) -> CellTerm:
        if self.accept("("):
            c = self.cell()
            self.expect(")")
            return c
        tok = self.ident("cell")
        name = tok.text
        if name in CORNER_KEYWORDS:
            self.expect("(")
            w = self.word()
            self.expect(")")
            return CORNER_KEYWORDS[name](w)
        if name == "lift":
            self.expect("(")
            m = self.morphism()
            self.expect(")")
            return Lift(m)
        if name == "vid":
            self.expect("(")
            w = self.word()
            self.expect(")")
            return VId(w)
        if name == "hid":
            self.expect("(")
            x = self.exchange()
            self.expect(")")
            return HId(x) if x else VId(())
        if name in self.cells:
            return self.cells[name]
        raise self.error(f"unknown cell {name!r}", tok)


def _located(exc: CorneringError, tok: Token) -> CorneringError:
    exc.args = (f"{exc.args[0] if exc.args else exc} (line {tok.line}, column {tok.column})",)
    return exc


# words that end a morphism after ";" (cell keywords are reserved too)
_STATEMENT_KEYWORDS = {
    "theory", "cell", "row", "use", "objects", "arrows", "equations", "compact",
    "lift", "vid", "hid", *CORNER_KEYWORDS,
}


# ---------------------------------------------------------------- workspaces


@dataclass
class Workspace:
    theory: Theory | None = None
    cells: dict[str, CellTerm] = field(default_factory=dict)
    rows: dict[str, list[str]] = field(default_factory=dict)
    main: CellTerm | None = None
    sources: list[str] = field(default_factory=list)

    def row_cells(self, name: str) -> list[CellTerm]:
        return [self.cells[c] for c in self.rows[name]]

    def target(self) -> CellTerm:
        """The cell a command acts on: the bare expression, else the last row
        composed exactly, else the last named cell."""
        from .simulate import compose_row

        if self.main is not None:
            return self.main
        if self.rows:
            return compose_row(self.row_cells(list(self.rows)[-1]))
        if self.cells:
            return list(self.cells.values())[-1]
        raise EmptyWorkspace("the workspace defines no cell")


def parse_theory_block(p: Parser, dualize: bool = True) -> Theory:
    p.expect("theory")
    name = p.ident("theory name").text
    p.expect("{")
    pres = TheoryPresentation(name)
    pending_equations = []
    while not p.accept("}"):
        kw = p.ident("objects, arrows, equations or compact")
        if kw.text == "objects":
            pres.object_generators.append(_object_name(p.ident("object name").text))
            while p.accept(","):
                pres.object_generators.append(_object_name(p.ident("object name").text))
        elif kw.text == "arrows":
            # objects are checked by validate_theory, not while parsing
            while True:
                aname = p.ident("arrow name").text
                p.expect(":")
                saved, p.theory = p.theory, None
                dom = p.word()
                p.expect("->")
                cod = p.word()
                p.theory = saved
                pres.arrow_generators.append(ArrowDecl(aname, dom, cod))
                if not p.accept(","):
                    break
        elif kw.text == "equations":
            start = p.i
            depth = 0
            # equations refer to arrows, so they are parsed once all are known
            while not (depth == 0 and p.at(";") and not _morphism_follows(p)):
                if p.at_end():
                    raise p.error("unterminated equations")
                if p.at("("):
                    depth += 1
                elif p.at(")"):
                    depth -= 1
                p.i += 1
            pending_equations.append((start, p.i))
        elif kw.text == "compact":
            pres.compact_closed = True
        else:
            raise p.error(f"unexpected {kw.text!r} in theory block", kw)
        p.expect(";")
    base = validate_theory(TheoryPresentation(name, pres.object_generators, pres.arrow_generators, [], pres.compact_closed))
    saved = p.theory
    p.theory = base
    end = p.i
    for start, stop in pending_equations:
        p.i = start
        while p.i < stop:
            lhs = p.morphism()
            p.expect("=")
            rhs = p.morphism()
            pres.equations.append((lhs, rhs))
            if p.i < stop:
                p.expect(",")
    p.i = end
    p.theory = saved
    theory = validate_theory(pres)
    if dualize and theory.compact_closed:
        theory = dualize_theory(theory)
    return theory


def _morphism_follows(p: Parser) -> bool:
    return p._continues_morphism()


def parse_workspace(text: str, base_dir: str | Path | None = None, source: str | None = None,
                    theory: Theory | None = None, dualize: bool = True) -> Workspace:
    """Parse a workspace; compact theories are dualized unless ``dualize`` is off."""
    ws = Workspace(theory=theory)
    if source:
        ws.sources.append(str(source))
    _parse_into(ws, text, Path(base_dir) if base_dir else Path.cwd(), set(), dualize)
    if ws.theory is None and not ws.cells and ws.main is None and not ws.rows:
        raise EmptyWorkspace("nothing to do: the workspace is empty")
    return ws


def _parse_into(ws: Workspace, text: str, base: Path, seen: set, dualize: bool = True) -> None:
    p = Parser(text, ws.theory, ws.cells)
    while not p.at_end():
        if p.accept(";"):
            continue
        if p.at("theory"):
            ws.theory = parse_theory_block(p, dualize)
            p.theory = ws.theory
            continue
        if p.accept("use"):
            tok = p.tok
            if tok.kind != "string":
                raise p.error("expected a quoted file name after use")
            p.i += 1
            path = (base / tok.text[1:-1]).resolve()
            if path not in seen:
                seen.add(path)
                ws.sources.append(str(path))
                _parse_into(ws, path.read_text(encoding="utf-8"), path.parent, seen, dualize)
                p.theory = ws.theory
            p.expect(";")
            continue
        if p.accept("cell"):
            name = p.ident("cell name").text
            p.expect("=")
            ws.cells[name] = p.cell()
            p.expect(";")
            continue
        if p.accept("row"):
            name = p.ident("row name").text
            p.expect("=")
            names = [p.ident("cell name")]
            while p.accept(","):
                names.append(p.ident("cell name"))
            for tok in names:
                if tok.text not in ws.cells:
                    raise p.error(f"unknown cell {tok.text!r}", tok)
            ws.rows[name] = [t.text for t in names]
            p.expect(";")
            continue
        ws.main = p.cell()
        if not p.at_end():
            p.expect(";")


def load_workspace(path: str | Path, theory: Theory | None = None, dualize: bool = True) -> Workspace:
    path = Path(path)
    return parse_workspace(path.read_text(encoding="utf-8"), path.parent, str(path), theory, dualize)


def load_theory(path: str | Path, dualize: bool = True) -> Theory:
    ws = load_workspace(path, dualize=dualize)
    if ws.theory is None:
        raise CorneringError(f"{path} declares no theory")
    return ws.theory


# ----------------------------------------------------------------- parsing API


def parse_word(text: str, theory: Theory | None = None) -> Word:
    return _whole(Parser(text, theory), Parser.word)


def parse_exchange(text: str, theory: Theory | None = None) -> ExchangeType:
    return _whole(Parser(text, theory), Parser.exchange)


def parse_morphism(text: str, theory: Theory | None = None) -> MorphismTerm:
    return _whole(Parser(text, theory), Parser.morphism)


def parse_cell(text: str, theory: Theory | None = None, cells: dict | None = None) -> CellTerm:
    return _whole(Parser(text, theory, cells), Parser.cell)


def _whole(p: Parser, rule):
    out = rule(p)
    p.accept(";")
    if not p.at_end():
        raise p.error(f"unexpected {p.tok.text!r}")
    return out


# ------------------------------------------------------------------- printing


def format_name(name: str) -> str:
    return name[:-1] + "'" if name.endswith("*") else name


def format_word(w: Word) -> str:
    return " * ".join(format_name(o) for o in w) if w else "I"


def format_polarized(p: PolarizedObject, ascii: bool = False) -> str:
    mark = p.polarity.ascii if ascii else p.polarity.value
    if len(p.obj) == 1:
        return format_name(p.obj[0]) + mark
    if not p.obj:
        return "I" + mark
    return f"({format_word(p.obj)}){mark}"


def format_exchange(x: ExchangeType, ascii: bool = False) -> str:
    return " * ".join(format_polarized(p, ascii) for p in x) if x else "I"


def format_morphism(m: MorphismTerm) -> str:
    if isinstance(m, Identity):
        return f"id({format_word(m.obj)})"
    if isinstance(m, Generator):
        return m.name
    if isinstance(m, Braid):
        return f"sigma({format_word(m.left)}, {format_word(m.right)})"
    if isinstance(m, Seq):
        right = format_morphism(m.second)
        if isinstance(m.second, Seq):
            right = f"({right})"
        return f"{format_morphism(m.first)} ; {right}"
    if isinstance(m, Tensor):
        left, right = format_morphism(m.left), format_morphism(m.right)
        if isinstance(m.left, Seq):
            left = f"({left})"
        if isinstance(m.right, (Seq, Tensor)):
            right = f"({right})"
        return f"{left} * {right}"
    raise TypeError(m)


def format_cell(c: CellTerm, ascii: bool = False) -> str:
    if isinstance(c, HComp):
        right = format_cell(c.second, ascii)
        if isinstance(c.second, HComp):
            right = f"({right})"
        return f"{format_cell(c.first, ascii)} | {right}"
    if isinstance(c, VComp):
        left, right = format_cell(c.first, ascii), format_cell(c.second, ascii)
        if isinstance(c.first, HComp):
            left = f"({left})"
        if isinstance(c.second, (HComp, VComp)):
            right = f"({right})"
        return f"{left} / {right}"
    if isinstance(c, Lift):
        return f"lift({format_morphism(c.morphism)})"
    if isinstance(c, VId):
        return f"vid({format_word(c.obj)})"
    if isinstance(c, HId):
        return f"hid({format_exchange(c.exchange, ascii)})"
    return f"{c.keyword}({format_word(c.obj)})"


def format_theory(t: Theory, expanded: bool = False) -> str:
    """The theory block.

    A dualized theory normally prints its base objects and the compact flag;
    ``expanded`` lists the duals, units, counits and snake equations instead.
    """
    generated = {n for n, _ in t.units} | {n for n, _ in t.counits}
    if expanded:
        objects, arrows = list(t.objects), list(t.arrows)
    else:
        objects = [o for o in t.objects if not (t.dualized and o.endswith("*"))]
        arrows = [a for a in t.arrows if a.name not in generated]
    lines = [f"theory {t.name} {{"]
    if objects:
        lines.append(f"  objects {', '.join(format_name(o) for o in objects)};")
    if arrows:
        decls = [f"{a.name}: {format_word(a.dom)} -> {format_word(a.cod)}" for a in arrows]
        lines.append("  arrows " + ",\n         ".join(decls) + ";")
    eqs = list(t.equations) if expanded else t.user_equations()
    if eqs:
        lines.append("  equations " + ",\n            ".join(
            f"{format_morphism(l)} = {format_morphism(r)}" for l, r in eqs) + ";")
    if t.compact_closed and not expanded:
        lines.append("  compact;")
    lines.append("}")
    return "\n".join(lines) + "\n"
