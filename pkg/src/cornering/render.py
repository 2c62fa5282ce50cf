"""Graphviz and TikZ export of cells as string diagrams.

Each participant of a row becomes a cluster.  Boxes are arrows of the
theory, corners are wires bending from a top or bottom port into a side
port, and the wires of a shared boundary run between neighbouring
clusters.  Output depends only on the term, so it is byte-stable.
"""

from __future__ import annotations

from .cells import CellTerm, show_exchange
from .simulate import participants
from .theory import show_word
from .wiring import Diagram, cell_diagram


def _esc(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def _node(p: int, endpoint) -> str:
    kind = endpoint[0]
    if kind in ("I", "O"):
        return f"p{p}_box{endpoint[1]}"
    return f"p{p}_{kind}" + "_".join(str(x) for x in endpoint[1:])


def _side_mark(d: Diagram, endpoint) -> str:
    side = d.left if endpoint[0] == "L" else d.right
    return side[endpoint[1]].polarity.value


def _port_label(d: Diagram, endpoint) -> str:
    obj = d.object_at(endpoint)
    return obj + _side_mark(d, endpoint) if endpoint[0] in ("L", "R") else obj


def _ports(d: Diagram):
    return sorted(d.boundary_ports(), key=lambda e: ("TLRB".index(e[0]),) + tuple(e[1:]))


def to_dot(c: CellTerm, name: str = "cell") -> str:
    parts = [cell_diagram(part) for part in participants(c)]
    lines = [f'digraph "{_esc(name)}" {{', "  rankdir=TB;", '  node [fontname="Helvetica"];']
    for p, d in enumerate(parts):
        if not d.boxes and not d.boundary_ports():
            continue
        lines.append(f"  subgraph cluster_p{p} {{")
        lines.append(f'    label="participant {p}";')
        for b, box in enumerate(d.boxes):
            lines.append(f'    p{p}_box{b} [shape=box, label="{_esc(box.label)}"];')
        for e in _ports(d):
            lines.append(f'    {_node(p, e)} [shape=point, xlabel="{_esc(_port_label(d, e))}"];')
        for t, s in sorted(d.src.items(), key=lambda kv: (_node(p, kv[1]), _node(p, kv[0]))):
            label = _esc(d.object_at(s))
            bent = (s[0] in "LR") != (t[0] in "LR")
            style = ", class=\"bend\"" if bent else ""
            lines.append(f'    {_node(p, s)} -> {_node(p, t)} [label="{label}"{style}];')
        lines.append("  }")
    # wires of the shared boundaries, in the direction the resource travels
    for p in range(1, len(parts)):
        left, right = parts[p - 1], parts[p]
        for i, x in enumerate(left.right):
            for k, obj in enumerate(x.obj):
                a, b = _node(p - 1, ("R", i, k)), _node(p, ("L", i, k))
                if not x.circ:
                    a, b = b, a
                label = _esc(obj + x.polarity.value)
                lines.append(f'  {a} -> {b} [label="{label}", style=dashed, constraint=false];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_tikz(c: CellTerm) -> str:
    """A plain TikZ picture: one column per participant, boxes stacked in
    the order they were traced, wires drawn as straight or bent paths."""
    parts = [cell_diagram(part) for part in participants(c)]
    out = ["\\begin{tikzpicture}[box/.style={draw, rectangle, minimum width=1cm}]"]
    pos: dict[str, tuple[float, float]] = {}
    for p, d in enumerate(parts):
        x0 = 4.0 * p
        depth = len(d.boxes) + 1
        for i, _ in enumerate(d.top):
            pos[_node(p, ("T", i))] = (x0 + i, 1.0)
        for i, _ in enumerate(d.bottom):
            pos[_node(p, ("B", i))] = (x0 + i, -depth)
        for side, xs, dx in (("L", d.left, -1.0), ("R", d.right, 3.0)):
            row = 0
            for i, x in enumerate(xs):
                for k in range(len(x.obj)):
                    row += 1
                    pos[_node(p, (side, i, k))] = (x0 + dx, -depth * row / (len(xs) + 1))
        for b, _ in enumerate(d.boxes):
            pos[_node(p, ("O", b, 0))] = (x0 + 1.0, -(b + 1.0))
    for p, d in enumerate(parts):
        for b, box in enumerate(d.boxes):
            x, y = pos[_node(p, ("O", b, 0))]
            out.append(f"  \\node[box] ({_node(p, ('O', b, 0))}) at ({x:g},{y:g}) {{{_tex(box.label)}}};")
        for e in _ports(d):
            x, y = pos[_node(p, e)]
            out.append(f"  \\coordinate ({_node(p, e)}) at ({x:g},{y:g});")
        for t, s in sorted(d.src.items(), key=lambda kv: (_node(p, kv[1]), _node(p, kv[0]))):
            bend = ""
            if (s[0] in "LR") != (t[0] in "LR"):
                bend = " to[out=-90, in=180]" if t[0] == "R" or s[0] == "L" else " to[out=0, in=90]"
            path = f"{bend} " if bend else " -- "
            out.append(
                f"  \\draw ({_node(p, s)}){path}node[midway, right] {{\\small {_tex(d.object_at(s))}}} ({_node(p, t)});"
            )
    for p in range(1, len(parts)):
        for i, x in enumerate(parts[p - 1].right):
            for k, obj in enumerate(x.obj):
                a, b = _node(p - 1, ("R", i, k)), _node(p, ("L", i, k))
                if not x.circ:
                    a, b = b, a
                mark = "^\\circ" if x.circ else "^\\bullet"
                out.append(f"  \\draw[dashed, ->] ({a}) -- node[above] {{${_tex(obj)}{mark}$}} ({b});")
    out.append("\\end{tikzpicture}")
    return "\n".join(out) + "\n"


def _tex(s: str) -> str:
    return s.replace("$", "\\$").replace("_", "\\_").replace("*", "^*")


def export_diagram(c: CellTerm, fmt: str = "dot") -> str:
    if fmt == "dot":
        return to_dot(c)
    if fmt == "tikz":
        return to_tikz(c)
    raise ValueError(f"unknown format {fmt!r}")


def summary(c: CellTerm) -> str:
    b = c.boundary
    return (
        f"left {show_exchange(b.left)}, right {show_exchange(b.right)}, "
        f"top {show_word(b.top)}, bottom {show_word(b.bottom)}"
    )
