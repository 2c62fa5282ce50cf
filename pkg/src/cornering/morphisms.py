"""Normal forms and equality of morphisms in a presented resource theory.

Terms are first read as wiring diagrams, which quotients out associativity,
units, interchange and braid naturality/involution all at once.  Two
diagrams are equal in the free symmetric monoidal category exactly when they
are isomorphic relative to their boundary, which the canonical key decides.
User equations are then applied as convex subgraph rewrites, breadth-first
and within a budget.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

from .errors import BoundaryMismatch
from .theory import MorphismTerm, Theory, show_word
from .wiring import (
    Diagram,
    Pattern,
    apply_match,
    canonical_key,
    contract_snake,
    diagram_morphism,
    find_matches,
    morphism_diagram,
    snake_redexes,
)


class Verdict(enum.Enum):
    EQUAL = "Equal"
    NOT_EQUAL = "NotEqualStructurally"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value

    def __bool__(self):
        return self is Verdict.EQUAL


@dataclass(frozen=True)
class EqualityConfig:
    max_steps: int = 64  # rewrite depth per search
    max_states: int = 4000  # distinct diagrams explored per search
    max_matches: int = 64  # matches enumerated per pattern per state


DEFAULT_EQUALITY = EqualityConfig()


def transparent_boxes(theory: Theory | None) -> dict[str, str]:
    """Unit/counit labels that the canonical key dissolves into wire bends."""
    if theory is None or not theory.dualized:
        return {}
    out = {name: "unit" for name, _ in theory.units}
    out.update({name: "counit" for name, _ in theory.counits})
    return out


def patterns_for(theory: Theory | None) -> list[Pattern]:
    if theory is None:
        return []
    pats = [
        Pattern.from_terms(f"eq{i}", lhs, rhs)
        for i, (lhs, rhs) in enumerate(theory.equations)
        if i not in theory.builtin_equations
    ]
    # length-nonincreasing equations are tried first
    return sorted(pats, key=lambda p: p.growth)


def reversed_patterns(pats: list[Pattern]) -> list[Pattern]:
    return [Pattern(p.name + "^-1", p.rhs, p.lhs, _usable(p.rhs), -p.growth) for p in pats]


def _usable(lhs: Diagram) -> bool:
    return bool(lhs.boxes) and all(s[0] != "T" for t, s in lhs.src.items() if t[0] == "B")


def contract_all_snakes(d: Diagram, theory: Theory | None) -> tuple[Diagram, list[tuple]]:
    """Cancel unit/counit pairs greedily; returns the diagram and the pairs."""
    if theory is None or not theory.dualized:
        return d, []
    units, counits = theory.unit_map, theory.counit_map
    pairs = []
    progress = True
    while progress:
        progress = False
        for b, c, which in snake_redexes(d, units, counits):
            nd = contract_snake(d, b, c, which)
            if nd is not None:
                pairs.append((d.boxes[b].label, d.boxes[c].label))
                d = nd
                progress = True
                break
    return d, pairs


def normalize_morphism(m: MorphismTerm, theory: Theory | None = None) -> MorphismTerm:
    """Canonical representative modulo the symmetric monoidal axioms.

    User equations are not applied; snake pairs of a dualized theory are
    cancelled first.  Idempotent.
    """
    d, _ = contract_all_snakes(morphism_diagram(m), theory)
    return diagram_morphism(d)


def morphism_key(m: MorphismTerm, theory: Theory | None = None):
    return canonical_key(morphism_diagram(m), transparent_boxes(theory))


def morphisms_equal(
    f: MorphismTerm,
    g: MorphismTerm,
    theory: Theory | None = None,
    config: EqualityConfig = DEFAULT_EQUALITY,
) -> Verdict:
    """Sound tri-state equality of two morphism terms."""
    if (f.dom, f.cod) != (g.dom, g.cod):
        raise BoundaryMismatch(
            f"{show_word(f.dom)} -> {show_word(f.cod)} vs {show_word(g.dom)} -> {show_word(g.cod)}"
        )
    return diagrams_equal(morphism_diagram(f), morphism_diagram(g), theory, config)


def diagrams_equal(
    a: Diagram, b: Diagram, theory: Theory | None = None, config: EqualityConfig = DEFAULT_EQUALITY
) -> Verdict:
    transparent = transparent_boxes(theory)
    ka, kb = canonical_key(a, transparent), canonical_key(b, transparent)
    if ka == kb:
        return Verdict.EQUAL
    all_pats = patterns_for(theory)
    backward = reversed_patterns(all_pats)
    # an equation usable in neither direction hides part of the congruence
    blind = any(not p.usable and not q.usable for p, q in zip(all_pats, backward))
    pats = [p for p in all_pats if p.usable]
    if not pats:
        return Verdict.UNKNOWN if blind else Verdict.NOT_EQUAL
    # directed closure from both sides, meeting in the middle
    seen_a, done_a = _closure(a, pats, transparent, config)
    seen_b, done_b = _closure(b, pats, transparent, config)
    if seen_a.keys() & seen_b.keys():
        return Verdict.EQUAL
    # both orientations: the full congruence class, if it is small enough
    both = pats + [p for p in backward if p.usable]
    seen, done = _closure(a, both, transparent, config, stop=kb)
    if kb in seen:
        return Verdict.EQUAL
    return Verdict.NOT_EQUAL if done and not blind else Verdict.UNKNOWN


def _closure(start, pats, transparent, config, stop=None):
    """Breadth-first rewrite closure; returns (key -> diagram, exhausted?)."""
    k0 = canonical_key(start, transparent)
    seen = {k0: start}
    queue = deque([(start, 0)])
    exhausted = True
    while queue:
        d, depth = queue.popleft()
        if depth >= config.max_steps:
            exhausted = False
            continue
        for p in pats:
            matches = find_matches(d, p, config.max_matches)
            if len(matches) >= config.max_matches:
                exhausted = False
            for phi in matches:
                nd = apply_match(d, p, phi)
                k = canonical_key(nd, transparent)
                if k in seen:
                    continue
                seen[k] = nd
                if k == stop:
                    return seen, False
                if len(seen) >= config.max_states:
                    return seen, False
                queue.append((nd, depth + 1))
    return seen, exhausted
