"""The bundled example theories and workspaces."""

from __future__ import annotations

from pathlib import Path

from .dsl import Workspace, load_theory, load_workspace
from .theory import Theory

FIXTURE_DIR = Path(__file__).with_name("fixtures")


def path(name: str) -> Path:
    return FIXTURE_DIR / name


def baking() -> Theory:
    """Objects bread, dough, water, flour, oven; arrows mix, knead, bake."""
    return load_theory(path("baking.theory"))


def money_baking() -> Theory:
    """Baking plus ``$1``, declared compact and dualized."""
    return load_theory(path("money_baking.theory"))


def baking_row() -> Workspace:
    """Three participants that together turn water, oven and flour into bread and an oven."""
    return load_workspace(path("baking_row.cell"))


def money_row() -> Workspace:
    """A flour seller, a baker who pays with a debt, and a bread buyer."""
    return load_workspace(path("money_baking.ws"))


def two_loaves() -> Workspace:
    return load_workspace(path("two_loaves.ws"))


def lemma_row() -> Workspace:
    """Two cells whose shared boundary only agrees up to reordering."""
    return load_workspace(path("lemma_row.ws"))
