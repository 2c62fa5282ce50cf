"""The free cornering of a resource theory.

Build a theory, write cells over it, and check their equality, derive
crossings, adapters and duals, or run a row of cells as an exchange
protocol between participants.
"""

from .cells import (
    EMPTY,
    CellBoundary,
    CellTerm,
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
    boundary_of,
    bullet,
    circ,
    hcomp,
    hid,
    vcomp,
    vid,
    xt,
)
from .compact import (
    LedgerReport,
    balance_ledger,
    dualize_theory,
    exchange_dual,
    h_counit,
    h_unit,
    reversal_iso,
    snake_sides,
    symmetry_inverse,
)
from .crossing import (
    check_crossing_naturality,
    check_noninteraction,
    crossing,
    middle_exchange,
    tensor_cells,
)
from .dsl import (
    Workspace,
    format_cell,
    format_exchange,
    format_morphism,
    format_theory,
    load_theory,
    load_workspace,
    parse_cell,
    parse_exchange,
    parse_morphism,
    parse_word,
    parse_workspace,
)
from .errors import *  # noqa: F401,F403
from .exchange import adapter, canonicalize_exchange, d_circ_bullet, exchanges_equivalent
from .morphisms import EqualityConfig, Verdict, morphisms_equal, normalize_morphism
from .rewrite import (
    RowNormalForm,
    cells_equal,
    eval_vertical,
    rewrite_fixpoint,
    to_row_normal_form,
)
from .simulate import BoundaryEvent, CausalTrace, compose_row, extract_trace, replay_concurrently, run
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
    free_theory,
    validate_theory,
)

__version__ = "0.1.0"
