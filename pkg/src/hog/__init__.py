"""Higher-order games: players as selection functions over finite contexts.

The core vocabulary lives in `hog.core` (contexts, selection functions,
quantifiers, lifts, law checks), games and equilibrium search in
`hog.engine`, the text format in `hog.dsl`, and ready-made example games
in `hog.builtins`.  Everything commonly needed is re-exported here.
"""

from .builtins import (
    builtin,
    builtin_names,
    builtin_note,
    payoff_matrix,
    payoff_matrix_names,
)
from .core import (
    ArgmaxCoord,
    ArgmaxOrder,
    AtomOutcomes,
    AttainmentWitness,
    CheckResult,
    ClosednessWitness,
    Coord,
    DEFAULT_CONTEXT_BUDGET,
    Fix,
    FixProj,
    FixQuantifier,
    GameContext,
    Lex,
    Lifted,
    MaxCoord,
    MaxOrder,
    MoveSet,
    NonFix,
    NonFixProj,
    PreferenceOrder,
    Preimage,
    ProductOutcomes,
    Quantifier,
    SelectionFunction,
    TableSelection,
    TargetCoord,
    VectorOutcomes,
    attains,
    check_shape,
    closure_of,
    enumerate_contexts,
    is_closed,
    lift_quantifier,
    lift_selection,
    may_be_empty,
    projection,
    tabulate,
)
from .dsl import (
    GameSource,
    ParseDiagnostic,
    ParseResult,
    parse_file,
    parse_game,
    render_game,
)
from .engine import (
    DEFAULT_PROFILE_BUDGET,
    EquilibriumReport,
    Game,
    OutcomeFunction,
    PayoffMatrix,
    Player,
    ProfileResult,
    brute_force_nash,
    classical_game,
    enumerate_equilibria,
    evaluate_profile,
    identity_rule,
    is_quantifier_equilibrium,
    is_selection_equilibrium,
    majority_rule,
    outcome_table,
    unilateral_context,
)
from .errors import (
    BudgetExceededError,
    CoordinateOutOfRangeError,
    HogError,
    IncompleteOrderError,
    InvalidProfileError,
    PlayerOutOfRangeError,
    RenderError,
    TypeMismatchError,
    UnknownBuiltinError,
)

__version__ = "0.1.0"
