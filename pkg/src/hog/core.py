"""Game contexts, selection functions, and quantifiers over finite spaces.

A game context is a total map ``p : X -> R`` from one player's moves to
outcomes.  A selection function answers "which moves would this player be
happy with here?", a quantifier answers "which outcomes would count as good
here?".  Everything in this module is finite and exhaustively checkable:
evaluation returns tuples in a canonical order, and the law checks
(`is_closed`, `attains`) sweep every context over the given spaces.

Canonical ordering: moves are reported in the order the move set declares
them; outcomes are reported in the order the outcome space enumerates them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product as cartesian
from typing import Iterator, Mapping, Optional, Union

from .errors import (
    BudgetExceededError,
    CoordinateOutOfRangeError,
    IncompleteOrderError,
    TypeMismatchError,
)

#: Cap on |R| ** |X| for exhaustive sweeps over contexts.
DEFAULT_CONTEXT_BUDGET = 10**6


@dataclass(frozen=True)
class MoveSet:
    """Ordered finite set of move labels; declaration order is canonical."""

    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if not self.labels:
            raise ValueError("a move set needs at least one move")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"duplicate move labels in {self.labels!r}")

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return len(self.labels)

    def __contains__(self, label):
        return label in self.labels

    def index(self, label: str) -> int:
        return self.labels.index(label)


# ---------------------------------------------------------------------------
# Outcome spaces
# ---------------------------------------------------------------------------
# Three shapes cover everything here: a flat set of atoms, a product of move
# sets (strategy profiles as outcomes), and payoff vectors over a fixed grid
# of rational values.

Value = Union[str, tuple]


@dataclass(frozen=True)
class AtomOutcomes:
    """Outcomes are bare labels, e.g. the candidate elected."""

    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if not self.labels:
            raise ValueError("an outcome space needs at least one value")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"duplicate outcome labels in {self.labels!r}")

    @property
    def arity(self) -> int:
        return 0

    def size(self) -> int:
        return len(self.labels)

    def all_outcomes(self) -> tuple[str, ...]:
        return self.labels

    def rank(self, value) -> int:
        return self.labels.index(value)

    def __contains__(self, value):
        return isinstance(value, str) and value in self.labels


@dataclass(frozen=True)
class ProductOutcomes:
    """Outcomes are tuples of move labels, one slot per player."""

    coords: tuple[MoveSet, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        if not self.coords:
            raise ValueError("a product outcome space needs at least one coordinate")

    @property
    def arity(self) -> int:
        return len(self.coords)

    def size(self) -> int:
        return math.prod(len(m) for m in self.coords)

    def all_outcomes(self) -> tuple[tuple, ...]:
        return tuple(cartesian(*(m.labels for m in self.coords)))

    def rank(self, value) -> int:
        # lexicographic in declaration order, identical to all_outcomes()
        r = 0
        for m, v in zip(self.coords, value):
            r = r * len(m) + m.index(v)
        return r

    def __contains__(self, value):
        return (
            isinstance(value, tuple)
            and len(value) == len(self.coords)
            and all(v in m for m, v in zip(self.coords, value))
        )


@dataclass(frozen=True)
class VectorOutcomes:
    """Outcomes are payoff vectors; every coordinate ranges over `levels`.

    Levels are kept as exact rationals so payoff comparisons never hit
    float noise.
    """

    dim: int
    levels: tuple[Fraction, ...]

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("vector outcomes need dim >= 1")
        lv = tuple(Fraction(x) for x in self.levels)
        if not lv:
            raise ValueError("vector outcomes need at least one level")
        if len(set(lv)) != len(lv):
            raise ValueError("duplicate payoff levels")
        object.__setattr__(self, "levels", tuple(sorted(lv)))

    @property
    def arity(self) -> int:
        return self.dim

    def size(self) -> int:
        return len(self.levels) ** self.dim

    def all_outcomes(self) -> tuple[tuple, ...]:
        return tuple(cartesian(self.levels, repeat=self.dim))

    def rank(self, value) -> int:
        base = len(self.levels)
        idx = {v: i for i, v in enumerate(self.levels)}
        r = 0
        for v in value:
            r = r * base + idx[Fraction(v)]
        return r

    def __contains__(self, value):
        return (
            isinstance(value, tuple)
            and len(value) == self.dim
            and all(isinstance(v, (int, Fraction)) and Fraction(v) in self.levels for v in value)
        )


OutcomeSpace = Union[AtomOutcomes, ProductOutcomes, VectorOutcomes]


def projection(space: OutcomeSpace, value, i: int):
    """The i-th coordinate (1-based) of an outcome in a structured space."""
    if isinstance(space, AtomOutcomes):
        raise TypeMismatchError("atom outcomes have no coordinates to project")
    n = space.arity
    if not 1 <= i <= n:
        raise CoordinateOutOfRangeError(f"coordinate {i} out of range 1..{n}")
    return value[i - 1]


# ---------------------------------------------------------------------------
# Game contexts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GameContext:
    """A total map from one player's moves to outcomes.

    `table` holds the value at each move, aligned with `domain.labels`; a
    mapping is accepted and reordered.  Contexts are hashable so they can
    key lookup tables.
    """

    domain: MoveSet
    codomain: OutcomeSpace
    table: tuple

    def __post_init__(self):
        t = self.table
        if isinstance(t, Mapping):
            if set(t) != set(self.domain.labels):
                raise ValueError("context mapping keys must be exactly the domain moves")
            t = tuple(t[x] for x in self.domain.labels)
        else:
            t = tuple(t)
            if len(t) != len(self.domain):
                raise ValueError(
                    f"context table has {len(t)} entries for {len(self.domain)} moves"
                )
        for v in t:
            if v not in self.codomain:
                raise ValueError(f"context value {v!r} lies outside the outcome space")
        object.__setattr__(self, "table", t)

    @classmethod
    def from_mapping(cls, domain: MoveSet, codomain: OutcomeSpace, mapping) -> "GameContext":
        return cls(domain, codomain, dict(mapping))

    def __call__(self, move: str):
        return self.table[self.domain.index(move)]

    def as_dict(self) -> dict:
        return dict(zip(self.domain.labels, self.table))

    def image(self) -> tuple:
        """Distinct values hit by the context, in canonical outcome order."""
        seen = set(self.table)
        return tuple(sorted(seen, key=self.codomain.rank))


def enumerate_contexts(
    domain: MoveSet,
    codomain: OutcomeSpace,
    max_contexts: int = DEFAULT_CONTEXT_BUDGET,
) -> Iterator[GameContext]:
    """Every total map domain -> codomain, in lexicographic table order.

    Raises BudgetExceededError up front if |R| ** |X| exceeds the cap, so
    callers never start a sweep they cannot finish.
    """
    total = codomain.size() ** len(domain)
    if total > max_contexts:
        raise BudgetExceededError(
            f"{total} contexts exceed the budget of {max_contexts}"
        )
    for values in cartesian(codomain.all_outcomes(), repeat=len(domain)):
        yield GameContext(domain, codomain, values)


# ---------------------------------------------------------------------------
# Preference orders
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PreferenceOrder:
    """Strict total order on outcome values, best first."""

    ranking: tuple

    def __post_init__(self):
        object.__setattr__(self, "ranking", tuple(self.ranking))
        if len(set(self.ranking)) != len(self.ranking):
            raise ValueError("preference order repeats a value")
        if not self.ranking:
            raise ValueError("preference order must rank at least one value")

    def position(self, value) -> int:
        """Rank of a value, 0 = best.  Unranked values are an error."""
        try:
            return self.ranking.index(value)
        except ValueError:
            raise IncompleteOrderError(f"order does not rank {value!r}") from None


# ---------------------------------------------------------------------------
# Selection functions
# ---------------------------------------------------------------------------


class SelectionFunction:
    """Base class: callable on a context, returns moves in domain order."""

    def __call__(self, p: GameContext) -> tuple:
        raise NotImplementedError


class Quantifier:
    """Base class: callable on a context, returns outcomes in canonical order."""

    def __call__(self, p: GameContext) -> tuple:
        raise NotImplementedError


def _moves_where(p: GameContext, pred) -> tuple:
    return tuple(x for x in p.domain if pred(x))


def _with_fallback(p: GameContext, chosen: tuple) -> tuple:
    # empty preferred set means the player is indifferent, not stuck
    return chosen if chosen else tuple(p.domain)


def _check_atoms_match(p: GameContext):
    if not isinstance(p.codomain, AtomOutcomes) or set(p.codomain.labels) != set(
        p.domain.labels
    ):
        raise TypeMismatchError(
            "fixpoint selection needs atom outcomes matching the moves exactly"
        )


def _check_product(p: GameContext, i: int):
    if not isinstance(p.codomain, ProductOutcomes):
        raise TypeMismatchError("coordinate selection needs a product outcome space")
    if not 1 <= i <= p.codomain.arity:
        raise CoordinateOutOfRangeError(
            f"coordinate {i} out of range 1..{p.codomain.arity}"
        )


@dataclass(frozen=True)
class ArgmaxOrder(SelectionFunction):
    """Moves whose outcome is ranked best by the order among values attained."""

    order: PreferenceOrder

    def __call__(self, p: GameContext) -> tuple:
        pos = {x: self.order.position(p(x)) for x in p.domain}
        best = min(pos.values())
        return _moves_where(p, lambda x: pos[x] == best)


@dataclass(frozen=True)
class ArgmaxCoord(SelectionFunction):
    """Moves maximising one payoff coordinate; the shape of classical players."""

    coord: int

    def __call__(self, p: GameContext) -> tuple:
        if not isinstance(p.codomain, VectorOutcomes):
            raise TypeMismatchError("argmax over a coordinate needs vector outcomes")
        if not 1 <= self.coord <= p.codomain.dim:
            raise CoordinateOutOfRangeError(
                f"coordinate {self.coord} out of range 1..{p.codomain.dim}"
            )
        vals = {x: p(x)[self.coord - 1] for x in p.domain}
        best = max(vals.values())
        return _moves_where(p, lambda x: vals[x] == best)


@dataclass(frozen=True)
class Fix(SelectionFunction):
    """Moves the context maps to themselves; every move if none do."""

    def __call__(self, p: GameContext) -> tuple:
        _check_atoms_match(p)
        return _with_fallback(p, _moves_where(p, lambda x: p(x) == x))


@dataclass(frozen=True)
class NonFix(SelectionFunction):
    """Moves the context does not map to themselves; every move if all do."""

    def __call__(self, p: GameContext) -> tuple:
        _check_atoms_match(p)
        return _with_fallback(p, _moves_where(p, lambda x: p(x) != x))


@dataclass(frozen=True)
class FixProj(SelectionFunction):
    """Moves agreeing with coordinate `coord` of the outcome; conformists."""

    coord: int

    def __call__(self, p: GameContext) -> tuple:
        _check_product(p, self.coord)
        i = self.coord - 1
        return _with_fallback(p, _moves_where(p, lambda x: p(x)[i] == x))


@dataclass(frozen=True)
class NonFixProj(SelectionFunction):
    """Moves disagreeing with coordinate `coord` of the outcome; contrarians."""

    coord: int

    def __call__(self, p: GameContext) -> tuple:
        _check_product(p, self.coord)
        i = self.coord - 1
        return _with_fallback(p, _moves_where(p, lambda x: p(x)[i] != x))


@dataclass(frozen=True)
class Coord(SelectionFunction):
    """Moves under which all coordinates of the outcome agree."""

    def __call__(self, p: GameContext) -> tuple:
        if not isinstance(p.codomain, ProductOutcomes):
            raise TypeMismatchError("coordination needs a product outcome space")
        if p.codomain.arity < 2:
            raise TypeMismatchError("coordination needs at least two coordinates")
        return _with_fallback(
            p, _moves_where(p, lambda x: len(set(p(x))) == 1)
        )


@dataclass(frozen=True)
class TargetCoord(SelectionFunction):
    """Moves forcing coordinate `coord` of the outcome to equal `value`.

    Deliberately has no fallback: when the target is out of reach the
    selection is empty.  Meant to refine another selection inside Lex, not
    to stand alone.
    """

    coord: int
    value: str

    def __call__(self, p: GameContext) -> tuple:
        _check_product(p, self.coord)
        i = self.coord - 1
        return _moves_where(p, lambda x: p(x)[i] == self.value)


@dataclass(frozen=True)
class Lex(SelectionFunction):
    """Secondary preference used to break ties among primary choices.

    Take the primary moves that also satisfy the secondary; if none do,
    keep the primary moves; if even the primary is empty, any move goes.
    """

    primary: SelectionFunction
    secondary: SelectionFunction

    def __call__(self, p: GameContext) -> tuple:
        first = self.primary(p)
        second = set(self.secondary(p))
        both = tuple(x for x in first if x in second)
        if both:
            return both
        if first:
            return first
        return tuple(p.domain)


@dataclass(frozen=True)
class TableSelection(SelectionFunction):
    """Selection given pointwise as (context, moves) rows."""

    entries: tuple[tuple[GameContext, tuple], ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "entries",
            tuple((ctx, tuple(moves)) for ctx, moves in self.entries),
        )

    @cached_property
    def _lookup(self) -> dict:
        return {ctx: moves for ctx, moves in self.entries}

    def __call__(self, p: GameContext) -> tuple:
        try:
            return self._lookup[p]
        except KeyError:
            raise TypeMismatchError("table selection has no row for this context") from None


@dataclass(frozen=True)
class Preimage(SelectionFunction):
    """Moves whose outcome the wrapped quantifier approves of.

    This is how a quantifier acts as a selection function; together with
    `Lifted` it closes the loop between the two views.
    """

    quantifier: "Quantifier"

    def __call__(self, p: GameContext) -> tuple:
        good = set(self.quantifier(p))
        return _moves_where(p, lambda x: p(x) in good)


# ---------------------------------------------------------------------------
# Quantifiers
# ---------------------------------------------------------------------------


def _ordered_values(codomain: OutcomeSpace, values) -> tuple:
    return tuple(sorted(set(values), key=codomain.rank))


@dataclass(frozen=True)
class MaxOrder(Quantifier):
    """The single best attained outcome under a strict total order."""

    order: PreferenceOrder

    def __call__(self, p: GameContext) -> tuple:
        best = min(p.image(), key=self.order.position)
        return (best,)


@dataclass(frozen=True)
class MaxCoord(Quantifier):
    """Attained outcomes whose chosen payoff coordinate is maximal."""

    coord: int

    def __call__(self, p: GameContext) -> tuple:
        if not isinstance(p.codomain, VectorOutcomes):
            raise TypeMismatchError("max over a coordinate needs vector outcomes")
        if not 1 <= self.coord <= p.codomain.dim:
            raise CoordinateOutOfRangeError(
                f"coordinate {self.coord} out of range 1..{p.codomain.dim}"
            )
        img = p.image()
        i = self.coord - 1
        best = max(v[i] for v in img)
        return tuple(v for v in img if v[i] == best)


@dataclass(frozen=True)
class FixQuantifier(Quantifier):
    """Outcomes some move maps to itself under; all attained outcomes if none.

    The fallback mirrors the fixpoint selection's, pushed through the
    context, which is what makes the two views of a fixpoint player agree.
    """

    def __call__(self, p: GameContext) -> tuple:
        _check_atoms_match(p)
        fixed = [p(x) for x in p.domain if p(x) == x]
        if fixed:
            return _ordered_values(p.codomain, fixed)
        return p.image()


@dataclass(frozen=True)
class Lifted(Quantifier):
    """Outcomes attained by the wrapped selection's chosen moves."""

    selection: SelectionFunction

    def __call__(self, p: GameContext) -> tuple:
        return _ordered_values(p.codomain, (p(x) for x in self.selection(p)))


def lift_selection(e: SelectionFunction) -> Quantifier:
    """The quantifier a selection function induces: outcomes of chosen moves."""
    return Lifted(e)


def lift_quantifier(f: Quantifier) -> SelectionFunction:
    """The selection function a quantifier induces: moves hitting good outcomes."""
    return Preimage(f)


def closure_of(e: SelectionFunction) -> SelectionFunction:
    """Lift to a quantifier and back; the smallest closed refinement of `e`."""
    return Preimage(Lifted(e))


# ---------------------------------------------------------------------------
# Static shape checking
# ---------------------------------------------------------------------------


def check_shape(obj, domain: MoveSet, codomain: OutcomeSpace) -> None:
    """Validate a selection function or quantifier against spaces up front.

    Raises the same errors evaluation would, but without needing a context,
    so ill-typed games are rejected at construction time.
    """
    if isinstance(obj, ArgmaxOrder) or isinstance(obj, MaxOrder):
        ranked = set(obj.order.ranking)
        space = set(codomain.all_outcomes())
        missing = space - ranked
        if missing:
            raise IncompleteOrderError(
                f"order leaves {len(missing)} outcome(s) unranked, e.g. {sorted(missing, key=codomain.rank)[0]!r}"
            )
        extra = ranked - space
        if extra:
            raise TypeMismatchError(
                f"order ranks values outside the outcome space, e.g. {next(iter(extra))!r}"
            )
    elif isinstance(obj, (ArgmaxCoord, MaxCoord)):
        if not isinstance(codomain, VectorOutcomes):
            raise TypeMismatchError("argmax over a coordinate needs vector outcomes")
        if not 1 <= obj.coord <= codomain.dim:
            raise CoordinateOutOfRangeError(
                f"coordinate {obj.coord} out of range 1..{codomain.dim}"
            )
    elif isinstance(obj, (Fix, NonFix, FixQuantifier)):
        if not isinstance(codomain, AtomOutcomes) or set(codomain.labels) != set(
            domain.labels
        ):
            raise TypeMismatchError(
                "fixpoint selection needs atom outcomes matching the moves exactly"
            )
    elif isinstance(obj, (FixProj, NonFixProj, TargetCoord)):
        if not isinstance(codomain, ProductOutcomes):
            raise TypeMismatchError("coordinate selection needs a product outcome space")
        if not 1 <= obj.coord <= codomain.arity:
            raise CoordinateOutOfRangeError(
                f"coordinate {obj.coord} out of range 1..{codomain.arity}"
            )
    elif isinstance(obj, Coord):
        if not isinstance(codomain, ProductOutcomes):
            raise TypeMismatchError("coordination needs a product outcome space")
        if codomain.arity < 2:
            raise TypeMismatchError("coordination needs at least two coordinates")
    elif isinstance(obj, Lex):
        check_shape(obj.primary, domain, codomain)
        check_shape(obj.secondary, domain, codomain)
    elif isinstance(obj, TableSelection):
        for ctx, moves in obj.entries:
            if ctx.domain != domain or ctx.codomain != codomain:
                raise TypeMismatchError("table selection row built over different spaces")
            for m in moves:
                if m not in domain:
                    raise TypeMismatchError(f"table selection picks unknown move {m!r}")
    elif isinstance(obj, Preimage):
        check_shape(obj.quantifier, domain, codomain)
    elif isinstance(obj, Lifted):
        check_shape(obj.selection, domain, codomain)
    elif isinstance(obj, (SelectionFunction, Quantifier)):
        pass  # user-defined callables are checked at evaluation time
    else:
        raise TypeError(f"not a selection function or quantifier: {obj!r}")


def may_be_empty(e: SelectionFunction) -> bool:
    """Whether the selection can come back empty on some context."""
    if isinstance(e, TargetCoord):
        return True
    if isinstance(e, TableSelection):
        return any(not moves for _, moves in e.entries)
    # Lex falls back to the whole move set, so it absorbs empty parts
    return False


# ---------------------------------------------------------------------------
# Tabulation and law checks
# ---------------------------------------------------------------------------


def tabulate(
    e: SelectionFunction,
    domain: MoveSet,
    codomain: OutcomeSpace,
    max_contexts: int = DEFAULT_CONTEXT_BUDGET,
) -> TableSelection:
    """Freeze a selection function into an explicit table over all contexts."""
    rows = tuple(
        (p, e(p)) for p in enumerate_contexts(domain, codomain, max_contexts)
    )
    return TableSelection(rows)


@dataclass(frozen=True)
class ClosednessWitness:
    """A context where `good_move` is chosen but `excluded_move`, with the
    same outcome, is not."""

    context: GameContext
    good_move: str
    excluded_move: str


@dataclass(frozen=True)
class AttainmentWitness:
    """A context where `move` is chosen but its outcome is not approved."""

    context: GameContext
    move: str


@dataclass(frozen=True)
class CheckResult:
    """Outcome of an exhaustive law check; falsy iff a witness was found."""

    holds: bool
    witness: Optional[object] = None

    def __bool__(self) -> bool:
        return self.holds


def is_closed(
    e: SelectionFunction,
    domain: MoveSet,
    codomain: OutcomeSpace,
    max_contexts: int = DEFAULT_CONTEXT_BUDGET,
) -> CheckResult:
    """Does choosing a move commit the player to every move with the same
    outcome?  Sweeps every context; the first counterexample wins."""
    for p in enumerate_contexts(domain, codomain, max_contexts):
        chosen = e(p)
        chosen_set = set(chosen)
        for x in chosen:
            for y in p.domain:
                if y not in chosen_set and p(y) == p(x):
                    return CheckResult(False, ClosednessWitness(p, x, y))
    return CheckResult(True)


def attains(
    e: SelectionFunction,
    f: Quantifier,
    domain: MoveSet,
    codomain: OutcomeSpace,
    max_contexts: int = DEFAULT_CONTEXT_BUDGET,
) -> CheckResult:
    """Does every move `e` picks achieve an outcome `f` approves of?"""
    for p in enumerate_contexts(domain, codomain, max_contexts):
        good = set(f(p))
        for x in e(p):
            if p(x) not in good:
                return CheckResult(False, AttainmentWitness(p, x))
    return CheckResult(True)
