"""Finite games of higher-order players and exhaustive equilibrium search.

A game fixes a move set and a selection function per player, an outcome
space, and a total outcome function on strategy profiles.  Equilibrium
checking is by definition chasing: for each player build the unilateral
context (what they could steer the outcome to, everyone else held fixed)
and ask their selection function, or its lift, whether the profile stands.

The classical layer (payoff matrices, argmax players, brute-force Nash)
exists so the general machinery can be cross-checked against ordinary
game theory on the games where both apply.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product as cartesian
from typing import Iterator, Mapping, Optional

from .core import (
    ArgmaxCoord,
    AtomOutcomes,
    GameContext,
    Lifted,
    MoveSet,
    OutcomeSpace,
    ProductOutcomes,
    SelectionFunction,
    VectorOutcomes,
    check_shape,
    may_be_empty,
)
from .errors import (
    BudgetExceededError,
    InvalidProfileError,
    PlayerOutOfRangeError,
)

#: Cap on the number of strategy profiles an exhaustive sweep will visit.
DEFAULT_PROFILE_BUDGET = 10**7


@dataclass(frozen=True)
class Player:
    name: str
    moves: MoveSet
    selection: SelectionFunction


@dataclass(frozen=True)
class OutcomeFunction:
    """Total map from strategy profiles to outcomes.

    `kind` is one of "majority", "identity", "table".  Only tables carry
    entries; the other two are computed from the profile directly.
    """

    kind: str
    entries: tuple = ()

    def __post_init__(self):
        if self.kind not in ("majority", "identity", "table"):
            raise ValueError(f"unknown outcome function kind {self.kind!r}")
        ent = self.entries
        if isinstance(ent, Mapping):
            ent = tuple(ent.items())
        ent = tuple((tuple(profile), value) for profile, value in ent)
        if ent and self.kind != "table":
            raise ValueError(f"{self.kind} outcome functions take no entries")
        object.__setattr__(self, "entries", ent)

    @cached_property
    def _table(self) -> dict:
        return dict(self.entries)

    def __call__(self, profile: tuple):
        profile = tuple(profile)
        if self.kind == "identity":
            return profile
        if self.kind == "majority":
            # ties broken toward the alphabetically first label; with an
            # odd number of voters over two candidates they never arise
            return max(sorted(set(profile)), key=profile.count)
        try:
            return self._table[profile]
        except KeyError:
            raise InvalidProfileError(f"no outcome listed for profile {profile!r}") from None


def majority_rule() -> OutcomeFunction:
    return OutcomeFunction("majority")


def identity_rule() -> OutcomeFunction:
    return OutcomeFunction("identity")


def outcome_table(entries) -> OutcomeFunction:
    return OutcomeFunction("table", entries)


@dataclass(frozen=True)
class Game:
    """A finite game; construction validates shapes so evaluation cannot.

    Rejected here: duplicate player names, selections that cannot match the
    outcome space, selections that can come back empty (they would make a
    player impossible to satisfy), and outcome functions that are partial
    or step outside the outcome space.
    """

    name: str
    players: tuple[Player, ...]
    outcomes: OutcomeSpace
    outcome_fn: OutcomeFunction

    def __post_init__(self):
        object.__setattr__(self, "players", tuple(self.players))
        if not self.players:
            raise ValueError("a game needs at least one player")
        names = [p.name for p in self.players]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate player names in {names!r}")
        for p in self.players:
            if may_be_empty(p.selection):
                raise ValueError(
                    f"player {p.name}: selection can be empty on some contexts; "
                    "wrap it in a lexical tie-breaker or give it a fallback"
                )
            check_shape(p.selection, p.moves, self.outcomes)
        self._check_outcome_fn()

    def _check_outcome_fn(self):
        fn = self.outcome_fn
        if fn.kind == "identity":
            expected = ProductOutcomes(tuple(p.moves for p in self.players))
            if self.outcomes != expected:
                raise ValueError(
                    "identity outcome function needs the outcome space to be "
                    "exactly the product of the players' move sets"
                )
        elif fn.kind == "majority":
            if not isinstance(self.outcomes, AtomOutcomes):
                raise ValueError("majority rule needs atom outcomes")
            for p in self.players:
                for label in p.moves:
                    if label not in self.outcomes:
                        raise ValueError(
                            f"majority winner {label!r} would fall outside the outcome space"
                        )
        else:
            listed = set()
            for profile, value in fn.entries:
                if profile in listed:
                    raise ValueError(f"profile {profile!r} listed twice")
                listed.add(profile)
                if len(profile) != len(self.players) or any(
                    x not in p.moves for x, p in zip(profile, self.players)
                ):
                    raise InvalidProfileError(
                        f"table profile {profile!r} does not match the move sets"
                    )
                if value not in self.outcomes:
                    raise ValueError(
                        f"outcome {value!r} for {profile!r} lies outside the outcome space"
                    )
            if len(listed) != self.profile_count():
                raise ValueError(
                    f"outcome table covers {len(listed)} of "
                    f"{self.profile_count()} profiles"
                )
            # canonicalize entry order so equal games compare equal however
            # their tables were written down
            rank = {s: k for k, s in enumerate(self.profiles())}
            ordered = tuple(sorted(fn.entries, key=lambda e: rank[e[0]]))
            if ordered != fn.entries:
                object.__setattr__(self, "outcome_fn", OutcomeFunction("table", ordered))

    @property
    def n(self) -> int:
        return len(self.players)

    def profile_count(self) -> int:
        return math.prod(len(p.moves) for p in self.players)

    def profiles(self) -> Iterator[tuple]:
        """All strategy profiles, lexicographic in declaration order."""
        return cartesian(*(p.moves.labels for p in self.players))

    def check_profile(self, profile) -> tuple:
        profile = tuple(profile)
        if len(profile) != self.n:
            raise InvalidProfileError(
                f"profile {profile!r} has {len(profile)} moves for {self.n} players"
            )
        for x, p in zip(profile, self.players):
            if x not in p.moves:
                raise InvalidProfileError(
                    f"{x!r} is not a move of player {p.name}"
                )
        return profile

    def outcome(self, profile):
        return self.outcome_fn(self.check_profile(profile))


def unilateral_context(game: Game, profile, i: int) -> GameContext:
    """The context player i faces at `profile`: their own deviations mapped
    through the outcome function with everyone else pinned."""
    s = game.check_profile(profile)
    if not 1 <= i <= game.n:
        raise PlayerOutOfRangeError(f"player index {i} out of range 1..{game.n}")
    moves = game.players[i - 1].moves
    values = tuple(
        game.outcome_fn(s[: i - 1] + (x,) + s[i:]) for x in moves
    )
    return GameContext(moves, game.outcomes, values)


def is_quantifier_equilibrium(game: Game, profile) -> tuple[bool, tuple[str, ...]]:
    """Does each player's quantifier approve the realized outcome?

    Returns the verdict together with the names of the players whose
    standard the outcome fails (the would-be defectors).
    """
    s = game.check_profile(profile)
    r = game.outcome_fn(s)
    defectors = []
    for i, p in enumerate(game.players, start=1):
        u = unilateral_context(game, s, i)
        if r not in Lifted(p.selection)(u):
            defectors.append(p.name)
    return (not defectors, tuple(defectors))


def is_selection_equilibrium(game: Game, profile) -> tuple[bool, tuple[str, ...]]:
    """Does each player's selection function pick their own move?"""
    s = game.check_profile(profile)
    defectors = []
    for i, p in enumerate(game.players, start=1):
        u = unilateral_context(game, s, i)
        if s[i - 1] not in p.selection(u):
            defectors.append(p.name)
    return (not defectors, tuple(defectors))


@dataclass(frozen=True)
class ProfileResult:
    """Verdicts for one strategy profile under both equilibrium notions."""

    profile: tuple
    outcome: object
    quantifier_eq: bool
    quantifier_defectors: tuple[str, ...]
    selection_eq: bool
    selection_defectors: tuple[str, ...]


@dataclass(frozen=True)
class EquilibriumReport:
    """Every profile of a game judged under both equilibrium notions."""

    game: Game
    rows: tuple[ProfileResult, ...]

    def quantifier_equilibria(self) -> tuple:
        return tuple(r.profile for r in self.rows if r.quantifier_eq)

    def selection_equilibria(self) -> tuple:
        return tuple(r.profile for r in self.rows if r.selection_eq)

    def row(self, profile) -> ProfileResult:
        profile = tuple(profile)
        for r in self.rows:
            if r.profile == profile:
                return r
        raise InvalidProfileError(f"no row for profile {profile!r}")


def evaluate_profile(game: Game, profile) -> ProfileResult:
    s = game.check_profile(profile)
    q_ok, q_def = is_quantifier_equilibrium(game, s)
    s_ok, s_def = is_selection_equilibrium(game, s)
    return ProfileResult(s, game.outcome_fn(s), q_ok, q_def, s_ok, s_def)


def enumerate_equilibria(
    game: Game, max_profiles: int = DEFAULT_PROFILE_BUDGET
) -> EquilibriumReport:
    """Judge every profile; profiles appear in lexicographic order."""
    total = game.profile_count()
    if total > max_profiles:
        raise BudgetExceededError(
            f"{total} profiles exceed the budget of {max_profiles}"
        )
    return EquilibriumReport(game, tuple(evaluate_profile(game, s) for s in game.profiles()))


# ---------------------------------------------------------------------------
# Classical games
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PayoffMatrix:
    """A normal-form game: one payoff vector per profile, exact rationals."""

    name: str
    players: tuple[str, ...]
    move_sets: tuple[MoveSet, ...]
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "players", tuple(self.players))
        object.__setattr__(
            self,
            "move_sets",
            tuple(m if isinstance(m, MoveSet) else MoveSet(m) for m in self.move_sets),
        )
        if len(self.players) != len(self.move_sets):
            raise ValueError("one move set per player, please")
        if len(set(self.players)) != len(self.players):
            raise ValueError(f"duplicate player names in {self.players!r}")
        ent = self.entries
        if isinstance(ent, Mapping):
            ent = tuple(ent.items())
        n = len(self.players)
        norm = []
        seen = set()
        for profile, payoffs in ent:
            profile = tuple(profile)
            payoffs = tuple(Fraction(v) for v in payoffs)
            if len(profile) != n or any(
                x not in m for x, m in zip(profile, self.move_sets)
            ):
                raise InvalidProfileError(f"bad profile {profile!r}")
            if len(payoffs) != n:
                raise ValueError(
                    f"{profile!r}: {len(payoffs)} payoffs for {n} players"
                )
            if profile in seen:
                raise ValueError(f"profile {profile!r} listed twice")
            seen.add(profile)
            norm.append((profile, payoffs))
        if len(seen) != math.prod(len(m) for m in self.move_sets):
            raise ValueError("payoff matrix does not cover every profile")
        object.__setattr__(self, "entries", tuple(norm))

    @cached_property
    def _table(self) -> dict:
        return dict(self.entries)

    def profiles(self) -> Iterator[tuple]:
        return cartesian(*(m.labels for m in self.move_sets))

    def payoff(self, profile) -> tuple[Fraction, ...]:
        try:
            return self._table[tuple(profile)]
        except KeyError:
            raise InvalidProfileError(f"no payoffs for profile {profile!r}") from None


def classical_game(matrix: PayoffMatrix, name: Optional[str] = None) -> Game:
    """Recast a payoff matrix as a game of payoff-maximising players."""
    levels = sorted({v for _, pay in matrix.entries for v in pay})
    outcomes = VectorOutcomes(len(matrix.players), tuple(levels))
    players = tuple(
        Player(nm, ms, ArgmaxCoord(i))
        for i, (nm, ms) in enumerate(zip(matrix.players, matrix.move_sets), start=1)
    )
    return Game(name or matrix.name, players, outcomes, outcome_table(matrix.entries))


def brute_force_nash(matrix: PayoffMatrix) -> tuple:
    """Pure Nash profiles by direct deviation checking.

    Stays entirely inside the matrix: no contexts, no selection functions.
    A profile survives iff no player can strictly raise their own payoff
    by switching their move alone.
    """
    result = []
    for s in matrix.profiles():
        base = matrix.payoff(s)
        stable = True
        for i, m in enumerate(matrix.move_sets):
            for x in m:
                if x == s[i]:
                    continue
                if matrix.payoff(s[:i] + (x,) + s[i + 1 :])[i] > base[i]:
                    stable = False
                    break
            if not stable:
                break
        if stable:
            result.append(s)
    return tuple(result)
