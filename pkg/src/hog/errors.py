"""Exception types shared across the package."""


class HogError(Exception):
    """Base class for all errors raised by this package."""


class TypeMismatchError(HogError):
    """A selection function or quantifier was applied over an incompatible
    outcome space (wrong kind, or atoms that do not line up with the moves)."""


class CoordinateOutOfRangeError(HogError):
    """A coordinate index fell outside 1..arity of the outcome space."""


class IncompleteOrderError(HogError):
    """A preference order does not cover every outcome it is asked to rank."""


class BudgetExceededError(HogError):
    """An exhaustive sweep would exceed the configured enumeration budget."""


class InvalidProfileError(HogError):
    """A strategy profile does not match the game's move sets."""


class PlayerOutOfRangeError(HogError):
    """A player index fell outside 1..n for the game at hand."""


class UnknownBuiltinError(HogError):
    """No built-in game is registered under the requested name."""


class RenderError(HogError):
    """A game cannot be written back out in the text format."""
