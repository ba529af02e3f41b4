"""Exception taxonomy shared by all modules.

Everything derives from ValueError except InvariantViolation, which marks
an internal arithmetic bug (a proved inequality failing can only mean the
implementation is wrong, never the mathematics).
"""


class BoundsError(ValueError):
    """An argument fell outside a table or range bound."""


class DomainError(ValueError):
    """An argument violated a mathematical hypothesis."""


class CapacityError(ValueError):
    """A request exceeded a declared computational budget."""


class DivergenceError(ValueError):
    """A series requested for summation provably diverges."""


class InsufficientDataError(ValueError):
    """A fit was requested with too few usable data points."""


class InvariantViolation(RuntimeError):
    """A proved identity or inequality failed: an implementation bug."""
