"""Exception hierarchy shared by the library and the CLI.

The CLI maps each class to a fixed exit code, so library code should pick
the class by failure kind: bad caller input (ArgumentError), malformed or
inconsistent files (DataError), numerically degenerate problems
(NumericError).
"""


class MpiViewError(Exception):
    """Base class for all errors raised by this package."""


class ArgumentError(MpiViewError, ValueError):
    """Invalid argument or precondition violation. CLI exit code 2."""


class DataError(MpiViewError):
    """Malformed, inconsistent, or unparsable data. CLI exit code 3."""


class NumericError(MpiViewError):
    """Degenerate or numerically unsolvable problem. CLI exit code 4."""
