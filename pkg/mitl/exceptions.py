"""
Errors raised by the toolkit.
"""


class MitlError(Exception):
    """Base class of every error the toolkit raises on purpose."""


class FormulaSyntaxError(MitlError, ValueError):
    """Formula text does not follow the grammar."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class UnknownAtomError(MitlError, ValueError):
    """An atom is not part of the declared alphabet."""


class IntervalError(MitlError, ValueError):
    """Malformed interval, or an operation the interval does not support."""


class WordFormatError(MitlError, ValueError):
    """Malformed timed word."""


class PositionError(MitlError, IndexError):
    """Position outside the word."""


class FragmentError(MitlError, ValueError):
    """The formula lies outside the fragment an operation accepts."""


class AutomatonError(MitlError):
    """Malformed automaton description or failed automaton operation."""


class InvalidAutomatonError(AutomatonError):
    """The automaton violates the structural rules of a po2DTA."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__('; '.join(self.violations) or 'invalid automaton')


class NondeterminismError(AutomatonError):
    """More than one progress transition was enabled in a configuration."""


class UnknownClockError(AutomatonError, KeyError):
    """A guard or reset refers to a clock the valuation does not know."""

    def __str__(self):
        return str(self.args[0]) if self.args else ''


class TilingError(MitlError, ValueError):
    """Malformed tiling system, instance or tiling."""
