"""
Finite timed words with exact rational time stamps.
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

from mitl.exceptions import PositionError, WordFormatError

#: End-markers framing a word for two-way automata.
LEFT_MARKER = '_begin'
RIGHT_MARKER = '_end'
MARKERS = (LEFT_MARKER, RIGHT_MARKER)

SYMBOL_RE = re.compile(r'^[A-Za-z][A-Za-z0-9_]*$')
RESERVED_SYMBOLS = frozenset({'F', 'P', 'true', 'false', 'inf'})


def check_symbol(symbol: str) -> str:
    """Validate a user alphabet symbol; markers and keywords are reserved."""
    if not isinstance(symbol, str) or not SYMBOL_RE.match(symbol):
        raise WordFormatError(f"Invalid event symbol: {symbol!r}")
    if symbol in RESERVED_SYMBOLS:
        raise WordFormatError(f"Event symbol {symbol!r} is a reserved word")
    return symbol


def to_stamp(value) -> Fraction:
    """Convert ``3/2``, ``1.25``, ints or Fractions to an exact stamp."""
    try:
        stamp = Fraction(value) if not isinstance(value, str) else Fraction(value.strip())
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise WordFormatError(f"Invalid time stamp: {value!r}") from exc
    if stamp < 0:
        raise WordFormatError(f"Time stamps must be non-negative, got {value!r}")
    return stamp


@dataclass(frozen=True)
class TimedWord:
    """
    A finite sequence of (event, stamp) pairs with strictly increasing stamps.

    Positions are 1-based: ``letter(1)`` is the first event.
    """
    events: Tuple[str, ...]
    stamps: Tuple[Fraction, ...]

    def __post_init__(self):
        events = tuple(self.events)
        stamps = tuple(to_stamp(s) for s in self.stamps)
        if len(events) != len(stamps):
            raise WordFormatError(
                f"{len(events)} events but {len(stamps)} time stamps"
            )
        for previous, current in zip(stamps, stamps[1:]):
            if not self._ordered(previous, current):
                raise WordFormatError(
                    f"Time stamps must be strictly increasing: {previous} then {current}"
                )
        object.__setattr__(self, 'events', events)
        object.__setattr__(self, 'stamps', stamps)

    @staticmethod
    def _ordered(previous: Fraction, current: Fraction) -> bool:
        return previous < current

    @classmethod
    def of(cls, *pairs) -> 'TimedWord':
        """Build from ``(event, stamp)`` pairs: ``TimedWord.of(('a', 0), ('c', '5/2'))``."""
        return cls(tuple(e for e, _ in pairs), tuple(s for _, s in pairs))

    def __len__(self):
        return len(self.events)

    def __iter__(self):
        return iter(zip(self.events, self.stamps))

    @property
    def positions(self) -> range:
        return range(1, len(self.events) + 1)

    def check_position(self, i: int) -> int:
        if not 1 <= i <= len(self.events):
            raise PositionError(f"Position {i} outside 1..{len(self.events)}")
        return i

    def letter(self, i: int) -> str:
        return self.events[self.check_position(i) - 1]

    def stamp(self, i: int) -> Fraction:
        return self.stamps[self.check_position(i) - 1]

    @property
    def anchored(self) -> bool:
        """True when the first event happens at time 0."""
        return bool(self.stamps) and self.stamps[0] == 0

    def require_anchored(self) -> 'TimedWord':
        if not self.events:
            raise WordFormatError("Language membership needs a non-empty word")
        if not self.anchored:
            raise WordFormatError(
                f"Language membership needs the first event at time 0, got {self.stamps[0]}"
            )
        return self

    def alphabet(self) -> frozenset:
        return frozenset(self.events)

    def untimed(self) -> Tuple[str, ...]:
        return self.events

    @property
    def last_stamp(self) -> Fraction:
        return self.stamps[-1] if self.stamps else Fraction(0)

    def extended(self) -> 'ExtendedWord':
        """The end-marked word: (LEFT_MARKER, 0) word (RIGHT_MARKER, last stamp)."""
        return ExtendedWord(
            (LEFT_MARKER,) + self.events + (RIGHT_MARKER,),
            (Fraction(0),) + self.stamps + (self.last_stamp,),
        )

    def __str__(self):
        return format_word(self)


class ExtendedWord(TimedWord):
    """
    End-marked word. Stamps only have to be non-decreasing: the markers share
    their stamps with the first and last events.
    """

    @staticmethod
    def _ordered(previous: Fraction, current: Fraction) -> bool:
        return previous <= current

    def inner(self) -> TimedWord:
        return TimedWord(self.events[1:-1], self.stamps[1:-1])


def format_stamp(stamp: Fraction) -> str:
    stamp = Fraction(stamp)
    if stamp.denominator == 1:
        return str(stamp.numerator)
    return f"{stamp.numerator}/{stamp.denominator}"


def format_word(word: TimedWord) -> str:
    return ' '.join(f"{event}@{format_stamp(stamp)}" for event, stamp in word)


def parse_word(text: str, alphabet: Optional[Iterable[str]] = None) -> TimedWord:
    """
    Parse the ``sym@num/den`` text format, e.g. ``c@1/5 b@6/5`` or ``a@0 c@2.5``.

    Args:
        text: Whitespace separated tokens
        alphabet: When given, every event must belong to it

    Returns:
        The parsed word
    """
    allowed = None if alphabet is None else frozenset(alphabet)
    events, stamps = [], []
    for token in text.split():
        symbol, sep, stamp = token.partition('@')
        if not sep or not symbol or not stamp:
            raise WordFormatError(f"Malformed token {token!r}; expected sym@time")
        if symbol not in MARKERS:
            check_symbol(symbol)
        if allowed is not None and symbol not in allowed:
            raise WordFormatError(f"Event {symbol!r} is not in the alphabet")
        events.append(symbol)
        stamps.append(to_stamp(stamp))
    return TimedWord(tuple(events), tuple(stamps))


def word_from_pairs(pairs: Sequence[Tuple[str, object]]) -> TimedWord:
    return TimedWord.of(*pairs)
