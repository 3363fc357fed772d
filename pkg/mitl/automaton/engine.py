"""
Deterministic two-way run engine.

The head moves over the end-marked word, position 0 being the start marker
and ``n+1`` the end marker. In each step the unique enabled progress
transition fires (its resets take the current stamp and the head moves in the
direction of the target state, or stays on a terminal state); without an
enabled transition the automaton loops and the head moves in the direction of
the current state.
"""
import logging
from collections.abc import Mapping
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple

from mitl.automaton.model import Po2dta, Transition
from mitl.conf import get_setting
from mitl.core.words import ExtendedWord, TimedWord, format_stamp
from mitl.exceptions import AutomatonError, NondeterminismError, PositionError, UnknownClockError

logger = logging.getLogger(__name__)


class ClockValuation(Mapping):
    """Immutable map from clocks to stamps."""

    def __init__(self, values: Optional[Dict[str, Fraction]] = None):
        self._values = {clock: Fraction(value) for clock, value in (values or {}).items()}

    @classmethod
    def initial(cls, clocks: Iterable[str]) -> 'ClockValuation':
        return cls({clock: Fraction(0) for clock in clocks})

    def __getitem__(self, clock: str) -> Fraction:
        try:
            return self._values[clock]
        except KeyError:
            raise UnknownClockError(f"Unknown clock {clock!r}") from None

    def __iter__(self):
        return iter(self._values)

    def __len__(self):
        return len(self._values)

    def __hash__(self):
        return hash(frozenset(self._values.items()))

    def __eq__(self, other):
        if isinstance(other, ClockValuation):
            return self._values == other._values
        return NotImplemented

    def update(self, clock: str, stamp) -> 'ClockValuation':
        """The valuation with ``clock`` set to ``stamp`` and every other clock unchanged."""
        if clock not in self._values:
            raise UnknownClockError(f"Unknown clock {clock!r}")
        values = dict(self._values)
        values[clock] = Fraction(stamp)
        return ClockValuation(values)

    def reset(self, clocks: Iterable[str], stamp) -> 'ClockValuation':
        valuation = self
        for clock in clocks:
            valuation = valuation.update(clock, stamp)
        return valuation

    def __repr__(self):
        inner = ', '.join(f"{c}={format_stamp(v)}" for c, v in sorted(self._values.items()))
        return f"ClockValuation({inner})"


class Verdict(Enum):
    ACCEPT = 'accept'
    REJECT = 'reject'
    FELL_OFF = 'fell-off'


@dataclass(frozen=True)
class Configuration:
    state: str
    valuation: ClockValuation
    head: int
    fired: Optional[Transition] = None

    def describe(self, word: ExtendedWord) -> str:
        if 0 <= self.head < len(word):
            cell = f"{word.events[self.head]}@{format_stamp(word.stamps[self.head])}"
        else:
            cell = 'off'
        clocks = ' '.join(f"{c}={format_stamp(v)}" for c, v in sorted(self.valuation.items()))
        fired = f" via {self.fired}" if self.fired else ''
        return f"{self.state} @{self.head} [{cell}] {clocks}{fired}".rstrip()


@dataclass(frozen=True)
class RunResult:
    verdict: Verdict
    trace: Tuple[Configuration, ...]
    word: ExtendedWord

    @property
    def accepted(self) -> bool:
        return self.verdict is Verdict.ACCEPT

    @property
    def final(self) -> Configuration:
        return self.trace[-1]

    @property
    def valuation(self) -> ClockValuation:
        return self.final.valuation

    @property
    def steps(self) -> int:
        return len(self.trace) - 1

    def fired(self) -> Tuple[Transition, ...]:
        return tuple(c.fired for c in self.trace if c.fired is not None)

    def describe(self) -> str:
        return '\n'.join(c.describe(self.word) for c in self.trace)


def step_limit(automaton: Po2dta, word: ExtendedWord) -> int:
    cells = len(word)
    return (automaton.height + 1 + get_setting('RUN_STEP_SLACK')) * cells


def run(automaton: Po2dta, word: TimedWord, valuation: Optional[Mapping] = None,
        head: int = 1, check: bool = True) -> RunResult:
    """
    Run from the initial state with ``valuation`` (default all zero) and the
    head on cell ``head`` of the end-marked word.

    A plain word is end-marked first; an ``ExtendedWord`` is used as is.

    Raises:
        InvalidAutomatonError: When ``check`` is set and validation fails
        PositionError: Start cell outside the end-marked word
        NondeterminismError: Two progress transitions enabled at once
    """
    if check:
        automaton.check()
    cells = word if isinstance(word, ExtendedWord) else word.extended()
    if not 0 <= head < len(cells):
        raise PositionError(f"Start cell {head} outside 0..{len(cells) - 1}")
    if valuation is None:
        current = ClockValuation.initial(automaton.clocks)
    else:
        current = ClockValuation({c: valuation[c] for c in automaton.clocks})

    state = automaton.state(automaton.initial)
    trace = [Configuration(state.name, current, head)]
    limit = step_limit(automaton, cells)
    terminals = {automaton.accept: Verdict.ACCEPT, automaton.reject: Verdict.REJECT}

    while state.name not in terminals:
        if len(trace) > limit:
            raise AutomatonError(f"Run exceeded {limit} steps; the order is not respected")
        letter, now = cells.events[head], cells.stamps[head]
        enabled = [
            t for t in automaton.outgoing(state.name, letter) if t.guard.holds(current, now)
        ]
        if len(enabled) > 1:
            raise NondeterminismError(
                f"{len(enabled)} transitions enabled in {state.name} at cell {head}: "
                + '; '.join(str(t) for t in enabled)
            )
        fired = None
        if enabled:
            fired = enabled[0]
            current = current.reset(fired.resets, now)
            state = automaton.state(fired.target)
            move = 0 if state.terminal else state.direction.step
        else:
            move = state.direction.step
        head += move
        trace.append(Configuration(state.name, current, head, fired))
        if not 0 <= head < len(cells):
            logger.warning(
                "Run of %s fell off the word %s in state %s", automaton.name or '?', cells, state.name
            )
            return RunResult(Verdict.FELL_OFF, tuple(trace), cells)

    return RunResult(terminals[state.name], tuple(trace), cells)


def accepts(automaton: Po2dta, word: TimedWord) -> bool:
    """Membership in L(A): the run from the first letter with all clocks at 0 accepts."""
    result = run(automaton, word)
    return result.accepted
