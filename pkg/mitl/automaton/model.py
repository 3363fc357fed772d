"""
Partially ordered two-way deterministic timed automata (po2DTA).

States carry a rank: every progress transition goes to a state of strictly
smaller rank, the initial state has the unique largest rank and only the two
terminal states have rank 0. Non-terminal states carry the direction the head
moves in while the automaton sits in them.
"""
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Tuple

import networkx as nx

from mitl.automaton.guards import TRUE_GUARD, Guard, overlapping_pairs
from mitl.core.words import LEFT_MARKER, MARKERS, RIGHT_MARKER
from mitl.exceptions import AutomatonError, InvalidAutomatonError

logger = logging.getLogger(__name__)


class Direction(Enum):
    RIGHT = 'right'
    LEFT = 'left'

    @property
    def step(self) -> int:
        return 1 if self is Direction.RIGHT else -1


@dataclass(frozen=True)
class State:
    name: str
    direction: Optional[Direction]
    rank: int

    @property
    def terminal(self) -> bool:
        return self.direction is None


@dataclass(frozen=True)
class Transition:
    source: str
    letter: str
    guard: Guard
    target: str
    resets: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'resets', tuple(sorted(set(self.resets))))

    def __str__(self):
        resets = f" / {', '.join(self.resets)} := T" if self.resets else ''
        return f"{self.source} --{self.letter}, {self.guard}{resets}--> {self.target}"


@dataclass(frozen=True)
class Po2dta:
    states: Tuple[State, ...]
    clocks: Tuple[str, ...]
    transitions: Tuple[Transition, ...]
    initial: str
    accept: str
    reject: str
    alphabet: Tuple[str, ...]
    name: str = field(default='', compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'states', tuple(self.states))
        object.__setattr__(self, 'clocks', tuple(self.clocks))
        object.__setattr__(self, 'transitions', tuple(self.transitions))
        object.__setattr__(self, 'alphabet', tuple(self.alphabet))

    @cached_property
    def _by_name(self) -> Dict[str, State]:
        return {state.name: state for state in self.states}

    @cached_property
    def _outgoing(self) -> Dict[Tuple[str, str], Tuple[Transition, ...]]:
        index = defaultdict(list)
        for transition in self.transitions:
            index[(transition.source, transition.letter)].append(transition)
        return {key: tuple(value) for key, value in index.items()}

    def state(self, name: str) -> State:
        try:
            return self._by_name[name]
        except KeyError:
            raise AutomatonError(f"Unknown state {name!r}") from None

    def outgoing(self, name: str, letter: str) -> Tuple[Transition, ...]:
        return self._outgoing.get((name, letter), ())

    def transitions_from(self, name: str) -> List[Transition]:
        return [t for t in self.transitions if t.source == name]

    @property
    def height(self) -> int:
        return self.state(self.initial).rank

    @property
    def letters(self) -> Tuple[str, ...]:
        return self.alphabet + MARKERS

    def constants(self) -> Tuple[int, ...]:
        return tuple(c for t in self.transitions for c in t.guard.constants())

    def validate(self) -> List[str]:
        """Structural violations; an empty list means the automaton is valid."""
        return list(self._violations)

    @cached_property
    def _violations(self) -> Tuple[str, ...]:
        problems = []
        names = [state.name for state in self.states]
        duplicates = sorted(n for n, count in Counter(names).items() if count > 1)
        if duplicates:
            problems.append(f"duplicate states: {', '.join(duplicates)}")
        for role, name in (('initial', self.initial), ('accept', self.accept), ('reject', self.reject)):
            if name not in self._by_name:
                problems.append(f"{role} state {name!r} is not declared")
        if problems:
            return tuple(problems)
        if self.accept == self.reject:
            problems.append("accept and reject states coincide")

        terminals = {self.accept, self.reject}
        for state in self.states:
            if state.name in terminals:
                if not state.terminal or state.rank != 0:
                    problems.append(f"terminal state {state.name} must have no direction and rank 0")
            elif state.terminal or state.rank <= 0:
                problems.append(f"state {state.name} needs a direction and a positive rank")
        top = self.state(self.initial).rank
        if self.initial in terminals:
            problems.append("initial state is terminal")
        higher = [s.name for s in self.states if s.name != self.initial and s.rank >= top]
        if higher:
            problems.append(f"initial state is not the unique maximum: {', '.join(higher)}")

        letters = set(self.letters)
        clocks = set(self.clocks)
        for transition in self.transitions:
            source = self._by_name.get(transition.source)
            target = self._by_name.get(transition.target)
            if source is None or target is None:
                problems.append(f"transition {transition} uses an undeclared state")
                continue
            if source.terminal:
                problems.append(f"terminal state {source.name} has an outgoing transition")
            if target.rank >= source.rank:
                problems.append(f"transition {transition} does not descend the order")
            if transition.letter not in letters:
                problems.append(f"transition {transition} reads unknown letter {transition.letter!r}")
            unknown = (transition.guard.clocks() | set(transition.resets)) - clocks
            if unknown:
                problems.append(f"transition {transition} uses unknown clocks {sorted(unknown)}")
            if transition.letter == RIGHT_MARKER and target.direction is Direction.RIGHT:
                problems.append(f"transition {transition} moves right from {RIGHT_MARKER}")
            if transition.letter == LEFT_MARKER and target.direction is Direction.LEFT:
                problems.append(f"transition {transition} moves left from {LEFT_MARKER}")

        for (source, letter), group in self._outgoing.items():
            for first, second in overlapping_pairs([t.guard for t in group]):
                problems.append(
                    f"nondeterminism at ({source}, {letter}): {group[first].guard} overlaps {group[second].guard}"
                )

        for state in self.states:
            if state.direction is Direction.RIGHT and not self.outgoing(state.name, RIGHT_MARKER):
                problems.append(f"right-moving state {state.name} has no transition on {RIGHT_MARKER}")
            if state.direction is Direction.LEFT and not self.outgoing(state.name, LEFT_MARKER):
                problems.append(f"left-moving state {state.name} has no transition on {LEFT_MARKER}")

        if problems:
            logger.warning("Automaton %s is invalid: %s", self.name or '?', '; '.join(problems))
        return tuple(problems)

    def check(self) -> 'Po2dta':
        problems = self.validate()
        if problems:
            raise InvalidAutomatonError(problems)
        return self

    def __str__(self):
        lines = [f"po2DTA {self.name}".rstrip()]
        lines.append(f"  alphabet: {', '.join(self.alphabet)}")
        lines.append(f"  clocks: {', '.join(self.clocks) or '-'}")
        lines.append(f"  initial {self.initial}, accept {self.accept}, reject {self.reject}")
        for state in sorted(self.states, key=lambda s: (-s.rank, s.name)):
            direction = state.direction.value if state.direction else 'terminal'
            lines.append(f"  state {state.name} [{direction}, rank {state.rank}]")
        lines.extend(f"  {transition}" for transition in self.transitions)
        return '\n'.join(lines)


def validate(automaton: Po2dta) -> List[str]:
    return automaton.validate()


def _fresh(name: str, taken: set) -> str:
    while name in taken:
        name += "'"
    return name


def sequential_compose(first: Po2dta, second: Po2dta, name: str = '') -> Po2dta:
    """
    ``first ; second``: accepting in ``first`` continues as ``second`` from its
    initial state, rejecting in ``first`` rejects. Shared clocks keep their
    values across the seam. Entering ``second`` moves the head like any other
    transition into its initial state.
    """
    return _joined(first, second, name).check()


def _joined(first: Po2dta, second: Po2dta, name: str = '') -> Po2dta:
    offset = second.height
    taken = {state.name for state in second.states}
    renamed = {}
    states = []
    for state in first.states:
        if state.name in (first.accept, first.reject):
            continue
        renamed[state.name] = _fresh(state.name, taken)
        taken.add(renamed[state.name])
        states.append(replace(state, name=renamed[state.name], rank=state.rank + offset))
    renamed[first.accept] = second.initial
    renamed[first.reject] = second.reject
    transitions = [
        replace(t, source=renamed[t.source], target=renamed[t.target]) for t in first.transitions
    ]
    return Po2dta(
        states=tuple(states) + second.states,
        clocks=tuple(dict.fromkeys(first.clocks + second.clocks)),
        transitions=tuple(transitions) + second.transitions,
        initial=renamed[first.initial],
        accept=second.accept,
        reject=second.reject,
        alphabet=tuple(sorted(set(first.alphabet) | set(second.alphabet))),
        name=name or f"{first.name};{second.name}",
    )


def compose_all(parts: Iterable[Po2dta], name: str = '') -> Po2dta:
    """Right fold of ``sequential_compose``; the result is validated once, at the end."""
    parts = list(parts)
    if not parts:
        raise AutomatonError("Nothing to compose")
    result = parts[-1]
    for part in reversed(parts[:-1]):
        result = _joined(part, result)
    return replace(result, name=name or result.name).check()


def complement(automaton: Po2dta) -> Po2dta:
    """Swap accepting and rejecting; runs that fall off stay non-accepting."""
    return replace(
        automaton, accept=automaton.reject, reject=automaton.accept,
        name=f"not {automaton.name}".strip(),
    )


def trivial_acceptor(alphabet: Iterable[str], name: str = 'true') -> Po2dta:
    """Walks left to the start marker and accepts; the language of all words."""
    return Po2dta(
        states=(State('s', Direction.LEFT, 1), State('t', None, 0), State('r', None, 0)),
        clocks=(),
        transitions=(Transition('s', LEFT_MARKER, TRUE_GUARD, 't'),),
        initial='s',
        accept='t',
        reject='r',
        alphabet=tuple(sorted(set(alphabet))),
        name=name,
    )


def transition_graph(automaton: Po2dta) -> nx.MultiDiGraph:
    """States as nodes, one edge per progress transition (key = its index)."""
    graph = nx.MultiDiGraph(name=automaton.name)
    for state in automaton.states:
        graph.add_node(state.name, direction=state.direction, rank=state.rank)
    for index, transition in enumerate(automaton.transitions):
        graph.add_edge(transition.source, transition.target, key=index, transition=transition)
    return graph
