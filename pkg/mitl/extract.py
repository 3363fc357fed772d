"""
From po2DTA back to lower-bound formulas.

For every path of progress transitions from the initial state, ``Enable``
is a formula over the end-marked word that holds exactly at the cell where
the run fires the last transition of the path. Clock values along a path are
stamps of such cells, so guards turn into formulas over ``Enable`` of the
prefix that last reset each clock. The result only uses intervals ``[c,inf)``
and ``(c,inf)`` and is evaluated at the start marker.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import networkx as nx

from mitl.automaton.guards import Constraint, Difference, Guard, Relation
from mitl.automaton.model import Direction, Po2dta, Transition, transition_graph
from mitl.core.formulas import (
    FALSE, TRUE, Atom, Eventually, Formula, Not, Once, conjunction, disjunction,
)
from mitl.core.intervals import ANYTIME, POSITIVE, Interval
from mitl.core.words import TimedWord
from mitl.exceptions import AutomatonError
from mitl.oracle import holds_at

logger = logging.getLogger(__name__)

SOME_EARLIER = Once(ANYTIME, TRUE)
#: Holds only on the start marker.
AT_FIRST = Not(SOME_EARLIER)
#: Holds on the start marker and the cell after it.
AT_FIRST_TWO = Not(Once(ANYTIME, SOME_EARLIER))


def earlier(f: Formula) -> Formula:
    return Once(ANYTIME, f)


def later(f: Formula) -> Formula:
    return Eventually(ANYTIME, f)


def _and(*parts: Formula) -> Formula:
    kept = [p for p in parts if p != TRUE]
    if any(p == FALSE for p in kept):
        return FALSE
    return conjunction(kept)


def _or(*parts: Formula) -> Formula:
    kept = [p for p in parts if p != FALSE]
    if any(p == TRUE for p in kept):
        return TRUE
    return disjunction(kept)


def _not(f: Formula) -> Formula:
    if f == TRUE:
        return FALSE
    if f == FALSE:
        return TRUE
    return f.arg if isinstance(f, Not) else Not(f)


@dataclass(frozen=True)
class ProgressPath:
    """A chain of progress transitions starting at the initial state."""
    automaton: Po2dta = field(compare=False, repr=False)
    edges: Tuple[Transition, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'edges', tuple(self.edges))
        expected = self.automaton.initial
        for edge in self.edges:
            if edge.source != expected:
                raise AutomatonError(
                    f"Ill-chained path: {edge} does not leave {expected}"
                )
            expected = edge.target

    def __len__(self):
        return len(self.edges)

    @property
    def end(self) -> str:
        """State reached by the path."""
        return self.edges[-1].target if self.edges else self.automaton.initial

    @property
    def prefix(self) -> 'ProgressPath':
        return ProgressPath(self.automaton, self.edges[:-1])

    def extend(self, edge: Transition) -> 'ProgressPath':
        return ProgressPath(self.automaton, self.edges + (edge,))

    def pref(self, clock: str) -> 'ProgressPath':
        """Longest prefix ending with a reset of ``clock``; empty when it is never reset."""
        for index in range(len(self.edges), 0, -1):
            if clock in self.edges[index - 1].resets:
                return ProgressPath(self.automaton, self.edges[:index])
        return ProgressPath(self.automaton, ())

    def __str__(self):
        return ' ; '.join(str(e) for e in self.edges) or '<>'


def trans(automaton: Po2dta, state: str) -> List[Tuple[str, Guard]]:
    """Letter-guard pairs of the progress transitions leaving ``state``."""
    return [(t.letter, t.guard) for t in automaton.transitions_from(state)]


class Extractor:
    """Builds Enable and guard formulas for one automaton, sharing equal subterms."""

    def __init__(self, automaton: Po2dta):
        self.automaton = automaton.check()
        self._enable: Dict[Tuple[Transition, ...], Formula] = {}

    def path(self, edges=()) -> ProgressPath:
        return ProgressPath(self.automaton, tuple(edges))

    def clock_anchor(self, path: ProgressPath, clock: str) -> Formula:
        """Holds exactly at the cell whose stamp ``clock`` has after ``path``."""
        return self.enable(path.pref(clock))

    @staticmethod
    def _exists(anchor: Formula, interval: Interval, elapsed: bool) -> Formula:
        """Some anchor cell lies at a time distance in ``interval``, behind (elapsed) or ahead."""
        if elapsed:
            strict, near = Once(interval, anchor), Eventually
        else:
            strict, near = Eventually(interval, anchor), Once
        if not interval.contains(0):
            return strict
        # same stamp, different cell on the other side
        same_stamp = _and(near(ANYTIME, anchor), _not(near(POSITIVE, anchor)))
        return _or(strict, anchor, same_stamp)

    def constraint_formula(self, path: ProgressPath, constraint: Constraint) -> Formula:
        anchor = self.clock_anchor(path, constraint.clock)
        elapsed = constraint.kind is Difference.ELAPSED
        c = constraint.constant

        def exists(interval):
            return self._exists(anchor, interval, elapsed)

        at_least = exists(Interval(c, None, False, True))
        beyond = exists(Interval(c, None, True, True))
        if constraint.relation is Relation.GE:
            return at_least
        if constraint.relation is Relation.GT:
            return beyond
        if constraint.relation is Relation.EQ:
            return _and(at_least, _not(beyond))
        anywhere = exists(ANYTIME)
        if constraint.relation is Relation.LT:
            return _and(anywhere, _not(at_least))
        return _and(anywhere, _not(beyond))

    def gsat(self, path: ProgressPath, guard: Guard) -> Formula:
        """Holds at a cell iff the valuation after ``path`` satisfies ``guard`` there."""
        return _and(*(self.constraint_formula(path, c) for c in guard.constraints))

    def enabled_somewhere(self, path: ProgressPath) -> Formula:
        """Some transition leaving the end state of ``path`` is enabled at the cell."""
        return _or(*(
            _and(Atom(letter), self.gsat(path, guard))
            for letter, guard in trans(self.automaton, path.end)
        ))

    def enable(self, path: ProgressPath) -> Formula:
        key = path.edges
        cached = self._enable.get(key)
        if cached is not None:
            return cached
        if not path.edges:
            result = AT_FIRST
        else:
            before = path.prefix
            edge = path.edges[-1]
            fires = _and(Atom(edge.letter), self.gsat(before, edge.guard))
            blocking = self.enabled_somewhere(before)
            direction = self.automaton.state(edge.source).direction
            if not before.edges and direction is Direction.LEFT:
                # the run starts on the first letter moving left
                result = _and(fires, AT_FIRST_TWO, _not(later(_and(AT_FIRST_TWO, blocking))))
            elif direction is Direction.RIGHT:
                since = earlier(self.enable(before))
                result = _and(fires, since, _not(earlier(_and(since, blocking))))
            else:
                until = later(self.enable(before))
                result = _and(fires, until, _not(later(_and(until, blocking))))
        self._enable[key] = result
        return result

    def accepting_paths(self) -> List[ProgressPath]:
        automaton = self.automaton
        graph = transition_graph(automaton)
        found = []
        for edge_path in nx.all_simple_edge_paths(graph, automaton.initial, automaton.accept):
            edges = tuple(graph.edges[u, v, key]['transition'] for u, v, key in edge_path)
            found.append(self.path(edges))
        order = {t: index for index, t in enumerate(automaton.transitions)}
        found.sort(key=lambda p: [order[e] for e in p.edges])
        return found

    def formula(self) -> Formula:
        parts = []
        for path in self.accepting_paths():
            enabled = self.enable(path)
            parts.append(_or(enabled, later(enabled)))
        logger.debug("Extracted %d accepting paths from %s", len(parts), self.automaton.name or '?')
        return _or(*parts)


def gsat(path: ProgressPath, guard: Guard) -> Formula:
    return Extractor(path.automaton).gsat(path, guard)


def enable(path: ProgressPath) -> Formula:
    return Extractor(path.automaton).enable(path)


def pref(path: ProgressPath, clock: str) -> ProgressPath:
    return path.pref(clock)


def accepting_paths(automaton: Po2dta) -> List[ProgressPath]:
    """Every path of progress transitions from the initial to the accepting state."""
    return Extractor(automaton).accepting_paths()


def extract_formula(automaton: Po2dta) -> Formula:
    """
    Formula over the alphabet plus end markers that holds at the start marker
    of the end-marked word exactly when the automaton accepts the word.
    """
    return Extractor(automaton).formula()


def accepts_extended(formula: Formula, word: TimedWord) -> bool:
    """Evaluate an extracted formula on ``word``: at the start marker of its end-marked form."""
    return holds_at(word.extended(), 1, formula)
