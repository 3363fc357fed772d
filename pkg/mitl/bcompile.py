"""
Compiler from bounded formulas (every interval bounded and non-punctual) to
po2DTA.

A modality ``F_<l,l+1> f`` evaluated at a position with stamp in ``[r,r+1)``
only depends on where ``f`` first and last holds inside two neighbouring unit
intervals. The closure set collects every (modarg, unit) pair needed to decide
the formula on ``[0,1)``; each pair gets a clock for its first occurrence
(``x``) and one for its last occurrence (``y``), filled in by one pass.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from mitl.automaton.guards import (
    Guard, GuardExpr, Relation, all_of, any_of, elapsed, remaining,
)
from mitl.automaton.model import Direction, Po2dta, compose_all
from mitl.core.formulas import Formula, Modal
from mitl.core.fragments import Fragment, classify_fragment
from mitl.core.intervals import Interval
from mitl.core.normal_form import NormalFormula, to_normal_form
from mitl.core.words import LEFT_MARKER, RIGHT_MARKER
from mitl.exceptions import FragmentError
from mitl.lbcompile import (
    ZERO_CLOCK, PassBuilder, check_pass, compile_alphabet, guard_expression, reset_pass,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClosureItem:
    formula: NormalFormula
    unit: int

    @property
    def interval(self) -> Interval:
        return Interval(self.unit, self.unit + 1, False, True)


def direct_modalities(formula: NormalFormula) -> List[Modal]:
    """Modal nodes in the letter bodies of ``formula``, not inside their arguments."""
    found = []

    def visit(node: Formula):
        if isinstance(node, Modal):
            if node not in found:
                found.append(node)
            return
        for child in node.children():
            visit(child)

    for body in formula.children():
        visit(body)
    return found


def successor_units(modality: Modal, unit: int) -> List[int]:
    """Units of the argument that decide ``modality`` on ``[unit, unit+1)``; negative units are dropped."""
    units = []
    for piece in modality.interval.split():
        l = piece.lower
        pair = (unit + l, unit + l + 1) if modality.future else (unit - l - 1, unit - l)
        units.extend(u for u in pair if u >= 0 and u not in units)
    return units


class ClosureSet:
    """
    Closure of a formula on a unit interval, listed bottom-up: innermost
    modargs first, units ascending within a modarg.
    """

    def __init__(self, top: NormalFormula, unit: int = 0):
        self.top = ClosureItem(top, unit)
        self.order = {m: index for index, m in enumerate(top.modargs(), start=1)}
        self.order[top] = 0
        self._memo: Dict[ClosureItem, frozenset] = {}
        members = self.closure_of(self.top)
        self.items: Tuple[ClosureItem, ...] = tuple(sorted(members, key=self._rank))

    def _rank(self, item: ClosureItem):
        index = self.order[item.formula]
        return (index == 0, index, item.unit)

    def closure_of(self, item: ClosureItem) -> frozenset:
        cached = self._memo.get(item)
        if cached is not None:
            return cached
        members = {item}
        for modality in direct_modalities(item.formula):
            for unit in successor_units(modality, item.unit):
                members |= self.closure_of(ClosureItem(modality.arg, unit))
        result = frozenset(members)
        self._memo[item] = result
        return result

    def strict(self, item: ClosureItem) -> frozenset:
        return self.closure_of(item) - {item}

    def ident(self, formula: NormalFormula) -> int:
        return self.order[formula]

    def first_clock(self, item: ClosureItem) -> str:
        return f"x_{self.order[item.formula]}_r{item.unit}"

    def last_clock(self, item: ClosureItem) -> str:
        return f"y_{self.order[item.formula]}_r{item.unit}"

    @property
    def clocks(self) -> Tuple[str, ...]:
        names = [ZERO_CLOCK]
        for item in self.items:
            names.extend((self.first_clock(item), self.last_clock(item)))
        return tuple(names)

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __contains__(self, item):
        return item in self.items


def closure(formula: Formula, unit: int = 0, alphabet: Optional[Iterable[str]] = None) -> ClosureSet:
    top = formula if isinstance(formula, NormalFormula) else to_normal_form(formula, alphabet)
    return ClosureSet(top, unit)


def _unit_clause(modality: Modal, piece: Interval, unit: int, closure_set: ClosureSet) -> GuardExpr:
    l = piece.lower
    arg = modality.arg

    def item(u):
        return ClosureItem(arg, u) if u >= 0 else None

    def first(it):
        return closure_set.first_clock(it)

    def last(it):
        return closure_set.last_clock(it)

    clauses = []
    if modality.future:
        near, far = item(unit + l), item(unit + l + 1)
        if near is not None:
            clauses.append(Guard.of(
                remaining(last(near), Relation.GT, 0),
                remaining(last(near), Relation.GT if piece.lower_open else Relation.GE, l),
            ))
        if far is not None:
            clauses.append(Guard.of(
                remaining(last(far), Relation.GT, 0),
                remaining(first(far), Relation.LT if piece.upper_open else Relation.LE, l + 1),
            ))
    else:
        far, near = item(unit - l - 1), item(unit - l)
        if far is not None:
            clauses.append(Guard.of(
                elapsed(first(far), Relation.GT, 0),
                elapsed(last(far), Relation.LT if piece.upper_open else Relation.LE, l + 1),
            ))
        if near is not None:
            clauses.append(Guard.of(
                elapsed(first(near), Relation.GT, 0),
                elapsed(first(near), Relation.GT if piece.lower_open else Relation.GE, l),
            ))
    return any_of(clauses)


def cond_bounded(modality: Modal, unit: int, closure_set: ClosureSet) -> GuardExpr:
    """
    Clock condition for a bounded modality at a position with stamp in
    ``[unit, unit+1)``: a disjunction over the unit pieces of its interval.

    For a piece <l,l+1> of F, the argument must either occur last in
    ``[unit+l, unit+l+1)`` at least ``l`` later, or occur first in
    ``[unit+l+1, unit+l+2)`` at most ``l+1`` later; P mirrors this with
    ``[unit-l-1, unit-l)`` and ``[unit-l, unit-l+1)``.
    """
    interval = modality.interval
    if not interval.bounded or interval.punctual:
        raise FragmentError(f"{modality} is not bounded and non-punctual")
    return any_of(_unit_clause(modality, piece, unit, closure_set) for piece in interval.split())


def bounded_letter_guard(formula: NormalFormula, unit: int, letter: str,
                         closure_set: ClosureSet) -> GuardExpr:
    return guard_expression(
        formula.guard_for(letter), lambda node: cond_bounded(node, unit, closure_set)
    )


def in_unit(unit: int) -> Guard:
    """``unit <= T - z0 < unit + 1``."""
    return Guard.of(elapsed(ZERO_CLOCK, Relation.GE, unit), elapsed(ZERO_CLOCK, Relation.LT, unit + 1))


def unit_pass(item: ClosureItem, closure_set: ClosureSet, alphabet: Iterable[str]) -> Po2dta:
    """
    Pass for one closure item: rewind, scan right for the first cell in the
    unit whose letter guard holds (sets ``x``), then on to the end and back
    left to the last such cell (sets ``y``). Always accepts; when no cell
    qualifies both clocks keep their values.
    """
    alphabet = tuple(sorted(alphabet))
    index = closure_set.ident(item.formula)
    builder = PassBuilder(f"u{index}r{item.unit}", alphabet, closure_set.clocks)
    start = builder.state('S', Direction.RIGHT, 6)
    rewind = builder.state('B', Direction.LEFT, 5)
    forward = builder.state('C', Direction.RIGHT, 4)
    onward = builder.state('D', Direction.RIGHT, 3)
    backward = builder.state('E2', Direction.LEFT, 2)
    missed = builder.state('E', Direction.LEFT, 1)

    window = in_unit(item.unit)
    guards = {
        letter: all_of([bounded_letter_guard(item.formula, item.unit, letter, closure_set), window])
        for letter in item.formula.letters
    }
    first, last = closure_set.first_clock(item), closure_set.last_clock(item)

    builder.on(start, alphabet + (RIGHT_MARKER,), rewind)
    builder.on(rewind, [LEFT_MARKER], forward)
    for letter, expression in guards.items():
        builder.on_expression(forward, letter, expression, onward, (first,))
    builder.on(forward, [RIGHT_MARKER], missed)
    builder.on(missed, alphabet + (LEFT_MARKER,), builder.accept)
    builder.on(onward, [RIGHT_MARKER], backward)
    for letter, expression in guards.items():
        builder.on_expression(backward, letter, expression, builder.accept, (last,))
    builder.on(backward, [LEFT_MARKER], builder.accept)
    return builder.build(start)


def compile_bounded(formula: Formula, alphabet: Optional[Iterable[str]] = None) -> Po2dta:
    """
    Language-equivalent po2DTA for a bounded formula: reset pass, one unit
    pass per closure item (bottom-up), then a check on the first cell.

    The check accepts iff the first cell has stamp 0, ``x`` of the top item
    is 0 and the top letter guard holds there. The letter guard is needed on
    one-letter words, where the default value of ``x`` (the last stamp) is 0
    as well.

    Raises:
        FragmentError: Some interval is unbounded or punctual
    """
    tag = classify_fragment(formula)
    if formula.modalities() and not tag.within(Fragment.BOUNDED):
        raise FragmentError(f"compile_bounded needs {Fragment.BOUNDED.label}, got {tag}")
    letters = compile_alphabet(formula, alphabet)
    top = to_normal_form(formula, letters)
    closure_set = ClosureSet(top, 0)
    clocks = closure_set.clocks

    parts = [reset_pass([closure_set.first_clock(item) for item in closure_set], letters, clocks)]
    parts.extend(unit_pass(item, closure_set, letters) for item in closure_set)
    top_first = closure_set.first_clock(closure_set.top)
    top_guards = {
        letter: all_of([
            bounded_letter_guard(top, 0, letter, closure_set),
            Guard.of(elapsed(top_first, Relation.EQ, 0)),
        ])
        for letter in top.letters
    }
    parts.append(check_pass(top_guards, letters, clocks))

    automaton = compose_all(parts, name=f"bounded({formula})")
    logger.debug(
        "compile_bounded: %d closure items, %d states, %d clocks",
        len(closure_set), len(automaton.states), len(automaton.clocks),
    )
    return automaton
