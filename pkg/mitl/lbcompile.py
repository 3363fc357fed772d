"""
Compiler from lower-bound formulas (every interval of the form <l,inf)) to
po2DTA.

The automaton is a chain of passes over the word. An initial pass sets every
first-occurrence clock to the last stamp. Then, innermost modargs first, each
modarg gets a pass that stores the stamp of its last occurrence in ``y_k``
(modargs under F) or its first occurrence in ``x_k`` (modargs under P). With
those clocks in place, a lower-bound modality at the current position is a
plain clock comparison. A final pass checks the top-level letter guard on the
first position.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from mitl.automaton.guards import (
    ALWAYS, NEVER, TRUE_GUARD, Guard, GuardExpr, Relation, all_of, any_of, disjoint_guards,
    elapsed, negation, remaining,
)
from mitl.automaton.model import Direction, Po2dta, State, Transition, compose_all
from mitl.core.formulas import And, Bottom, Formula, Modal, Not, Or, Top
from mitl.core.fragments import Fragment, classify_fragment
from mitl.core.intervals import IntervalKind
from mitl.core.normal_form import NormalFormula, Polarity, to_normal_form
from mitl.core.words import LEFT_MARKER, RIGHT_MARKER, check_symbol
from mitl.exceptions import FragmentError, UnknownAtomError

logger = logging.getLogger(__name__)

#: Never reset, so ``T - z0`` is the absolute time.
ZERO_CLOCK = 'z0'


@dataclass
class ClockPlan:
    """Clock names per modarg: ``y_k`` for last occurrences, ``x_k`` for first ones."""
    modargs: List[NormalFormula]
    polarities: Dict[NormalFormula, Polarity]
    ids: Dict[NormalFormula, int] = field(default_factory=dict)

    def __post_init__(self):
        self.ids = {modarg: index for index, modarg in enumerate(self.modargs, start=1)}

    @classmethod
    def for_formula(cls, formula: NormalFormula) -> 'ClockPlan':
        return cls(formula.modargs(), formula.polarities())

    def last_clock(self, modarg: NormalFormula) -> str:
        return f"y_{self.ids[modarg]}"

    def first_clock(self, modarg: NormalFormula) -> str:
        return f"x_{self.ids[modarg]}"

    def first_clocks(self) -> List[str]:
        return [self.first_clock(m) for m in self.modargs if self.polarities[m].past]

    @property
    def clocks(self) -> Tuple[str, ...]:
        names = [ZERO_CLOCK]
        for modarg in self.modargs:
            if self.polarities[modarg].past:
                names.append(self.first_clock(modarg))
            if self.polarities[modarg].future:
                names.append(self.last_clock(modarg))
        return tuple(names)


def cond_lb(modality: Modal, plan: ClockPlan) -> Guard:
    """
    Clock condition equivalent to a lower-bound modality, given the clocks of
    its argument:

        F[l,inf) f   y - T >= l  (l > 0)    y - T > 0  (l = 0)
        F(l,inf) f   y - T > l
        P[l,inf) f   T - x >= l  (l > 0)    T - x > 0  (l = 0)
        P(l,inf) f   T - x > l
    """
    interval = modality.interval
    if interval.kind is not IntervalKind.LOWER_BOUND:
        raise FragmentError(f"{modality} does not have a lower-bound interval")
    l = interval.lower
    if interval.lower_open:
        relation, constant = Relation.GT, l
    elif l > 0:
        relation, constant = Relation.GE, l
    else:
        relation, constant = Relation.GT, 0
    if modality.future:
        return Guard.of(remaining(plan.last_clock(modality.arg), relation, constant))
    return Guard.of(elapsed(plan.first_clock(modality.arg), relation, constant))


def guard_expression(body: Formula, condition) -> GuardExpr:
    """Replace each modal node of a letter body by ``condition(node)``."""
    if isinstance(body, Top):
        return ALWAYS
    if isinstance(body, Bottom):
        return NEVER
    if isinstance(body, Not):
        return negation(guard_expression(body.arg, condition))
    if isinstance(body, And):
        return all_of([guard_expression(body.left, condition), guard_expression(body.right, condition)])
    if isinstance(body, Or):
        return any_of([guard_expression(body.left, condition), guard_expression(body.right, condition)])
    if isinstance(body, Modal):
        return condition(body)
    raise TypeError(f"Unexpected node {body!r} in a letter body")


def letter_guard(modarg: NormalFormula, letter: str, plan: ClockPlan) -> GuardExpr:
    """G(f, a): the letter body of ``f`` for ``a`` with every modality replaced by its condition."""
    return guard_expression(modarg.guard_for(letter), lambda node: cond_lb(node, plan))


class PassBuilder:
    """Collects the states and transitions of one pass."""

    def __init__(self, prefix: str, alphabet: Iterable[str], clocks: Tuple[str, ...]):
        self.prefix = prefix
        self.alphabet = tuple(alphabet)
        self.clocks = clocks
        self.states: List[State] = [State(self.name('t'), None, 0), State(self.name('r'), None, 0)]
        self.transitions: List[Transition] = []

    def name(self, local: str) -> str:
        return f"{self.prefix}.{local}"

    def state(self, local: str, direction: Direction, rank: int) -> str:
        self.states.append(State(self.name(local), direction, rank))
        return self.name(local)

    @property
    def accept(self) -> str:
        return self.name('t')

    @property
    def reject(self) -> str:
        return self.name('r')

    def on(self, source: str, letters: Iterable[str], target: str,
           guard: Guard = TRUE_GUARD, resets: Tuple[str, ...] = ()):
        for letter in letters:
            self.transitions.append(Transition(source, letter, guard, target, resets))

    def on_expression(self, source: str, letter: str, expression: GuardExpr, target: str,
                      resets: Tuple[str, ...] = ()):
        for guard in disjoint_guards(expression):
            self.transitions.append(Transition(source, letter, guard, target, resets))

    def build(self, initial: str) -> Po2dta:
        return Po2dta(
            states=tuple(self.states),
            clocks=self.clocks,
            transitions=tuple(self.transitions),
            initial=initial,
            accept=self.accept,
            reject=self.reject,
            alphabet=self.alphabet,
            name=self.prefix,
        )


def reset_pass(clocks_to_reset: List[str], alphabet, clocks, prefix: str = 'init') -> Po2dta:
    """Walk to the end marker, set ``clocks_to_reset`` to the last stamp, step back, accept."""
    builder = PassBuilder(prefix, alphabet, clocks)
    start = builder.state('S', Direction.RIGHT, 2)
    back = builder.state('B', Direction.LEFT, 1)
    builder.on(start, [RIGHT_MARKER], back, resets=tuple(clocks_to_reset))
    builder.on(back, builder.alphabet + (LEFT_MARKER,), builder.accept)
    return builder.build(start)


def last_occurrence_pass(prefix: str, alphabet, clocks, guards: Dict[str, GuardExpr],
                         clock: str) -> Po2dta:
    """Scan right to the end, then left; the first cell from the right satisfying its letter guard sets ``clock``."""
    builder = PassBuilder(prefix, alphabet, clocks)
    start = builder.state('S', Direction.RIGHT, 2)
    scan = builder.state('A', Direction.LEFT, 1)
    builder.on(start, [RIGHT_MARKER], scan)
    for letter, expression in guards.items():
        builder.on_expression(scan, letter, expression, builder.accept, (clock,))
    builder.on(scan, [LEFT_MARKER], builder.accept)
    return builder.build(start)


def first_occurrence_pass(prefix: str, alphabet, clocks, guards: Dict[str, GuardExpr],
                          clock: str, unit_guard: Optional[GuardExpr] = None) -> Po2dta:
    """Rewind to the start marker and scan right; the first cell satisfying its letter guard sets ``clock``."""
    builder = PassBuilder(prefix, alphabet, clocks)
    start = builder.state('S', Direction.RIGHT, 4)
    rewind = builder.state('B', Direction.LEFT, 3)
    scan = builder.state('C', Direction.RIGHT, 2)
    done = builder.state('D', Direction.LEFT, 1)
    builder.on(start, builder.alphabet + (RIGHT_MARKER,), rewind)
    builder.on(rewind, [LEFT_MARKER], scan)
    for letter, expression in guards.items():
        if unit_guard is not None:
            expression = all_of([expression, unit_guard])
        builder.on_expression(scan, letter, expression, builder.accept, (clock,))
    builder.on(scan, [RIGHT_MARKER], done)
    builder.on(done, builder.alphabet + (LEFT_MARKER,), builder.accept)
    return builder.build(start)


def compile_alphabet(formula: Formula, alphabet: Optional[Iterable[str]]) -> Tuple[str, ...]:
    """Sorted event symbols a compiled automaton reads; end markers are not allowed."""
    letters = set(alphabet) if alphabet is not None else set(formula.atoms())
    if not letters:
        raise UnknownAtomError(f"An alphabet is needed to compile {formula}")
    return tuple(sorted(check_symbol(letter) for letter in letters))


def at_time_zero() -> Guard:
    return Guard.of(elapsed(ZERO_CLOCK, Relation.EQ, 0))


def check_pass(guards: Dict[str, GuardExpr], alphabet, clocks, prefix: str = 'check') -> Po2dta:
    """Rewind and decide on the cell with stamp 0: accept iff its letter guard holds."""
    builder = PassBuilder(prefix, alphabet, clocks)
    start = builder.state('S', Direction.RIGHT, 3)
    rewind = builder.state('B', Direction.LEFT, 2)
    decide = builder.state('C', Direction.RIGHT, 1)
    builder.on(start, builder.alphabet + (RIGHT_MARKER,), rewind)
    builder.on(rewind, [LEFT_MARKER], decide)
    zero = at_time_zero()
    for letter in builder.alphabet:
        expression = guards.get(letter, NEVER)
        builder.on_expression(decide, letter, all_of([expression, zero]), builder.accept)
        builder.on_expression(decide, letter, all_of([negation(expression), zero]), builder.reject)
    builder.on(decide, [RIGHT_MARKER], builder.reject)
    return builder.build(start)


def modarg_pass(modarg: NormalFormula, polarity: Polarity, plan: ClockPlan,
                alphabet: Iterable[str]) -> Po2dta:
    """
    One pass for ``modarg``. Started with the clocks of its strict sub-modargs
    in place, it always accepts and leaves ``y_k`` at the last occurrence
    (F) or ``x_k`` at the first occurrence (P), changing no other clock.
    """
    alphabet = tuple(sorted(alphabet))
    guards = {letter: letter_guard(modarg, letter, plan) for letter in modarg.letters}
    index = plan.ids[modarg]
    if polarity is Polarity.FUTURE:
        return last_occurrence_pass(f"m{index}F", alphabet, plan.clocks, guards, plan.last_clock(modarg))
    if polarity is Polarity.PAST:
        return first_occurrence_pass(f"m{index}P", alphabet, plan.clocks, guards, plan.first_clock(modarg))
    raise ValueError("A pass computes one polarity at a time")


def compile_lb(formula: Formula, alphabet: Optional[Iterable[str]] = None) -> Po2dta:
    """
    Language-equivalent po2DTA for a lower-bound formula.

    Args:
        formula: Formula whose intervals all have the form <l,inf)
        alphabet: Event symbols; defaults to the atoms of the formula

    Raises:
        FragmentError: The formula has an interval of another shape
    """
    tag = classify_fragment(formula)
    if not tag.within(Fragment.LOWER_BOUND):
        raise FragmentError(f"compile_lb needs {Fragment.LOWER_BOUND.label}, got {tag}")
    letters = compile_alphabet(formula, alphabet)
    top = to_normal_form(formula, letters)
    plan = ClockPlan.for_formula(top)

    parts = [reset_pass(plan.first_clocks(), letters, plan.clocks)]
    for modarg in plan.modargs:
        polarity = plan.polarities[modarg]
        if polarity.future:
            parts.append(modarg_pass(modarg, Polarity.FUTURE, plan, letters))
        if polarity.past:
            parts.append(modarg_pass(modarg, Polarity.PAST, plan, letters))
    top_guards = {letter: letter_guard(top, letter, plan) for letter in top.letters}
    parts.append(check_pass(top_guards, letters, plan.clocks))

    automaton = compose_all(parts, name=f"lb({formula})")
    logger.debug(
        "compile_lb: %d modargs, %d passes, %d states, %d clocks",
        len(plan.modargs), len(parts), len(automaton.states), len(automaton.clocks),
    )
    return automaton
