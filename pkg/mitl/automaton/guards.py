"""
Clock guards.

A guard is a conjunction of constraints ``T-x ~ c`` (time elapsed since the
clock was set) or ``x-T ~ c`` (time remaining until the clock's stamp), with
``~`` one of ``< <= > >= =`` and ``c`` a natural number. Each constraint also
carries its implicit sign condition ``T-x >= 0`` or ``x-T >= 0``.

Progress transitions only carry conjunctive guards. Boolean combinations built
by the compilers are turned into lists of pairwise disjoint guards by
``disjoint_guards``.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from lark import Lark
from lark.exceptions import UnexpectedInput

from mitl.exceptions import AutomatonError, UnknownClockError

logger = logging.getLogger(__name__)


class Relation(Enum):
    LT = '<'
    LE = '<='
    GT = '>'
    GE = '>='
    EQ = '='

    def holds(self, value, constant) -> bool:
        if self is Relation.LT:
            return value < constant
        if self is Relation.LE:
            return value <= constant
        if self is Relation.GT:
            return value > constant
        if self is Relation.GE:
            return value >= constant
        return value == constant

    @classmethod
    def parse(cls, text: str) -> 'Relation':
        text = '=' if text == '==' else text
        for relation in cls:
            if relation.value == text:
                return relation
        raise AutomatonError(f"Unknown relation {text!r}")


class Difference(Enum):
    ELAPSED = 'T-x'
    REMAINING = 'x-T'


@dataclass(frozen=True)
class Span:
    """A real interval; ``None`` ends are infinite."""
    lower: Optional[Fraction]
    lower_closed: bool
    upper: Optional[Fraction]
    upper_closed: bool

    @property
    def empty(self) -> bool:
        if self.lower is None or self.upper is None:
            return False
        if self.lower < self.upper:
            return False
        return not (self.lower == self.upper and self.lower_closed and self.upper_closed)

    @property
    def whole(self) -> bool:
        return self.lower is None and self.upper is None

    def contains(self, value) -> bool:
        if self.lower is not None:
            if value < self.lower or (value == self.lower and not self.lower_closed):
                return False
        if self.upper is not None:
            if value > self.upper or (value == self.upper and not self.upper_closed):
                return False
        return True

    def intersect(self, other: 'Span') -> 'Span':
        lower, lower_closed = self.lower, self.lower_closed
        if other.lower is not None and (
                lower is None or other.lower > lower
                or (other.lower == lower and not other.lower_closed)):
            lower, lower_closed = other.lower, other.lower_closed
        upper, upper_closed = self.upper, self.upper_closed
        if other.upper is not None and (
                upper is None or other.upper < upper
                or (other.upper == upper and not other.upper_closed)):
            upper, upper_closed = other.upper, other.upper_closed
        return Span(lower, lower_closed, upper, upper_closed)


EVERYWHERE = Span(None, False, None, False)
NON_NEGATIVE = Span(Fraction(0), True, None, False)
NEGATIVE = Span(None, False, Fraction(0), False)
NON_POSITIVE = Span(None, False, Fraction(0), True)


@dataclass(frozen=True)
class Constraint:
    clock: str
    relation: Relation
    constant: int
    kind: Difference = Difference.ELAPSED

    def __post_init__(self):
        if isinstance(self.constant, bool) or not isinstance(self.constant, int) or self.constant < 0:
            raise AutomatonError(f"Guard constants must be natural numbers, got {self.constant!r}")

    def value(self, valuation: Mapping[str, Fraction], now) -> Fraction:
        try:
            clock = valuation[self.clock]
        except KeyError:
            raise UnknownClockError(f"Unknown clock {self.clock!r}") from None
        return now - clock if self.kind is Difference.ELAPSED else clock - now

    def holds(self, valuation: Mapping[str, Fraction], now) -> bool:
        value = self.value(valuation, now)
        return value >= 0 and self.relation.holds(value, self.constant)

    def span(self) -> Span:
        """The set of values of T-x that satisfy this constraint."""
        c = Fraction(self.constant)
        if self.kind is Difference.ELAPSED:
            base, row = NON_NEGATIVE, {
                Relation.LT: Span(None, False, c, False),
                Relation.LE: Span(None, False, c, True),
                Relation.GT: Span(c, False, None, False),
                Relation.GE: Span(c, True, None, False),
                Relation.EQ: Span(c, True, c, True),
            }[self.relation]
        else:
            base, row = NON_POSITIVE, {
                Relation.LT: Span(-c, False, None, False),
                Relation.LE: Span(-c, True, None, False),
                Relation.GT: Span(None, False, -c, False),
                Relation.GE: Span(None, False, -c, True),
                Relation.EQ: Span(-c, True, -c, True),
            }[self.relation]
        return base.intersect(row)

    def breakpoint(self) -> Fraction:
        return Fraction(self.constant if self.kind is Difference.ELAPSED else -self.constant)

    def __str__(self):
        left = f"T-{self.clock}" if self.kind is Difference.ELAPSED else f"{self.clock}-T"
        return f"{left} {self.relation.value} {self.constant}"


def elapsed(clock: str, relation: Union[Relation, str], constant: int) -> Constraint:
    """``T-clock ~ constant``."""
    relation = relation if isinstance(relation, Relation) else Relation.parse(relation)
    return Constraint(clock, relation, constant, Difference.ELAPSED)


def remaining(clock: str, relation: Union[Relation, str], constant: int) -> Constraint:
    """``clock-T ~ constant``."""
    relation = relation if isinstance(relation, Relation) else Relation.parse(relation)
    return Constraint(clock, relation, constant, Difference.REMAINING)


@dataclass(frozen=True)
class Guard:
    """Conjunction of constraints; the empty guard is true."""
    constraints: Tuple[Constraint, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'constraints', tuple(self.constraints))

    @classmethod
    def of(cls, *constraints: Constraint) -> 'Guard':
        return cls(tuple(constraints))

    @property
    def always(self) -> bool:
        return not self.constraints

    def holds(self, valuation: Mapping[str, Fraction], now) -> bool:
        return all(c.holds(valuation, now) for c in self.constraints)

    def clocks(self) -> frozenset:
        return frozenset(c.clock for c in self.constraints)

    def constants(self) -> Tuple[int, ...]:
        return tuple(c.constant for c in self.constraints)

    def spans(self) -> Dict[str, Span]:
        found = {}
        for constraint in self.constraints:
            found[constraint.clock] = found.get(constraint.clock, EVERYWHERE).intersect(constraint.span())
        return found

    def satisfiable(self) -> bool:
        """Clocks take arbitrary values, so each clock can be checked on its own."""
        return not any(span.empty for span in self.spans().values())

    def __and__(self, other: 'Guard') -> 'Guard':
        return Guard(self.constraints + other.constraints)

    def __str__(self):
        return ' & '.join(str(c) for c in self.constraints) or 'true'


TRUE_GUARD = Guard(())


def guard_holds(valuation: Mapping[str, Fraction], now, guard: Guard) -> bool:
    return guard.holds(valuation, now)


def guards_disjoint(first: Guard, second: Guard) -> bool:
    return not (first & second).satisfiable()


def overlapping_pairs(guards: Sequence[Guard]) -> List[Tuple[int, int]]:
    """
    Index pairs of guards that some valuation satisfies together.

    Clock by clock, guards are grouped into chains of spans that touch one
    another; guards in different chains disagree on that clock. Only guards
    sharing a chain on every clock are compared directly.
    """
    spans = [guard.spans() for guard in guards]
    live = [i for i, found in enumerate(spans) if not any(s.empty for s in found.values())]
    groups = [live]
    for clock in sorted(set().union(*(found.keys() for found in spans))):
        groups = [chain for group in groups for chain in _chains(group, spans, clock)]
    pairs = []
    for group in groups:
        for first, second in combinations(group, 2):
            if not guards_disjoint(guards[first], guards[second]):
                pairs.append((min(first, second), max(first, second)))
    return sorted(pairs)


def _lower_key(span: Span):
    if span.lower is None:
        return (0, Fraction(0), 0)
    return (1, span.lower, 0 if span.lower_closed else 1)


def _starts_after(span: Span, reach: Span) -> bool:
    if reach.upper is None or span.lower is None:
        return False
    if span.lower != reach.upper:
        return span.lower > reach.upper
    return not (span.lower_closed and reach.upper_closed)


def _further(reach: Span, span: Span) -> Span:
    if reach.upper is None:
        return reach
    if span.upper is None or span.upper > reach.upper:
        return span
    if span.upper == reach.upper and span.upper_closed:
        return span
    return reach


def _chains(group: List[int], spans: List[Dict[str, Span]], clock: str) -> List[List[int]]:
    if len(group) < 2:
        return [group]
    ordered = sorted(group, key=lambda i: _lower_key(spans[i].get(clock, EVERYWHERE)))
    chains, reach = [], None
    for index in ordered:
        span = spans[index].get(clock, EVERYWHERE)
        if chains and not _starts_after(span, reach):
            chains[-1].append(index)
            reach = _further(reach, span)
        else:
            chains.append([index])
            reach = span
    return chains


# Boolean combinations of constraints, used while compiling.

@dataclass(frozen=True)
class Conjunction:
    parts: Tuple['GuardExpr', ...]


@dataclass(frozen=True)
class Disjunction:
    parts: Tuple['GuardExpr', ...]


@dataclass(frozen=True)
class Negation:
    arg: 'GuardExpr'


GuardExpr = Union[Constraint, Guard, Conjunction, Disjunction, Negation]

ALWAYS = Conjunction(())
NEVER = Disjunction(())


def all_of(parts: Iterable[GuardExpr]) -> GuardExpr:
    kept = []
    for part in parts:
        if isinstance(part, Guard):
            part = Conjunction(part.constraints) if len(part.constraints) != 1 else part.constraints[0]
        if part == NEVER:
            return NEVER
        if part == ALWAYS:
            continue
        if isinstance(part, Conjunction):
            kept.extend(p for p in part.parts if p not in kept)
        elif part not in kept:
            kept.append(part)
    if len(kept) == 1:
        return kept[0]
    return Conjunction(tuple(kept))


def any_of(parts: Iterable[GuardExpr]) -> GuardExpr:
    kept = []
    for part in parts:
        if isinstance(part, Guard):
            part = all_of([part])
        if part == ALWAYS:
            return ALWAYS
        if part == NEVER:
            continue
        if isinstance(part, Disjunction):
            kept.extend(p for p in part.parts if p not in kept)
        elif part not in kept:
            kept.append(part)
    if len(kept) == 1:
        return kept[0]
    return Disjunction(tuple(kept))


def negation(arg: GuardExpr) -> GuardExpr:
    if isinstance(arg, Guard):
        arg = all_of([arg])
    if arg == ALWAYS:
        return NEVER
    if arg == NEVER:
        return ALWAYS
    if isinstance(arg, Negation):
        return arg.arg
    return Negation(arg)


def _decide(expr: GuardExpr, clock: str, delta: Fraction) -> GuardExpr:
    """Fix T-clock = delta and fold."""
    if isinstance(expr, Constraint):
        if expr.clock != clock:
            return expr
        return ALWAYS if expr.span().contains(delta) else NEVER
    if isinstance(expr, Guard):
        return _decide(all_of([expr]), clock, delta)
    if isinstance(expr, Negation):
        return negation(_decide(expr.arg, clock, delta))
    if isinstance(expr, Conjunction):
        return all_of(_decide(p, clock, delta) for p in expr.parts)
    return any_of(_decide(p, clock, delta) for p in expr.parts)


def _breakpoints(expr: GuardExpr, clock: str) -> set:
    if isinstance(expr, Constraint):
        return {expr.breakpoint()} if expr.clock == clock else set()
    if isinstance(expr, Guard):
        return {c.breakpoint() for c in expr.constraints if c.clock == clock}
    if isinstance(expr, Negation):
        return _breakpoints(expr.arg, clock)
    return set().union(*(_breakpoints(p, clock) for p in expr.parts))


def _clock_counts(expr: GuardExpr) -> Counter:
    """Number of constraints on each clock."""
    if isinstance(expr, Constraint):
        return Counter({expr.clock: 1})
    if isinstance(expr, Guard):
        return Counter(c.clock for c in expr.constraints)
    if isinstance(expr, Negation):
        return _clock_counts(expr.arg)
    total = Counter()
    for part in expr.parts:
        total.update(_clock_counts(part))
    return total


def _cells(points: List[Fraction]) -> List[Tuple[Span, Fraction]]:
    """Points and open gaps between them, in order, with a sample value each."""
    cells = [(Span(None, False, points[0], False), points[0] - 1)]
    for index, point in enumerate(points):
        cells.append((Span(point, True, point, True), point))
        if index + 1 < len(points):
            following = points[index + 1]
            cells.append((Span(point, False, following, False), (point + following) / 2))
    cells.append((Span(points[-1], False, None, False), points[-1] + 1))
    return cells


def _express(clock: str, span: Span) -> List[Tuple[Constraint, ...]]:
    """Conjunctive constraints for T-clock in ``span``; one piece per sign."""
    if span.whole:
        return [()]
    pieces = []
    upper_half = span.intersect(NON_NEGATIVE)
    if not upper_half.empty:
        pieces.append(_express_elapsed(clock, upper_half))
    lower_half = span.intersect(NEGATIVE)
    if not lower_half.empty:
        pieces.append(_express_remaining(clock, lower_half))
    return pieces


def _express_elapsed(clock: str, span: Span) -> Tuple[Constraint, ...]:
    if span.upper is not None and span.lower == span.upper:
        return (elapsed(clock, Relation.EQ, int(span.lower)),)
    out = []
    if span.lower_closed:
        if span.lower > 0 or span.upper is None:
            out.append(elapsed(clock, Relation.GE, int(span.lower)))
    else:
        out.append(elapsed(clock, Relation.GT, int(span.lower)))
    if span.upper is not None:
        out.append(elapsed(clock, Relation.LE if span.upper_closed else Relation.LT, int(span.upper)))
    return tuple(out)


def _express_remaining(clock: str, span: Span) -> Tuple[Constraint, ...]:
    if span.lower is not None and span.lower == span.upper:
        return (remaining(clock, Relation.EQ, int(-span.lower)),)
    out = [remaining(clock, Relation.GE if span.upper_closed else Relation.GT, int(-span.upper))]
    if span.lower is not None:
        out.append(remaining(clock, Relation.LE if span.lower_closed else Relation.LT, int(-span.lower)))
    return tuple(out)


def disjoint_guards(expr: GuardExpr) -> List[Guard]:
    """
    Pairwise disjoint conjunctive guards whose union is ``expr``.

    Works clock by clock: the values of T-x are cut at the constants of the
    constraints on x, adjacent cells with the same residual condition are
    merged, and each surviving cell is expressed as constraints on x.
    """
    if isinstance(expr, Guard):
        expr = all_of([expr])
    return [Guard(piece) for piece in _split(expr)]


def _split(expr: GuardExpr) -> List[Tuple[Constraint, ...]]:
    if expr == ALWAYS:
        return [()]
    if expr == NEVER:
        return []
    counts = _clock_counts(expr)
    clock = min(counts, key=lambda name: (-counts[name], name))
    points = sorted(_breakpoints(expr, clock) | {Fraction(0)})
    merged = []
    for span, sample in _cells(points):
        residual = _decide(expr, clock, sample)
        if merged and merged[-1][1] == residual:
            previous = merged[-1][0]
            merged[-1] = (Span(previous.lower, previous.lower_closed, span.upper, span.upper_closed), residual)
        else:
            merged.append((span, residual))
    out = []
    for span, residual in merged:
        if residual == NEVER:
            continue
        rests = _split(residual)
        for piece in _express(clock, span):
            out.extend(piece + rest for rest in rests)
    return out


GUARD_GRAMMAR = r'''
?start: guard

guard: "true" -> always
    | constraint ("&" constraint)*

constraint: "T" "-" CLOCK REL INT -> elapsed
    | CLOCK "-" "T" REL INT -> remaining

REL: /<=|>=|==|<|>|=/
INT: /[0-9]+/
CLOCK: /[A-Za-z_][A-Za-z0-9_]*/

%import common.WS
%ignore WS
'''


@lru_cache(maxsize=1)
def _guard_parser() -> Lark:
    return Lark(GUARD_GRAMMAR, parser='lalr')


def parse_guard(text: str) -> Guard:
    """Parse ``T-x >= 1 & x-T = 1`` style guards; ``true`` is the empty guard."""
    try:
        tree = _guard_parser().parse(text)
    except UnexpectedInput as exc:
        raise AutomatonError(
            f"Cannot parse guard {text!r} at column {getattr(exc, 'column', '?')}"
        ) from exc
    if tree.data == 'always':
        return TRUE_GUARD
    constraints = []
    for item in tree.children:
        clock, relation, constant = item.children
        build = elapsed if item.data == 'elapsed' else remaining
        constraints.append(build(str(clock), Relation.parse(str(relation)), int(constant)))
    return Guard(tuple(constraints))
