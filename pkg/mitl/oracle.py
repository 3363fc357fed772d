"""
Reference pointwise semantics of unary MTL over finite timed words.

Every compiler and the extractor are checked against this module. It is the
slow, obviously-correct path: O(|formula| * |word|^2) per evaluation.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Optional, Tuple

from mitl.core.formulas import (
    And, Atom, Bottom, Eventually, Formula, Modal, Not, Or, Top,
)
from mitl.core.intervals import ANYTIME, Interval, IntervalKind
from mitl.core.normal_form import NormalFormula
from mitl.core.words import TimedWord
from mitl.exceptions import FragmentError, IntervalError

logger = logging.getLogger(__name__)

Truth = Tuple[bool, ...]


def _distance_ok(modality: Modal, here: Fraction, there: Fraction) -> bool:
    distance = there - here if modality.future else here - there
    return distance in modality.interval


class Evaluator:
    """Truth vectors of every subformula over one word, computed on demand."""

    def __init__(self, word: TimedWord):
        self.word = word
        self._memo: Dict[Formula, Truth] = {}

    def truth(self, formula: Formula) -> Truth:
        cached = self._memo.get(formula)
        if cached is None:
            cached = self._compute(formula)
            self._memo[formula] = cached
        return cached

    def _compute(self, node: Formula) -> Truth:
        word = self.word
        n = len(word)
        if isinstance(node, Atom):
            return tuple(event == node.name for event in word.events)
        if isinstance(node, Top):
            return (True,) * n
        if isinstance(node, Bottom):
            return (False,) * n
        if isinstance(node, Not):
            return tuple(not v for v in self.truth(node.arg))
        if isinstance(node, And):
            left, right = self.truth(node.left), self.truth(node.right)
            return tuple(a and b for a, b in zip(left, right))
        if isinstance(node, Or):
            left, right = self.truth(node.left), self.truth(node.right)
            return tuple(a or b for a, b in zip(left, right))
        if isinstance(node, Modal):
            arg = self.truth(node.arg)
            stamps = word.stamps
            result = []
            for i in range(n):
                others = range(i + 1, n) if node.future else range(i)
                result.append(any(
                    arg[j] and _distance_ok(node, stamps[i], stamps[j]) for j in others
                ))
            return tuple(result)
        if isinstance(node, NormalFormula):
            bodies = {letter: self.truth(body) for letter, body in node.cases}
            return tuple(
                event in bodies and bodies[event][i]
                for i, event in enumerate(word.events)
            )
        raise TypeError(f"Unsupported formula node {node!r}")


def evaluate(word: TimedWord, formula: Formula) -> Truth:
    """Truth value of ``formula`` at positions 1..n, as a tuple indexed from 0."""
    return Evaluator(word).truth(formula)


def holds_at(word: TimedWord, i: int, formula: Formula) -> bool:
    """rho, i |= formula with strict future and past."""
    word.check_position(i)
    return evaluate(word, formula)[i - 1]


def naive_holds_at(word: TimedWord, i: int, formula: Formula) -> bool:
    """Unmemoized recursive evaluation, kept as a second reference."""
    word.check_position(i)
    if isinstance(formula, Atom):
        return word.letter(i) == formula.name
    if isinstance(formula, Top):
        return True
    if isinstance(formula, Bottom):
        return False
    if isinstance(formula, Not):
        return not naive_holds_at(word, i, formula.arg)
    if isinstance(formula, And):
        return naive_holds_at(word, i, formula.left) and naive_holds_at(word, i, formula.right)
    if isinstance(formula, Or):
        return naive_holds_at(word, i, formula.left) or naive_holds_at(word, i, formula.right)
    if isinstance(formula, Modal):
        others = range(i + 1, len(word) + 1) if formula.future else range(1, i)
        return any(
            _distance_ok(formula, word.stamp(i), word.stamp(j)) and naive_holds_at(word, j, formula.arg)
            for j in others
        )
    if isinstance(formula, NormalFormula):
        return naive_holds_at(word, i, formula.guard_for(word.letter(i)))
    raise TypeError(f"Unsupported formula node {formula!r}")


def language_member(word: TimedWord, formula: Formula) -> bool:
    """Membership in L(formula): the word is non-empty, starts at 0 and satisfies it at 1."""
    word.require_anchored()
    return holds_at(word, 1, formula)


@dataclass(frozen=True)
class OccurrenceMap:
    """
    Positions where a formula holds with stamp in an interval, and the first
    and last such stamps. Without any position, ``first`` is the last stamp of
    the word and ``last`` the first stamp.
    """
    positions: FrozenSet[int]
    first: Fraction
    last: Fraction

    @property
    def empty(self) -> bool:
        return not self.positions


def occurrence(word: TimedWord, formula: Formula, interval: Optional[Interval] = None,
               truth: Optional[Truth] = None) -> OccurrenceMap:
    interval = ANYTIME if interval is None else interval
    values = evaluate(word, formula) if truth is None else truth
    positions = frozenset(
        i for i in word.positions if values[i - 1] and word.stamp(i) in interval
    )
    if not positions:
        first = word.stamps[-1] if len(word) else Fraction(0)
        last = word.stamps[0] if len(word) else Fraction(0)
        return OccurrenceMap(positions, first, last)
    return OccurrenceMap(positions, word.stamp(min(positions)), word.stamp(max(positions)))


def lb_condition(word: TimedWord, i: int, modality: Modal) -> bool:
    """
    Decide a lower-bound modality at ``i`` from the first/last occurrence of
    its argument alone:

        F[l,inf) f:  T <= L - l  and  T < L
        F(l,inf) f:  T <  L - l
        P[l,inf) f:  T >= F + l  and  T > F
        P(l,inf) f:  T >  F + l
    """
    interval = modality.interval
    if interval.kind is not IntervalKind.LOWER_BOUND:
        raise FragmentError(f"{modality} does not have a lower-bound interval")
    now = word.stamp(i)
    occurrences = occurrence(word, modality.arg)
    l = interval.lower
    if isinstance(modality, Eventually):
        last = occurrences.last
        if interval.lower_open:
            return now < last - l
        return now <= last - l and now < last
    first = occurrences.first
    if interval.lower_open:
        return now > first + l
    return now >= first + l and now > first


def _unit(k: int) -> Optional[Interval]:
    return Interval(k, k + 1, False, True) if k >= 0 else None


def unit_condition(word: TimedWord, i: int, modality: Modal, piece: Interval, r: int,
                   truth: Optional[Truth] = None) -> bool:
    """
    Decide ``F_piece f`` or ``P_piece f`` at ``i`` (stamp in [r,r+1)) from
    occurrences of ``f`` in two neighbouring unit intervals. ``piece`` is a
    unit interval <l,l+1>.
    """
    if piece.upper != piece.lower + 1:
        raise IntervalError(f"{piece} is not a unit interval")
    now = word.stamp(i)
    l = piece.lower
    truth = evaluate(word, modality.arg) if truth is None else truth

    def occ(k):
        unit = _unit(k)
        return None if unit is None else occurrence(word, modality.arg, unit, truth)

    if isinstance(modality, Eventually):
        near, far = occ(r + l), occ(r + l + 1)
        # last occurrence in [r+l, r+l+1) is at least l (or more) later
        near_ok = near is not None and near.last - now > 0 and (
            near.last - now > l if piece.lower_open else near.last - now >= l)
        # first occurrence in [r+l+1, r+l+2) is at most l+1 (or less) later
        far_ok = far is not None and far.last - now > 0 and (
            far.first - now < l + 1 if piece.upper_open else far.first - now <= l + 1)
        return near_ok or far_ok
    far, near = occ(r - l - 1), occ(r - l)
    far_ok = far is not None and now - far.first > 0 and (
        now - far.last < l + 1 if piece.upper_open else now - far.last <= l + 1)
    near_ok = near is not None and now - near.first > 0 and (
        now - near.first > l if piece.lower_open else now - near.first >= l)
    return far_ok or near_ok


def bounded_condition(word: TimedWord, i: int, modality: Modal) -> bool:
    """
    Decide a bounded modality at ``i`` through its unit pieces: the
    disjunction of ``unit_condition`` over the split of its interval.
    """
    interval = modality.interval
    if not interval.bounded or interval.punctual:
        raise FragmentError(f"{modality} is not bounded and non-punctual")
    r = math.floor(word.stamp(i))
    truth = evaluate(word, modality.arg)
    return any(
        unit_condition(word, i, modality, piece, r, truth) for piece in interval.split()
    )
