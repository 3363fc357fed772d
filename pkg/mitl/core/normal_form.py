"""
Letter-indexed normal form.

A normal formula is a disjunction over letters ``a`` of ``a & B_a``, where
``B_a`` is a boolean combination of modal subformulas ``F_I m`` / ``P_I m``
whose arguments ``m`` (the modargs) are normal formulas themselves. Letters
whose ``B_a`` folds to false are dropped.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Tuple

from mitl.core.formulas import (
    FALSE, TRUE, And, Atom, Bottom, Formula, Modal, Not, Or, Top,
    disjunction, pretty,
)
from mitl.exceptions import UnknownAtomError

logger = logging.getLogger(__name__)


class Polarity(Enum):
    """Which modalities a modarg sits under."""
    FUTURE = 'F'
    PAST = 'P'
    BOTH = 'FP'

    @property
    def future(self) -> bool:
        return self is not Polarity.PAST

    @property
    def past(self) -> bool:
        return self is not Polarity.FUTURE


@dataclass(frozen=True, eq=False)
class NormalFormula(Formula):
    cases: Tuple[Tuple[str, Formula], ...]

    def children(self):
        return tuple(body for _, body in self.cases)

    @property
    def letters(self) -> Tuple[str, ...]:
        return tuple(letter for letter, _ in self.cases)

    def guard_for(self, letter: str) -> Formula:
        """B_a for ``letter``; false for letters without a case."""
        for case_letter, body in self.cases:
            if case_letter == letter:
                return body
        return FALSE

    def atoms(self) -> frozenset:
        return frozenset(
            letter
            for node in self.walk() if isinstance(node, NormalFormula)
            for letter in node.letters
        )

    def modargs(self) -> List['NormalFormula']:
        """
        Distinct modargs, innermost first.

        Ties are broken by first occurrence in a left-to-right traversal, so
        the order is stable for equal inputs.
        """
        order = []
        seen = set()

        def visit(node: Formula):
            if isinstance(node, Modal):
                arg = node.arg
                if arg not in seen:
                    for body in arg.children():
                        visit(body)
                    seen.add(arg)
                    order.append(arg)
                return
            for child in node.children():
                visit(child)

        for body in self.children():
            visit(body)
        return order

    def modal_nodes(self) -> List[Modal]:
        return [n for n in self.walk() if isinstance(n, Modal)]

    def polarities(self) -> Dict['NormalFormula', Polarity]:
        found = {}
        for node in self.modal_nodes():
            current = found.get(node.arg)
            mine = Polarity.FUTURE if node.future else Polarity.PAST
            found[node.arg] = mine if current in (None, mine) else Polarity.BOTH
        return found

    @cached_property
    def plain(self) -> Formula:
        return self.to_formula()

    def to_formula(self) -> Formula:
        """The equivalent ordinary formula, with modargs expanded."""
        memo = {}

        def expand(node: Formula) -> Formula:
            if node in memo:
                return memo[node]
            if isinstance(node, NormalFormula):
                parts = []
                for letter, body in node.cases:
                    body = expand(body)
                    parts.append(Atom(letter) if body == TRUE else And(Atom(letter), body))
                result = disjunction(parts)
            elif isinstance(node, Modal):
                result = type(node)(node.interval, expand(node.arg))
            elif isinstance(node, Not):
                result = Not(expand(node.arg))
            elif isinstance(node, And):
                result = And(expand(node.left), expand(node.right))
            elif isinstance(node, Or):
                result = Or(expand(node.left), expand(node.right))
            else:
                result = node
            memo[node] = result
            return result

        return expand(self)

    def precedence(self) -> int:
        return self.plain.precedence()

    def describe(self) -> str:
        return pretty(self.plain)


def negate(node: Formula) -> Formula:
    if node == TRUE:
        return FALSE
    if node == FALSE:
        return TRUE
    if isinstance(node, Not):
        return node.arg
    return Not(node)


def both(left: Formula, right: Formula) -> Formula:
    if left == FALSE or right == FALSE:
        return FALSE
    if left == TRUE:
        return right
    if right == TRUE or left == right:
        return left
    return And(left, right)


def either(left: Formula, right: Formula) -> Formula:
    if left == TRUE or right == TRUE:
        return TRUE
    if left == FALSE:
        return right
    if right == FALSE or left == right:
        return left
    return Or(left, right)


class NormalFormBuilder:
    """Builds normal forms over a fixed alphabet, sharing equal modargs."""

    def __init__(self, alphabet: Iterable[str]):
        self.alphabet = tuple(sorted(set(alphabet)))
        self._normal: Dict[Formula, NormalFormula] = {}
        self._interned: Dict[Formula, Formula] = {}

    def _intern(self, node: Formula) -> Formula:
        return self._interned.setdefault(node, node)

    def build(self, formula: Formula) -> NormalFormula:
        unknown = formula.atoms() - set(self.alphabet)
        if unknown:
            raise UnknownAtomError(
                f"Atoms not in the alphabet {list(self.alphabet)}: {', '.join(sorted(unknown))}"
            )
        return self._build(formula)

    def _build(self, formula: Formula) -> NormalFormula:
        cached = self._normal.get(formula)
        if cached is not None:
            return cached
        cases = []
        for letter in self.alphabet:
            body = self._specialize(formula, letter, {})
            if body != FALSE:
                cases.append((letter, body))
        result = self._intern(NormalFormula(tuple(cases)))
        self._normal[formula] = result
        return result

    def _specialize(self, node: Formula, letter: str, memo: dict) -> Formula:
        """B_letter of ``node``: atoms decided by the letter, modal nodes kept."""
        if node in memo:
            return memo[node]
        if isinstance(node, Atom):
            result = TRUE if node.name == letter else FALSE
        elif isinstance(node, (Top, Bottom)):
            result = node
        elif isinstance(node, NormalFormula):
            result = self._specialize(node.plain, letter, memo)
        elif isinstance(node, Not):
            result = negate(self._specialize(node.arg, letter, memo))
        elif isinstance(node, And):
            result = both(self._specialize(node.left, letter, memo),
                          self._specialize(node.right, letter, memo))
        elif isinstance(node, Or):
            result = either(self._specialize(node.left, letter, memo),
                            self._specialize(node.right, letter, memo))
        elif isinstance(node, Modal):
            result = self._intern(type(node)(node.interval, self._build(node.arg)))
        else:
            raise TypeError(f"Unsupported formula node {node!r}")
        memo[node] = result
        return result


def to_normal_form(formula: Formula, alphabet: Optional[Iterable[str]] = None) -> NormalFormula:
    """
    Normal form of ``formula`` over ``alphabet`` (default: its own atoms).

    Every modal subformula of the input maps to exactly one modal node of the
    result, so the modal-DAG size never grows.
    """
    if isinstance(formula, NormalFormula) and alphabet is None:
        return formula
    letters = formula.atoms() if alphabet is None else alphabet
    result = NormalFormBuilder(letters).build(formula)
    logger.debug("Normal form with %d modargs over %s", len(result.modargs()), sorted(letters))
    return result
