"""
Parser for the concrete formula grammar.

    formula  := formula '|' formula | formula '&' formula
              | '!' formula | ('F' | 'P') interval formula
              | NAME | 'true' | 'false' | '(' formula ')' | '[' formula ']'
    interval := ('[' | '(') INT ',' (INT | 'inf') (']' | ')')

Unary operators bind tighter than '&', which binds tighter than '|'; binary
operators associate to the left. Whitespace is ignored.
"""
import logging
from functools import lru_cache
from typing import Iterable, Optional

from lark import Lark, Token, Tree
from lark.exceptions import UnexpectedInput

from mitl.core.formulas import (
    FALSE, TRUE, And, Atom, Eventually, Formula, Not, Once, Or,
)
from mitl.core.intervals import Interval
from mitl.exceptions import FormulaSyntaxError, UnknownAtomError

logger = logging.getLogger(__name__)

GRAMMAR = r'''
?start: disjunction

?disjunction: conjunction
    | disjunction "|" conjunction -> or_

?conjunction: unary
    | conjunction "&" unary -> and_

?unary: primary
    | "!" unary -> not_
    | "F" interval unary -> eventually
    | "P" interval unary -> once

?primary: NAME -> atom
    | "true" -> true
    | "false" -> false
    | "(" disjunction ")"
    | "[" disjunction "]"

interval: "[" bounds "]" -> closed_closed
    | "[" bounds ")" -> closed_open
    | "(" bounds "]" -> open_closed
    | "(" bounds ")" -> open_open

bounds: INT "," upper
?upper: INT | INF

INF: "inf"
INT: /[0-9]+/
NAME: /[A-Za-z_][A-Za-z0-9_]*/

%import common.WS
%ignore WS
'''

_BRACKETS = {
    'closed_closed': (False, False),
    'closed_open': (False, True),
    'open_closed': (True, False),
    'open_open': (True, True),
}


@lru_cache(maxsize=1)
def _parser() -> Lark:
    return Lark(GRAMMAR, parser='lalr')


class FormulaParser:
    """Turns formula text into a shared (DAG) formula AST."""

    def __init__(self, alphabet: Optional[Iterable[str]] = None):
        self.alphabet = None if alphabet is None else frozenset(alphabet)
        self._interned = {}

    def raw_parse(self, text: str) -> Tree:
        """Get the raw Lark tree."""
        try:
            return _parser().parse(text)
        except UnexpectedInput as exc:
            raise FormulaSyntaxError(
                f"Cannot parse formula near {_excerpt(text, exc)!r}",
                getattr(exc, 'line', None),
                getattr(exc, 'column', None),
            ) from exc

    def parse(self, text: str) -> Formula:
        formula = self._translate(self.raw_parse(text))
        if self.alphabet is not None:
            unknown = sorted(formula.atoms() - self.alphabet)
            if unknown:
                raise UnknownAtomError(
                    f"Atoms not in the alphabet {sorted(self.alphabet)}: {', '.join(unknown)}"
                )
        return formula

    def _intern(self, node: Formula) -> Formula:
        return self._interned.setdefault(node, node)

    def _translate(self, ast) -> Formula:
        """Translate from Lark to our AST format."""
        if isinstance(ast, Token):
            raise FormulaSyntaxError(f"Unexpected token {ast!r}")
        kind = ast.data
        args = ast.children
        if kind == 'atom':
            node = Atom(str(args[0]))
        elif kind == 'true':
            node = TRUE
        elif kind == 'false':
            node = FALSE
        elif kind == 'not_':
            node = Not(self._translate(args[0]))
        elif kind == 'and_':
            node = And(self._translate(args[0]), self._translate(args[1]))
        elif kind == 'or_':
            node = Or(self._translate(args[0]), self._translate(args[1]))
        elif kind in ('eventually', 'once'):
            interval = self._interval(args[0])
            arg = self._translate(args[1])
            node = Eventually(interval, arg) if kind == 'eventually' else Once(interval, arg)
        else:
            raise FormulaSyntaxError(f"Unexpected construct {kind!r}")
        return self._intern(node)

    @staticmethod
    def _interval(tree: Tree) -> Interval:
        lower_open, upper_open = _BRACKETS[tree.data]
        lower_token, upper_token = tree.children[0].children
        upper = None if upper_token.type == 'INF' else int(upper_token)
        return Interval(int(lower_token), upper, lower_open, upper_open)


def _excerpt(text: str, exc: UnexpectedInput) -> str:
    position = getattr(exc, 'pos_in_stream', None)
    if position is None:
        return text[:20]
    return text[max(0, position - 5):position + 10]


def parse_formula(text: str, alphabet: Optional[Iterable[str]] = None) -> Formula:
    """
    Parse formula text.

    Args:
        text: Formula in the concrete grammar
        alphabet: Declared event symbols; atoms outside it are rejected

    Returns:
        The formula, with equal subformulas shared
    """
    return FormulaParser(alphabet).parse(text)
