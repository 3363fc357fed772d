"""
Abstract syntax of unary MITL: atoms, boolean connectives and the interval
modalities F (eventually, strictly later) and P (once, strictly earlier).

Nodes are immutable and compare structurally, so equal subformulas can be
shared and deduplicated through dictionaries.
"""
from dataclasses import dataclass, fields
from typing import Iterator, Tuple

from mitl.core.intervals import Interval

# Printing precedence; higher binds tighter.
_OR, _AND, _UNARY = 1, 2, 3


class Formula:
    """Base class of formula nodes."""

    def children(self) -> Tuple['Formula', ...]:
        return ()

    def walk(self) -> Iterator['Formula']:
        """Pre-order traversal that visits each distinct node once."""
        seen = set()
        stack = [self]
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            yield node
            stack.extend(reversed(node.children()))

    def atoms(self) -> frozenset:
        return frozenset(n.name for n in self.walk() if isinstance(n, Atom))

    def modalities(self) -> list:
        return [n for n in self.walk() if isinstance(n, Modal)]

    def intervals(self) -> list:
        return [n.interval for n in self.modalities()]

    def _key(self) -> tuple:
        return tuple(getattr(self, f.name) for f in fields(self))

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        cached = self.__dict__.get('_hash')
        if cached is None:
            cached = hash((type(self).__name__,) + self._key())
            object.__setattr__(self, '_hash', cached)
        return cached

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)

    def precedence(self) -> int:
        return _UNARY

    def __str__(self):
        return pretty(self)


@dataclass(frozen=True, eq=False)
class Atom(Formula):
    name: str


@dataclass(frozen=True, eq=False)
class Top(Formula):
    pass


@dataclass(frozen=True, eq=False)
class Bottom(Formula):
    pass


@dataclass(frozen=True, eq=False)
class Not(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True, eq=False)
class And(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)

    def precedence(self):
        return _AND


@dataclass(frozen=True, eq=False)
class Or(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)

    def precedence(self):
        return _OR


@dataclass(frozen=True, eq=False)
class Modal(Formula):
    interval: Interval
    arg: Formula

    symbol = '?'

    def children(self):
        return (self.arg,)

    @property
    def future(self) -> bool:
        return self.symbol == 'F'


@dataclass(frozen=True, eq=False)
class Eventually(Modal):
    """F_I arg: arg holds at a later position whose distance lies in I."""
    symbol = 'F'


@dataclass(frozen=True, eq=False)
class Once(Modal):
    """P_I arg: arg holds at an earlier position whose distance lies in I."""
    symbol = 'P'


TRUE = Top()
FALSE = Bottom()


def conjunction(parts) -> Formula:
    """Left-nested conjunction; the empty conjunction is true."""
    result = None
    for part in parts:
        result = part if result is None else And(result, part)
    return TRUE if result is None else result


def disjunction(parts) -> Formula:
    """Left-nested disjunction; the empty disjunction is false."""
    result = None
    for part in parts:
        result = part if result is None else Or(result, part)
    return FALSE if result is None else result


def implies(left: Formula, right: Formula) -> Formula:
    return Or(Not(left), right)


def modal(symbol: str, interval: Interval, arg: Formula) -> Modal:
    return Eventually(interval, arg) if symbol == 'F' else Once(interval, arg)


def pretty(formula: Formula) -> str:
    """Print in the concrete grammar; the output parses back to an equal AST."""
    memo = {}

    def show(node: Formula) -> str:
        if node in memo:
            return memo[node]
        if isinstance(node, Atom):
            text = node.name
        elif isinstance(node, Top):
            text = 'true'
        elif isinstance(node, Bottom):
            text = 'false'
        elif isinstance(node, Not):
            text = '!' + wrap(node.arg, _UNARY)
        elif isinstance(node, Modal):
            text = f"{node.symbol}{node.interval} {wrap(node.arg, _UNARY)}"
        elif isinstance(node, (And, Or)):
            op = ' & ' if isinstance(node, And) else ' | '
            level = node.precedence()
            # Binary connectives associate to the left.
            text = wrap(node.left, level) + op + wrap(node.right, level + 1)
        else:
            text = node.describe()
        memo[node] = text
        return text

    def wrap(node: Formula, level: int) -> str:
        text = show(node)
        return f"({text})" if node.precedence() < level else text

    return show(formula)
