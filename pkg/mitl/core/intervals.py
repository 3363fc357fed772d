"""
Integer-endpoint intervals used as timing constraints of the F and P modalities.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional

from mitl.exceptions import IntervalError


class IntervalKind(Enum):
    """The four shapes an interval can take; every interval has exactly one."""
    PUNCTUAL = 'punctual'
    UPPER_BOUND = 'upper-bound'
    BOUNDED = 'bounded'
    LOWER_BOUND = 'lower-bound'


@dataclass(frozen=True)
class Interval:
    """
    Interval <l,u> with a natural lower end and a natural or infinite upper end.

    ``upper`` is None for infinity, which is always open.
    """
    lower: int
    upper: Optional[int]
    lower_open: bool = False
    upper_open: bool = True

    def __post_init__(self):
        if isinstance(self.lower, bool) or not isinstance(self.lower, int):
            raise IntervalError(f"Lower end must be an integer, got {self.lower!r}")
        if self.lower < 0:
            raise IntervalError(f"Lower end must be non-negative, got {self.lower}")
        if self.upper is None:
            if not self.upper_open:
                raise IntervalError("Infinite upper end must be open")
            return
        if isinstance(self.upper, bool) or not isinstance(self.upper, int):
            raise IntervalError(f"Upper end must be an integer or inf, got {self.upper!r}")
        if self.upper < self.lower:
            raise IntervalError(f"Upper end {self.upper} is below lower end {self.lower}")
        if self.upper == self.lower and (self.lower_open or self.upper_open):
            raise IntervalError(f"Empty interval {self}")

    @classmethod
    def closed(cls, lower: int, upper: int) -> 'Interval':
        return cls(lower, upper, False, False)

    @classmethod
    def open(cls, lower: int, upper: Optional[int]) -> 'Interval':
        return cls(lower, upper, True, True)

    @classmethod
    def from_lower(cls, lower: int, lower_open: bool = False) -> 'Interval':
        return cls(lower, None, lower_open, True)

    @property
    def bounded(self) -> bool:
        return self.upper is not None

    @property
    def punctual(self) -> bool:
        return self.upper == self.lower

    @property
    def kind(self) -> IntervalKind:
        if self.punctual:
            return IntervalKind.PUNCTUAL
        if self.upper is None:
            return IntervalKind.LOWER_BOUND
        if self.lower == 0:
            return IntervalKind.UPPER_BOUND
        return IntervalKind.BOUNDED

    def contains(self, value) -> bool:
        """Membership of a rational number."""
        value = Fraction(value)
        if value < self.lower or (self.lower_open and value == self.lower):
            return False
        if self.upper is None:
            return True
        return value < self.upper or (not self.upper_open and value == self.upper)

    __contains__ = contains

    def shift(self, k: int) -> 'Interval':
        """Shift both ends by ``k``, keeping the brackets: (2,3) + 2 = (4,5)."""
        lower = self.lower + k
        if lower < 0:
            raise IntervalError(f"Shifting {self} by {k} gives a negative lower end")
        upper = None if self.upper is None else self.upper + k
        return Interval(lower, upper, self.lower_open, self.upper_open)

    def split(self) -> List['Interval']:
        """
        Partition a bounded non-punctual interval into unit pieces <k,k+1>.

        The first piece keeps the lower bracket and the last piece keeps the
        upper bracket; every inner boundary is closed on the left:
        (3,6] splits into (3,4), [4,5), [5,6].
        """
        if self.upper is None:
            raise IntervalError(f"Cannot split unbounded interval {self}")
        if self.punctual:
            raise IntervalError(f"Cannot split punctual interval {self}")
        pieces = []
        for k in range(self.lower, self.upper):
            first = k == self.lower
            last = k + 1 == self.upper
            pieces.append(Interval(
                k,
                k + 1,
                self.lower_open if first else False,
                self.upper_open if last else True,
            ))
        return pieces

    def constants(self) -> tuple:
        return (self.lower,) if self.upper is None else (self.lower, self.upper)

    def __str__(self):
        left = '(' if self.lower_open else '['
        right = ')' if self.upper_open else ']'
        upper = 'inf' if self.upper is None else str(self.upper)
        return f"{left}{self.lower},{upper}{right}"


def split_interval(interval: Interval) -> List[Interval]:
    return interval.split()


def shift_interval(interval: Interval, k: int) -> Interval:
    return interval.shift(k)


#: The interval of the untimed modalities.
ANYTIME = Interval(0, None, False, True)
#: Strictly positive distances.
POSITIVE = Interval(0, None, True, True)
