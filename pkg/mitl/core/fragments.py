"""
Syntactic fragments of unary MTL and the modal-DAG size measure.
"""
from enum import Enum
from typing import NamedTuple

from mitl.core.formulas import Formula, Once
from mitl.core.intervals import IntervalKind


class Fragment(Enum):
    LOWER_BOUND = 'MITL[F_inf,P_inf]'
    UPPER_BOUND = 'MITL[F_0,P_0]'
    BOUNDED = 'Bounded MITL[F_b,P_b]'
    ZERO_INF = 'MITL[F_0inf,P_0inf]'
    FULL = 'MITL[F_I,P_I]'
    NON_MITL = 'MTL[F_I,P_I]'

    def within(self, other: 'Fragment') -> bool:
        """Syntactic inclusion: every formula of ``self`` is also in ``other``."""
        return other in _ANCESTORS[self]

    @property
    def label(self) -> str:
        return self.value


_PARENTS = {
    Fragment.LOWER_BOUND: (Fragment.ZERO_INF,),
    Fragment.UPPER_BOUND: (Fragment.ZERO_INF, Fragment.BOUNDED),
    Fragment.BOUNDED: (Fragment.FULL,),
    Fragment.ZERO_INF: (Fragment.FULL,),
    Fragment.FULL: (Fragment.NON_MITL,),
    Fragment.NON_MITL: (),
}


def _ancestors(fragment):
    found = {fragment}
    for parent in _PARENTS[fragment]:
        found |= _ancestors(parent)
    return frozenset(found)


_ANCESTORS = {fragment: _ancestors(fragment) for fragment in Fragment}


class FragmentTag(NamedTuple):
    fragment: Fragment
    future_only: bool

    def within(self, fragment: Fragment) -> bool:
        return self.fragment.within(fragment)

    def __str__(self):
        suffix = ' (future only)' if self.future_only else ''
        return f"{self.fragment.label}{suffix}"


def classify_fragment(formula: Formula) -> FragmentTag:
    """
    Most specific fragment containing ``formula``.

    Checked in order: any punctual interval, all lower-bound, all
    upper-bound, all bounded, each upper- or lower-bound, otherwise full
    MITL. Formulas without modalities land in the lower-bound fragment.
    """
    modalities = formula.modalities()
    kinds = {m.interval.kind for m in modalities}
    future_only = not any(isinstance(m, Once) for m in modalities)

    if IntervalKind.PUNCTUAL in kinds:
        fragment = Fragment.NON_MITL
    elif kinds <= {IntervalKind.LOWER_BOUND}:
        fragment = Fragment.LOWER_BOUND
    elif kinds <= {IntervalKind.UPPER_BOUND}:
        fragment = Fragment.UPPER_BOUND
    elif kinds <= {IntervalKind.UPPER_BOUND, IntervalKind.BOUNDED}:
        fragment = Fragment.BOUNDED
    elif kinds <= {IntervalKind.UPPER_BOUND, IntervalKind.LOWER_BOUND}:
        fragment = Fragment.ZERO_INF
    else:
        fragment = Fragment.FULL
    return FragmentTag(fragment, future_only)


class DagSize(NamedTuple):
    modalities: int
    constant_bits: int
    total: int


def modal_dag_size(formula: Formula) -> DagSize:
    """Distinct modal nodes, the bits of their finite constants, and the sum."""
    modalities = formula.modalities()
    bits = sum(c.bit_length() for m in modalities for c in m.interval.constants())
    return DagSize(len(modalities), bits, len(modalities) + bits)
