from mitl.core.formulas import (
    FALSE, TRUE, And, Atom, Bottom, Eventually, Formula, Modal, Not, Once, Or, Top,
    conjunction, disjunction, implies, modal, pretty,
)
from mitl.core.fragments import DagSize, Fragment, FragmentTag, classify_fragment, modal_dag_size
from mitl.core.intervals import (
    ANYTIME, POSITIVE, Interval, IntervalKind, shift_interval, split_interval,
)
from mitl.core.normal_form import NormalFormula, Polarity, to_normal_form
from mitl.core.parser import FormulaParser, parse_formula
from mitl.core.words import (
    LEFT_MARKER, MARKERS, RIGHT_MARKER, ExtendedWord, TimedWord,
    format_stamp, format_word, parse_word, to_stamp,
)
