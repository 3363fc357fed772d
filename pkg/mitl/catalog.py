"""
Named formulas and bundled sample files.
"""
from pathlib import Path
from typing import Dict

from mitl.automaton.model import Po2dta
from mitl.automaton.serialization import load_automaton
from mitl.conf import get_setting
from mitl.core.formulas import TRUE, Atom, Eventually, Formula, Not, Once, conjunction
from mitl.core.intervals import ANYTIME, POSITIVE, Interval
from mitl.core.parser import parse_formula
from mitl.core.words import TimedWord, parse_word

# Languages separating the fragments from one another.
SEPARATING = {
    'L1': 'F(0,inf)(a & F(1,2) c)',
    'L2': 'F(0,inf)(a & F[0,2] c)',
    'L3': 'F(0,inf)(a & F(2,inf) c)',
    'L4': 'F(0,1)(a & F(1,2) c)',
}

#: Words for the worked automaton: the c sits exactly one unit before the b or it does not.
RHO_ACC = 'c@1/5 b@6/5'
RHO_REJ = 'c@3/10 b@6/5'


def separating(name: str) -> Formula:
    return parse_formula(SEPARATING[name])


def separating_formulas() -> Dict[str, Formula]:
    return {name: separating(name) for name in SEPARATING}


#: Holds only at the first position.
AT_FIRST = Not(Once(ANYTIME, TRUE))


def first_window_b() -> Formula:
    """A ``b`` whose stamp lies in [1,2]."""
    return conjunction([
        Atom('b'),
        Once(Interval(1, None, False, True), AT_FIRST),
        Not(Once(Interval(2, None, True, True), AT_FIRST)),
    ])


def first_b_in_window() -> Formula:
    """The first ``b`` with stamp in [1,2]; it holds at one position at most."""
    window_b = first_window_b()
    return conjunction([window_b, Not(Once(POSITIVE, window_b))])


def worked_formula() -> Formula:
    """Lower-bound formula for: the first b in [1,2] has a c exactly one unit before it."""
    first_b = first_b_in_window()
    c_one_before = conjunction([Atom('c'), Not(Eventually(Interval(1, None, True, True), first_b))])
    return Eventually(ANYTIME, conjunction([first_b, Once(Interval(1, None, False, True), c_one_before)]))


def samples_dir() -> Path:
    return Path(get_setting('SAMPLES_DIR'))


def worked_automaton() -> Po2dta:
    """Scan right for the first b in [1,2], then left for a c exactly one unit earlier."""
    return load_automaton(samples_dir() / 'a_ex.json')


def worked_words() -> Dict[str, TimedWord]:
    return {'accept': parse_word(RHO_ACC), 'reject': parse_word(RHO_REJ)}
