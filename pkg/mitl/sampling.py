"""
Seeded generators of formulas, words and small automata for property tests
and sampled checks. Everything takes a ``random.Random`` so runs repeat.
"""
import random
from fractions import Fraction
from typing import List, Sequence

from mitl.automaton.guards import TRUE_GUARD, Constraint, Difference, Guard, Relation
from mitl.automaton.model import Direction, Po2dta, State, Transition
from mitl.core.formulas import TRUE, And, Atom, Eventually, Formula, Not, Once, Or
from mitl.core.fragments import Fragment
from mitl.core.intervals import Interval
from mitl.core.words import LEFT_MARKER, RIGHT_MARKER, TimedWord


def random_interval(rng: random.Random, fragment: Fragment, max_constant: int = 3) -> Interval:
    """An interval allowed in ``fragment``; FULL mixes every non-punctual kind."""
    if fragment is Fragment.FULL:
        fragment = rng.choice([Fragment.LOWER_BOUND, Fragment.BOUNDED, Fragment.UPPER_BOUND])
    if fragment is Fragment.ZERO_INF:
        fragment = rng.choice([Fragment.LOWER_BOUND, Fragment.UPPER_BOUND])
    if fragment is Fragment.LOWER_BOUND:
        return Interval(rng.randint(0, max_constant), None, rng.random() < 0.5, True)
    lower = 0 if fragment is Fragment.UPPER_BOUND else rng.randint(0, max_constant - 1)
    upper = rng.randint(lower + 1, max(lower + 1, max_constant))
    return Interval(lower, upper, rng.random() < 0.5, rng.random() < 0.5)


def random_formula(rng: random.Random, fragment: Fragment, atoms: Sequence[str], depth: int = 3,
                   max_constant: int = 3, future_only: bool = False) -> Formula:
    """A formula of modal depth at most ``depth`` whose intervals lie in ``fragment``."""
    atoms = list(atoms)
    if depth <= 0 or rng.random() < 0.2:
        return TRUE if rng.random() < 0.1 else Atom(rng.choice(atoms))
    choice = rng.random()
    if choice < 0.15:
        return Not(random_formula(rng, fragment, atoms, depth, max_constant, future_only))
    if choice < 0.35:
        node = And if rng.random() < 0.5 else Or
        return node(
            random_formula(rng, fragment, atoms, depth - 1, max_constant, future_only),
            random_formula(rng, fragment, atoms, depth - 1, max_constant, future_only),
        )
    modality = Eventually if future_only or rng.random() < 0.5 else Once
    return modality(
        random_interval(rng, fragment, max_constant),
        random_formula(rng, fragment, atoms, depth - 1, max_constant, future_only),
    )


def random_word(rng: random.Random, alphabet: Sequence[str], max_length: int = 6, grid: int = 2,
                max_gap: int = 3, anchored: bool = True) -> TimedWord:
    """Strictly increasing stamps on multiples of ``1/grid``, gaps up to ``max_gap``."""
    letters = sorted(alphabet)
    length = rng.randint(1, max_length)
    start = Fraction(0) if anchored else Fraction(rng.randint(0, grid * max_gap), grid)
    stamps = [start]
    for _ in range(length - 1):
        stamps.append(stamps[-1] + Fraction(rng.randint(1, grid * max_gap), grid))
    return TimedWord(tuple(rng.choice(letters) for _ in range(length)), tuple(stamps))


def random_guard(rng: random.Random, clocks: Sequence[str], max_constant: int = 2) -> Guard:
    if not clocks or rng.random() < 0.25:
        return TRUE_GUARD
    return Guard.of(Constraint(
        rng.choice(list(clocks)),
        rng.choice(list(Relation)),
        rng.randint(0, max_constant),
        rng.choice(list(Difference)),
    ))


def random_automaton(rng: random.Random, alphabet: Sequence[str], max_edges: int = 3,
                     max_clocks: int = 2, max_constant: int = 2) -> Po2dta:
    """
    A valid po2DTA with at most ``max_edges`` progress transitions. Each
    scanning state gets its end-marker transition; the remaining budget goes
    to letter transitions, at most one per (state, letter).
    """
    letters = sorted(alphabet)
    clocks = [f"x{k}" for k in range(rng.randint(0, max_clocks))]
    count = rng.randint(1, min(2, max_edges))
    names = [f"q{k}" for k in range(count)]
    directions = [rng.choice(list(Direction)) for _ in names]
    states = [State(name, d, count - k) for k, (name, d) in enumerate(zip(names, directions))]
    states += [State('t', None, 0), State('r', None, 0)]

    def lower(k: int, avoid=None) -> List[str]:
        """States below ``names[k]``; a marker transition may not enter ``avoid``-moving states."""
        found = [names[j] for j in range(k + 1, count) if directions[j] is not avoid]
        return found + ['t', 'r']

    def resets() -> tuple:
        return tuple(c for c in clocks if rng.random() < 0.4)

    transitions = []
    for k, name in enumerate(names):
        if directions[k] is Direction.RIGHT:
            marker, avoid = RIGHT_MARKER, Direction.RIGHT
        else:
            marker, avoid = LEFT_MARKER, Direction.LEFT
        transitions.append(Transition(name, marker, TRUE_GUARD, rng.choice(lower(k, avoid)), resets()))

    used = set()
    for _ in range(max_edges - count):
        k = rng.randrange(count)
        letter = rng.choice(letters)
        if (k, letter) in used:
            continue
        used.add((k, letter))
        transitions.append(Transition(
            names[k], letter, random_guard(rng, clocks, max_constant), rng.choice(lower(k)), resets(),
        ))

    return Po2dta(
        states=tuple(states),
        clocks=tuple(clocks),
        transitions=tuple(transitions),
        initial=names[0],
        accept='t',
        reject='r',
        alphabet=tuple(letters),
        name=f"random{rng.randint(0, 9999)}",
    ).check()
