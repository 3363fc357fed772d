"""
Bounded witness search over po2DTA and the checks built on it.

Emptiness is decided by generate-and-check: every word up to a length, with
stamps on a grid of denominator ``g`` up to a horizon, is run through the
engine. Negative answers only hold within those bounds.
"""
import json
import logging
import random
import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Iterable, Iterator, List, Optional, Tuple, Union

import networkx as nx

from mitl.automaton.engine import RunResult, run
from mitl.automaton.model import Po2dta, transition_graph
from mitl.bcompile import ClosureSet, compile_bounded
from mitl.conf import get_setting
from mitl.core.formulas import Formula
from mitl.core.fragments import Fragment, FragmentTag, classify_fragment, modal_dag_size
from mitl.core.normal_form import to_normal_form
from mitl.core.words import MARKERS, TimedWord, format_stamp, format_word
from mitl.exceptions import FragmentError, MitlError, UnknownAtomError
from mitl.lbcompile import compile_alphabet, compile_lb
from mitl.oracle import language_member

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchBounds:
    """Words of length ``min_length..max_length``, stamps ``k/grid`` in ``[0, horizon]``, first stamp 0."""
    max_length: int
    grid: int
    horizon: Fraction
    alphabet: Tuple[str, ...] = ()
    min_length: int = 1

    def __post_init__(self):
        if self.max_length < 1:
            raise ValueError(f"max_length must be at least 1, got {self.max_length}")
        if not 1 <= self.min_length <= self.max_length:
            raise ValueError(f"min_length must lie in 1..{self.max_length}, got {self.min_length}")
        if self.grid < 1:
            raise ValueError(f"grid must be at least 1, got {self.grid}")
        object.__setattr__(self, 'horizon', Fraction(self.horizon))
        if self.horizon < 0:
            raise ValueError(f"horizon must be non-negative, got {self.horizon}")
        object.__setattr__(self, 'alphabet', tuple(sorted(set(self.alphabet))))

    @classmethod
    def default_for(cls, automaton: Po2dta, cap: Optional[int] = None) -> 'SearchBounds':
        """N = 2 * #transitions + 2 (capped), g = N + 1, horizon = (largest constant + 1) * N."""
        cap = get_setting('SEARCH_MAX_DEFAULT_LENGTH') if cap is None else cap
        length = min(2 * len(automaton.transitions) + 2, cap)
        largest = max(automaton.constants(), default=0)
        return cls(length, length + 1, Fraction((largest + 1) * length), automaton.alphabet)

    def with_alphabet(self, alphabet: Iterable[str]) -> 'SearchBounds':
        return SearchBounds(self.max_length, self.grid, self.horizon, tuple(alphabet), self.min_length)

    def grid_points(self) -> int:
        """Number of non-zero grid stamps within the horizon."""
        return int(self.horizon * self.grid)

    def stamp_sequences(self, length: int) -> Iterator[Tuple[Fraction, ...]]:
        """Strictly increasing stamp tuples starting at 0, in lexicographic order."""
        for steps in combinations(range(1, self.grid_points() + 1), length - 1):
            yield (Fraction(0),) + tuple(Fraction(k, self.grid) for k in steps)

    def words(self) -> Iterator[TimedWord]:
        """Every candidate word: by length, then stamps, then letters."""
        for length in range(self.min_length, self.max_length + 1):
            for stamps in self.stamp_sequences(length):
                for letters in product(self.alphabet, repeat=length):
                    yield TimedWord(letters, stamps)

    def to_dict(self) -> dict:
        return {
            'min_length': self.min_length,
            'max_length': self.max_length,
            'grid': self.grid,
            'horizon': format_stamp(self.horizon),
            'alphabet': list(self.alphabet),
        }


class Outcome(Enum):
    SAT = 'SAT'
    UNSAT = 'UNSAT-within-bounds'


@dataclass(frozen=True)
class SearchVerdict:
    outcome: Outcome
    bounds: SearchBounds
    witness: Optional[TimedWord] = None
    trace: Optional[RunResult] = field(default=None, compare=False, repr=False)
    words_checked: int = 0
    elapsed: float = field(default=0.0, compare=False)

    @property
    def satisfiable(self) -> bool:
        return self.outcome is Outcome.SAT

    def to_dict(self) -> dict:
        data = {
            'verdict': self.outcome.value,
            'bounds': self.bounds.to_dict(),
            'statistics': {'words_checked': self.words_checked, 'time': round(self.elapsed, 4)},
        }
        if self.witness is not None:
            data['witness'] = format_word(self.witness)
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def witness_search(automaton: Po2dta, bounds: Optional[SearchBounds] = None) -> SearchVerdict:
    """
    First accepted word in the search order of ``bounds``, or a bounded
    negative answer. When the accept state is unreachable in the transition
    graph no word is tried.
    """
    automaton.check()
    bounds = SearchBounds.default_for(automaton) if bounds is None else bounds
    if not bounds.alphabet:
        bounds = bounds.with_alphabet(automaton.alphabet)
    started = time.perf_counter()

    if not nx.has_path(transition_graph(automaton), automaton.initial, automaton.accept):
        logger.info("Accept state of %s is unreachable", automaton.name or '?')
        return SearchVerdict(Outcome.UNSAT, bounds, elapsed=time.perf_counter() - started)

    checked = 0
    for word in bounds.words():
        checked += 1
        result = run(automaton, word, check=False)
        if result.accepted:
            elapsed = time.perf_counter() - started
            logger.info("Witness %s found after %d words", word, checked)
            return SearchVerdict(Outcome.SAT, bounds, word, result, checked, elapsed)
    elapsed = time.perf_counter() - started
    logger.info("No witness for %s within %s (%d words)", automaton.name or '?', bounds, checked)
    return SearchVerdict(Outcome.UNSAT, bounds, words_checked=checked, elapsed=elapsed)


def compile_formula(formula: Formula, alphabet: Optional[Iterable[str]] = None) -> Tuple[Po2dta, FragmentTag]:
    """Compile with the lower-bound compiler when possible, else the bounded one."""
    tag = classify_fragment(formula)
    if tag.within(Fragment.LOWER_BOUND):
        return compile_lb(formula, alphabet), tag
    if tag.within(Fragment.BOUNDED):
        return compile_bounded(formula, alphabet), tag
    raise FragmentError(f"No compiler for {tag}")


def is_satisfiable(formula: Formula, bounds: Optional[SearchBounds] = None,
                   alphabet: Optional[Iterable[str]] = None) -> SearchVerdict:
    """
    Satisfiability of a lower-bound or bounded formula: compile, search, then
    check the witness against the formula itself.

    Raises:
        FragmentError: The formula is in neither fragment
    """
    automaton, tag = compile_formula(formula, alphabet)
    logger.debug("is_satisfiable: %s compiled as %s", formula, tag)
    verdict = witness_search(automaton, bounds)
    if verdict.satisfiable and not language_member(verdict.witness, formula):
        raise MitlError(
            f"Witness {verdict.witness} is accepted by the compiled automaton but does not satisfy {formula}"
        )
    return verdict


Side = Union[Formula, Po2dta, Callable[[TimedWord], bool]]


@dataclass(frozen=True)
class SamplerConfig:
    words: int
    max_length: int
    grid: int
    horizon: Fraction
    seed: int
    alphabet: Tuple[str, ...] = ()

    @classmethod
    def from_settings(cls, **overrides) -> 'SamplerConfig':
        values = {
            'words': get_setting('SAMPLER_WORDS'),
            'max_length': get_setting('SAMPLER_MAX_LENGTH'),
            'grid': get_setting('SAMPLER_GRID'),
            'horizon': Fraction(get_setting('SAMPLER_HORIZON')),
            'seed': get_setting('SAMPLER_SEED'),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass(frozen=True)
class EquivalenceReport:
    equivalent: bool
    checked: int
    counterexample: Optional[TimedWord] = None
    left: Optional[bool] = None
    right: Optional[bool] = None

    def to_dict(self) -> dict:
        data = {'equivalent': self.equivalent, 'checked': self.checked}
        if self.counterexample is not None:
            data['counterexample'] = format_word(self.counterexample)
            data['left'] = self.left
            data['right'] = self.right
        return data


def _side_alphabet(side: Side) -> frozenset:
    if isinstance(side, Po2dta):
        return frozenset(side.alphabet)
    if isinstance(side, Formula):
        return frozenset(side.atoms()) - set(MARKERS)
    return frozenset()


def _side_constants(side: Side) -> set:
    if isinstance(side, Po2dta):
        return set(side.constants())
    if isinstance(side, Formula):
        return {c for interval in side.intervals() for c in interval.constants()}
    return set()


def _decider(side: Side) -> Callable[[TimedWord], bool]:
    if isinstance(side, Po2dta):
        automaton = side.check()
        return lambda word: run(automaton, word, check=False).accepted
    if isinstance(side, Formula):
        return lambda word: language_member(word, side)
    if callable(side):
        return side
    raise TypeError(f"Cannot decide membership with {side!r}")


def sample_words(config: SamplerConfig, alphabet: Iterable[str], constants: Iterable[int] = ()) -> List[TimedWord]:
    """
    Anchored words with gaps on the grid of ``config``. Half of the gaps are
    drawn from the constants and their neighbours at distance ``1/grid``.
    """
    rng = random.Random(config.seed)
    letters = sorted(set(alphabet))
    step = Fraction(1, config.grid)
    boundary = sorted({
        gap for c in constants for gap in (Fraction(c) - step, Fraction(c), Fraction(c) + step) if gap > 0
    })
    top = max(1, int(config.horizon * config.grid))
    words = []
    for _ in range(config.words):
        length = rng.randint(1, config.max_length)
        stamps = [Fraction(0)]
        for _ in range(length - 1):
            if boundary and rng.random() < 0.5:
                gap = rng.choice(boundary)
            else:
                gap = Fraction(rng.randint(1, top), config.grid)
            stamps.append(stamps[-1] + gap)
        words.append(TimedWord(tuple(rng.choice(letters) for _ in range(length)), tuple(stamps)))
    return words


def sampled_equivalence(left: Side, right: Side, config: Optional[SamplerConfig] = None) -> EquivalenceReport:
    """
    Compare two languages on sampled anchored words. Each side is a formula
    (language membership), an automaton (acceptance) or a predicate on words.
    """
    config = SamplerConfig.from_settings() if config is None else config
    alphabet = set(config.alphabet) or (_side_alphabet(left) | _side_alphabet(right))
    if not alphabet:
        raise UnknownAtomError("Sampled equivalence needs an alphabet")
    constants = _side_constants(left) | _side_constants(right)
    decide_left, decide_right = _decider(left), _decider(right)

    checked = 0
    for word in sample_words(config, alphabet, constants):
        checked += 1
        l_value, r_value = decide_left(word), decide_right(word)
        if l_value != r_value:
            logger.info("Counterexample after %d words: %s (%s vs %s)", checked, word, l_value, r_value)
            return EquivalenceReport(False, checked, word, l_value, r_value)
    logger.info("No difference on %d sampled words", checked)
    return EquivalenceReport(True, checked)


@dataclass(frozen=True)
class CompiledSize:
    states: int
    clocks: int
    transitions: int

    @classmethod
    def of(cls, automaton: Po2dta) -> 'CompiledSize':
        return cls(len(automaton.states), len(automaton.clocks), len(automaton.transitions))


@dataclass(frozen=True)
class SizeReport:
    formula: str
    fragment: str
    modalities: int
    constant_bits: int
    dag_size: int
    normal_form_modalities: int
    lower_bound: Optional[CompiledSize] = None
    closure_size: Optional[int] = None
    bounded: Optional[CompiledSize] = None

    def to_dict(self) -> dict:
        data = {
            'formula': self.formula,
            'fragment': self.fragment,
            'modalities': self.modalities,
            'constant_bits': self.constant_bits,
            'dag_size': self.dag_size,
            'normal_form_modalities': self.normal_form_modalities,
        }
        if self.lower_bound is not None:
            data['lower_bound'] = vars(self.lower_bound)
        if self.bounded is not None:
            data['closure_size'] = self.closure_size
            data['bounded'] = vars(self.bounded)
        return data


def size_report(formula: Formula, alphabet: Optional[Iterable[str]] = None) -> SizeReport:
    """DAG size of the formula and of every automaton a compiler produces for it."""
    tag = classify_fragment(formula)
    letters = compile_alphabet(formula, alphabet)
    size = modal_dag_size(formula)
    normal = to_normal_form(formula, letters)
    lower = bounded = closure_size = None
    if tag.within(Fragment.LOWER_BOUND):
        lower = CompiledSize.of(compile_lb(formula, letters))
    if tag.within(Fragment.BOUNDED):
        closure_size = len(ClosureSet(normal, 0))
        bounded = CompiledSize.of(compile_bounded(formula, letters))
    if lower is None and bounded is None:
        raise FragmentError(f"No compiler for {tag}")
    return SizeReport(
        formula=str(formula),
        fragment=str(tag),
        modalities=size.modalities,
        constant_bits=size.constant_bits,
        dag_size=size.total,
        normal_form_modalities=len(normal.modal_nodes()),
        lower_bound=lower,
        closure_size=closure_size,
        bounded=bounded,
    )
