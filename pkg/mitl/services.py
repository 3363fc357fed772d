"""
Service layer shared by the management commands.
"""
import logging
from pathlib import Path
from typing import Iterable, List, Optional, Tuple

from mitl.analysis import (
    EquivalenceReport, SamplerConfig, SearchBounds, SearchVerdict, SizeReport, Side,
    compile_formula, is_satisfiable, sampled_equivalence, size_report,
)
from mitl.automaton import Po2dta, RunResult, load_automaton, run
from mitl.bcompile import compile_bounded
from mitl.benchgen import Instance, TilingFormula, generate
from mitl.core import (
    DagSize, FragmentTag, NormalFormula, classify_fragment, modal_dag_size, parse_formula,
    parse_word, to_normal_form,
)
from mitl.core.formulas import Formula
from mitl.extract import Extractor, ProgressPath, accepts_extended
from mitl.lbcompile import compile_lb
from mitl.oracle import holds_at

logger = logging.getLogger(__name__)


class PipelineService:
    """
    Entry points of the toolkit, one per command. Inputs are the texts and
    paths a user types; outputs are library objects.
    """

    @staticmethod
    def parse(text: str, alphabet: Optional[Iterable[str]] = None) -> Formula:
        return parse_formula(text, alphabet)

    @staticmethod
    def normalize(text: str, alphabet: Optional[Iterable[str]] = None) -> NormalFormula:
        return to_normal_form(parse_formula(text, alphabet), alphabet)

    @staticmethod
    def classify(text: str) -> Tuple[FragmentTag, DagSize]:
        formula = parse_formula(text)
        return classify_fragment(formula), modal_dag_size(formula)

    @staticmethod
    def evaluate(text: str, word: str, position: int = 1, extended: bool = False,
                 alphabet: Optional[Iterable[str]] = None) -> bool:
        """
        Truth of a formula at ``position``. With ``extended`` the formula is
        read over the end-marked word at its start marker, as extracted
        formulas are.
        """
        formula = parse_formula(text, alphabet)
        timed = parse_word(word)
        if extended:
            return accepts_extended(formula, timed)
        return holds_at(timed, position, formula)

    @staticmethod
    def compile(text: str, fragment: Optional[str] = None,
                alphabet: Optional[Iterable[str]] = None) -> Po2dta:
        formula = parse_formula(text, alphabet)
        if fragment == 'lb':
            return compile_lb(formula, alphabet)
        if fragment == 'bounded':
            return compile_bounded(formula, alphabet)
        return compile_formula(formula, alphabet)[0]

    @staticmethod
    def extract(path: str) -> Tuple[Po2dta, Formula, List[ProgressPath]]:
        automaton = load_automaton(path)
        extractor = Extractor(automaton)
        return automaton, extractor.formula(), extractor.accepting_paths()

    @staticmethod
    def run(path: str, word: str) -> RunResult:
        return run(load_automaton(path), parse_word(word))

    @staticmethod
    def sat(text: str, bounds: Optional[SearchBounds] = None,
            alphabet: Optional[Iterable[str]] = None) -> SearchVerdict:
        return is_satisfiable(parse_formula(text, alphabet), bounds, alphabet)

    @staticmethod
    def side(value: str, alphabet: Optional[Iterable[str]] = None) -> Side:
        """An automaton file when ``value`` names an existing ``.json`` file, else a formula."""
        path = Path(value)
        if path.suffix == '.json' and path.is_file():
            return load_automaton(path)
        return parse_formula(value, alphabet)

    @staticmethod
    def equiv(left: str, right: str, config: Optional[SamplerConfig] = None,
              alphabet: Optional[Iterable[str]] = None) -> EquivalenceReport:
        return sampled_equivalence(
            PipelineService.side(left, alphabet), PipelineService.side(right, alphabet), config,
        )

    @staticmethod
    def bench(instance: Instance) -> TilingFormula:
        return generate(instance)

    @staticmethod
    def size_report(text: str, alphabet: Optional[Iterable[str]] = None) -> SizeReport:
        return size_report(parse_formula(text, alphabet), alphabet)
