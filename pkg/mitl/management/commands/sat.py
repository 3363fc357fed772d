"""
Bounded satisfiability check of a formula.
"""
from mitl.cli import MitlCommand
from mitl.core.words import format_word
from mitl.services import PipelineService


class Command(MitlCommand):
    help = 'Search for a word satisfying a formula (exit 1 on UNSAT-within-bounds)'

    def add_command_arguments(self, parser):
        parser.add_argument('--formula', required=True)

    def run_command(self, formula, **options):
        result = PipelineService.sat(formula, self.bounds(self.alphabet or ()), self.alphabet)
        lines = [result.outcome.value]
        if result.witness is not None:
            lines.append(f"witness: {format_word(result.witness)}")
        bounds = result.bounds
        lines.append(
            f"checked {result.words_checked} words "
            f"(length {bounds.min_length}..{bounds.max_length}, grid 1/{bounds.grid}, "
            f"horizon {bounds.to_dict()['horizon']}) in {result.elapsed:.3f}s"
        )
        self.emit(result.to_dict(), lines)
        self.verdict(result.satisfiable, result.outcome.value)
