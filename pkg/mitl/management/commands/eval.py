"""
Evaluate a formula on a timed word.
"""
from mitl.cli import MitlCommand
from mitl.services import PipelineService


class Command(MitlCommand):
    help = 'Evaluate a formula at a position of a timed word (exit 1 when false)'

    def add_command_arguments(self, parser):
        parser.add_argument('--formula', required=True)
        parser.add_argument('--word', required=True, help='Timed word, e.g. "a@0 c@5/2"')
        parser.add_argument('--position', type=int, default=1, help='1-based position (default 1)')
        parser.add_argument(
            '--extended',
            action='store_true',
            help='Evaluate at the start marker of the end-marked word, as extracted formulas are',
        )

    def run_command(self, formula, word, position, extended, **options):
        value = PipelineService.evaluate(formula, word, position, extended, self.alphabet)
        self.emit(
            {'value': value, 'position': 0 if extended else position},
            ['true' if value else 'false'],
        )
        self.verdict(value, 'formula is false')
