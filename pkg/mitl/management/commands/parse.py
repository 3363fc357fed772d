"""
Parse a formula and print it back in the concrete grammar.
"""
from mitl.cli import MitlCommand
from mitl.services import PipelineService


class Command(MitlCommand):
    help = 'Parse a formula and print it back in the concrete grammar'

    def add_command_arguments(self, parser):
        parser.add_argument('--formula', required=True, help='Formula text, e.g. "F(0,inf)(a & F[1,inf) c)"')

    def run_command(self, formula, **options):
        parsed = PipelineService.parse(formula, self.alphabet)
        self.emit(
            {
                'formula': str(parsed),
                'atoms': sorted(parsed.atoms()),
                'modalities': len(parsed.modalities()),
            },
            [str(parsed)],
        )
