"""
Print the letter-case normal form of a formula.
"""
from mitl.cli import MitlCommand
from mitl.services import PipelineService


class Command(MitlCommand):
    help = 'Rewrite a formula into normal form and list its modargs innermost first'

    def add_command_arguments(self, parser):
        parser.add_argument('--formula', required=True)

    def run_command(self, formula, **options):
        normal = PipelineService.normalize(formula, self.alphabet)
        polarities = normal.polarities()
        modargs = normal.modargs()

        lines = [f"{letter}: {body}" for letter, body in normal.cases]
        for k, modarg in enumerate(modargs, start=1):
            lines.append(f"modarg {k} [{polarities[modarg].value}]: {modarg}")
        self.emit(
            {
                'formula': str(normal),
                'cases': {letter: str(body) for letter, body in normal.cases},
                'modargs': [
                    {'formula': str(m), 'polarity': polarities[m].value} for m in modargs
                ],
            },
            lines,
        )
