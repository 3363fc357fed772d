"""
Report the fragment of a formula and its DAG size.
"""
from mitl.cli import MitlCommand
from mitl.services import PipelineService


class Command(MitlCommand):
    help = 'Classify a formula into the most specific fragment containing it'

    def add_command_arguments(self, parser):
        parser.add_argument('--formula', required=True)

    def run_command(self, formula, **options):
        tag, size = PipelineService.classify(formula)
        self.emit(
            {
                'fragment': tag.fragment.label,
                'future_only': tag.future_only,
                'modalities': size.modalities,
                'constant_bits': size.constant_bits,
                'dag_size': size.total,
            },
            [
                str(tag),
                f"modalities: {size.modalities}, constant bits: {size.constant_bits}, size: {size.total}",
            ],
        )
