"""
Extract an equivalent formula from a po2DTA file.
"""
from mitl.cli import MitlCommand
from mitl.core.fragments import modal_dag_size
from mitl.services import PipelineService


class Command(MitlCommand):
    help = 'Extract a formula accepting the same words as an automaton'

    def add_command_arguments(self, parser):
        parser.add_argument('--automaton', required=True, help='Automaton JSON file')
        parser.add_argument('--paths', action='store_true', help='Also list the accepting progress paths')

    def run_command(self, automaton, paths, **options):
        _, formula, accepting = PipelineService.extract(automaton)
        size = modal_dag_size(formula)
        lines = [str(formula)]
        if paths:
            lines += [f"path: {path}" for path in accepting]
        self.emit(
            {
                'formula': str(formula),
                'paths': [str(path) for path in accepting],
                'dag_size': size.total,
            },
            lines,
        )
