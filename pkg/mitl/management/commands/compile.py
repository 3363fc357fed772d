"""
Compile a formula into a po2DTA.
"""
from pathlib import Path

from django.core.management.base import CommandError

from mitl.automaton import automaton_to_dict, dumps_automaton, to_dot
from mitl.cli import EXIT_USAGE, MitlCommand
from mitl.services import PipelineService


class Command(MitlCommand):
    help = 'Compile a lower-bound or bounded formula into an automaton'

    def add_command_arguments(self, parser):
        parser.add_argument('--formula', required=True)
        parser.add_argument(
            '--fragment',
            choices=('lb', 'bounded'),
            help='Compiler to use; by default picked from the formula',
        )
        parser.add_argument('--output', help='Write the automaton JSON to this file')
        parser.add_argument('--dot', action='store_true', help='Print Graphviz text instead')

    def run_command(self, formula, fragment, output, dot, **options):
        automaton = PipelineService.compile(formula, fragment, self.alphabet)
        if output:
            try:
                Path(output).write_text(dumps_automaton(automaton) + '\n', encoding='utf-8')
            except OSError as exc:
                raise CommandError(f"Cannot write {output}: {exc}", returncode=EXIT_USAGE) from exc
            self.stderr.write(self.style.SUCCESS(f"Wrote {output}"))

        if dot:
            self.stdout.write(to_dot(automaton))
            return
        summary = (
            f"{len(automaton.states)} states, {len(automaton.clocks)} clocks, "
            f"{len(automaton.transitions)} transitions"
        )
        self.emit(automaton_to_dict(automaton), [summary] if output else [dumps_automaton(automaton)])
