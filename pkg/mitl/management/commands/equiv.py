"""
Sampled equivalence check of two formulas or automata.
"""
from django.core.management.base import CommandError

from mitl.cli import EXIT_USAGE, MitlCommand
from mitl.core.words import format_word
from mitl.forms import SamplerForm, form_errors
from mitl.services import PipelineService


class Command(MitlCommand):
    help = (
        'Compare two languages on sampled words. Each side is a formula or an '
        'automaton JSON file (exit 1 when a difference is found)'
    )

    def add_command_arguments(self, parser):
        parser.add_argument('--left', required=True, help='Formula text or automaton file')
        parser.add_argument('--right', required=True, help='Formula text or automaton file')
        parser.add_argument('--words', type=int)
        parser.add_argument('--max-length', type=int)
        parser.add_argument('--grid', type=int)
        parser.add_argument('--horizon')
        parser.add_argument('--seed', type=int)

    def run_command(self, left, right, **options):
        form = SamplerForm({
            key: options[key] for key in ('words', 'max_length', 'grid', 'horizon', 'seed')
            if options.get(key) is not None
        })
        if not form.is_valid():
            raise CommandError(f"Invalid sampler options: {form_errors(form)}", returncode=EXIT_USAGE)

        report = PipelineService.equiv(left, right, form.config(self.alphabet), self.alphabet)
        if report.equivalent:
            lines = [f"equivalent on {report.checked} sampled words"]
        else:
            lines = [
                'inequivalent',
                f"counterexample: {format_word(report.counterexample)}",
                f"left: {str(report.left).lower()}, right: {str(report.right).lower()}",
            ]
        self.emit(report.to_dict(), lines)
        self.verdict(report.equivalent, 'the languages differ')
