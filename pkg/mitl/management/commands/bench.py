"""
Generate tiling benchmark formulas.
"""
import json
from pathlib import Path

from django.core.management.base import CommandError

from mitl.analysis import is_satisfiable
from mitl.benchgen import (
    canonical_bounds, check_tiling, encoding_gap, solve_tiling, tiling_problems, word_to_tiling,
)
from mitl.cli import EXIT_USAGE, MitlCommand
from mitl.core.words import format_word, parse_word
from mitl.exceptions import TilingError
from mitl.forms import TilingInstanceForm, form_errors
from mitl.oracle import language_member
from mitl.services import PipelineService


class Command(MitlCommand):
    help = 'Encode a tiling instance as a formula and optionally solve or check it'

    def add_command_arguments(self, parser):
        parser.add_argument('--instance', required=True, help='Tiling instance JSON file')
        parser.add_argument(
            '--family',
            choices=('pspace', 'expspace', 'nexptime'),
            help='Expected family; overrides the file when it has none',
        )
        parser.add_argument('--solve', action='store_true', help='Search for a witness of the formula')
        parser.add_argument('--check-word', help='Check a timed word against every conjunct')
        parser.add_argument('--conjuncts', action='store_true', help='Print the named conjuncts')
        parser.add_argument(
            '--tiling',
            action='store_true',
            help='Look for a tiling of at most two rows by brute force',
        )

    def load(self, path: str, family):
        try:
            data = json.loads(Path(path).read_text(encoding='utf-8'))
        except (OSError, json.JSONDecodeError) as exc:
            raise CommandError(f"Cannot read tiling instance {path}: {exc}", returncode=EXIT_USAGE) from exc
        if not isinstance(data, dict):
            raise CommandError(f"{path} does not hold a JSON object", returncode=EXIT_USAGE)
        if family:
            if data.get('family', family) != family:
                raise CommandError(
                    f"{path} holds a {data['family']} instance, not {family}", returncode=EXIT_USAGE,
                )
            data['family'] = family
        form = TilingInstanceForm(data)
        if not form.is_valid():
            raise CommandError(f"Invalid tiling instance: {form_errors(form)}", returncode=EXIT_USAGE)
        return form.cleaned_data['instance']

    def run_command(self, instance, family, solve, check_word, conjuncts, tiling, **options):
        tiling_instance = self.load(instance, family)
        encoded = PipelineService.bench(tiling_instance)
        data = {
            'family': tiling_instance.family,
            'n': tiling_instance.n,
            'alphabet': list(encoded.alphabet),
            'formula': str(encoded.formula),
        }
        lines = [str(encoded.formula)]
        if conjuncts:
            data['conjuncts'] = {name: str(f) for name, f in encoded.conjuncts}
            lines = [f"{name}: {f}" for name, f in encoded.conjuncts]

        verdict = True
        if check_word:
            word = parse_word(check_word)
            failed = [name for name, f in encoded.conjuncts if not language_member(word, f)]
            data['check'] = {'word': format_word(word), 'failed': failed}
            lines.append('word satisfies every conjunct' if not failed else f"failed: {', '.join(failed)}")
            verdict = not failed

        if solve:
            bounds = self.bounds(encoded.alphabet)
            if bounds is None and tiling_instance.family == 'nexptime':
                bounds = canonical_bounds(tiling_instance)
            result = is_satisfiable(encoded.formula, bounds, encoded.alphabet)
            data['search'] = result.to_dict()
            lines.append(result.outcome.value)
            if result.witness is not None:
                lines.append(f"witness: {format_word(result.witness)}")
                data['search']['tiling'] = self._decode(result.witness, tiling_instance)
            verdict = verdict and result.satisfiable

        if tiling:
            known = solve_tiling(tiling_instance)
            data['tiling'] = None if known is None else [list(row) for row in known]
            lines.append(
                'no tiling found' if known is None
                else f"tiling: {' / '.join(' '.join(row) for row in known)}"
            )
            verdict = verdict and known is not None

        self.emit(data, lines)
        self.verdict(verdict, 'no solution or failed check')

    @staticmethod
    def _decode(word, instance):
        """Rows of the witness, with the problems the tiling rules report."""
        try:
            tiling = word_to_tiling(word, instance.width)
        except TilingError as exc:
            return {'error': str(exc)}
        return {
            'rows': [list(row) for row in tiling],
            'valid': check_tiling(tiling, instance),
            'problems': tiling_problems(tiling, instance),
            'gap': str(encoding_gap(instance)),
        }
