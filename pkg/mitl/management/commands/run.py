"""
Run a po2DTA on a timed word.
"""
from mitl.automaton.engine import Verdict
from mitl.cli import MitlCommand
from mitl.services import PipelineService


class Command(MitlCommand):
    help = 'Run an automaton on a timed word (exit 1 unless it accepts)'

    def add_command_arguments(self, parser):
        parser.add_argument('--automaton', required=True, help='Automaton JSON file')
        parser.add_argument('--word', required=True)
        parser.add_argument('--trace', action='store_true', help='Print every configuration')

    def run_command(self, automaton, word, trace, **options):
        result = PipelineService.run(automaton, word)
        data = {
            'verdict': result.verdict.value,
            'steps': result.steps,
            'final_state': result.final.state,
        }
        lines = [result.verdict.value]
        if trace:
            data['trace'] = [c.describe(result.word) for c in result.trace]
            lines += data['trace']
        self.emit(data, lines)
        if result.verdict is Verdict.FELL_OFF:
            self.stderr.write(self.style.WARNING('The run left the word without reaching a terminal state'))
        self.verdict(result.accepted, f"run ended in {result.verdict.value}")
