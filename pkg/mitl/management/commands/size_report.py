"""
Size metrics of a formula and of its compiled automata.
"""
from mitl.cli import MitlCommand
from mitl.services import PipelineService


class Command(MitlCommand):
    help = 'Report DAG size, fragment and compiled automaton sizes of a formula'

    def add_command_arguments(self, parser):
        parser.add_argument('--formula', required=True)

    def run_command(self, formula, **options):
        report = PipelineService.size_report(formula, self.alphabet)
        data = report.to_dict()
        lines = [
            f"fragment: {report.fragment}",
            f"modalities: {report.modalities}, constant bits: {report.constant_bits}, "
            f"dag size: {report.dag_size}",
            f"normal form modalities: {report.normal_form_modalities}",
        ]
        for key in ('lower_bound', 'bounded'):
            size = getattr(report, key)
            if size is not None:
                lines.append(
                    f"{key.replace('_', '-')}: {size.states} states, {size.clocks} clocks, "
                    f"{size.transitions} transitions"
                )
        if report.closure_size is not None:
            lines.append(f"closure size: {report.closure_size}")
        self.emit(data, lines)
