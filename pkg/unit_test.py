"""
Scenario tests for the timed logic toolkit.
Runs the toolkit end-to-end, the way the commands use it.
"""

import os
import sys
from contextlib import redirect_stderr, redirect_stdout
from io import StringIO

import django

# Setup Django environment
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'mitl_toolkit.settings')
django.setup()

from django.test import SimpleTestCase

from mitl.analysis import SamplerConfig, SearchBounds, sampled_equivalence
from mitl.automaton import Verdict, accepts, load_automaton
from mitl.benchgen import check_tiling, load_instance, solve_tiling, tiling_to_word
from mitl.catalog import RHO_ACC, RHO_REJ, SEPARATING, samples_dir, worked_automaton, worked_formula
from mitl.cli import EXIT_FALSE, EXIT_OK, dispatch
from mitl.core import Fragment, parse_word
from mitl.extract import accepts_extended
from mitl.oracle import language_member
from mitl.services import PipelineService


class ScenarioTestCase(SimpleTestCase):
    """Test actual usage scenarios"""

    def setUp(self):
        self.worked_path = str(samples_dir() / 'a_ex.json')

    def test_scenario_1_parse_and_classify(self):
        """Test: Parse the separating formulas and classify them"""
        print("\n📝 Test Scenario 1: Parse and Classify")

        expected = {
            'L1': Fragment.FULL,
            'L2': Fragment.ZERO_INF,
            'L3': Fragment.LOWER_BOUND,
            'L4': Fragment.BOUNDED,
        }
        for name, fragment in expected.items():
            tag, size = PipelineService.classify(SEPARATING[name])
            self.assertIs(tag.fragment, fragment)
            self.assertTrue(tag.future_only)
            print(f"✅ {name}: {tag} (size {size.total})")

    def test_scenario_2_run_worked_automaton(self):
        """Test: Run the worked automaton on its accepted and rejected words"""
        print("\n📝 Test Scenario 2: Two-way Runs")

        accepted = PipelineService.run(self.worked_path, RHO_ACC)
        self.assertIs(accepted.verdict, Verdict.ACCEPT)
        self.assertEqual(accepted.final.head, 1)
        print(f"✅ {RHO_ACC}: accepted in {accepted.steps} steps")

        rejected = PipelineService.run(self.worked_path, RHO_REJ)
        self.assertIs(rejected.verdict, Verdict.REJECT)
        print(f"✅ {RHO_REJ}: rejected in {rejected.steps} steps")

    def test_scenario_3_compile_lower_bound_formula(self):
        """Test: Compile a lower-bound formula and compare with the semantics"""
        print("\n📝 Test Scenario 3: Lower-bound Compilation")

        automaton = PipelineService.compile(SEPARATING['L3'], 'lb')
        self.assertEqual(automaton.validate(), [])
        print(f"✅ Compiled: {len(automaton.states)} states, {len(automaton.clocks)} clocks")

        formula = PipelineService.parse(SEPARATING['L3'])
        for text in ('c@0 a@1/2 c@3', 'a@0 c@5/2', 'c@0 a@1 c@3', 'a@0 a@1 c@4'):
            word = parse_word(text)
            self.assertEqual(accepts(automaton, word), language_member(word, formula))
            print(f"✅ {text}: {language_member(word, formula)}")

    def test_scenario_4_bounded_satisfiability(self):
        """Test: Find a witness for a bounded formula"""
        print("\n📝 Test Scenario 4: Bounded Satisfiability")

        verdict = PipelineService.sat(SEPARATING['L4'], SearchBounds(3, 2, 3))
        self.assertTrue(verdict.satisfiable)
        self.assertTrue(language_member(verdict.witness, PipelineService.parse(SEPARATING['L4'])))
        print(f"✅ Witness {verdict.witness} after {verdict.words_checked} words")

        verdict = PipelineService.sat('a & !a')
        self.assertFalse(verdict.satisfiable)
        print("✅ Contradiction reported UNSAT-within-bounds")

    def test_scenario_5_extract_formula(self):
        """Test: Extract a formula from the worked automaton"""
        print("\n📝 Test Scenario 5: Formula Extraction")

        automaton, formula, paths = PipelineService.extract(self.worked_path)
        self.assertEqual(len(paths), 1)
        print(f"✅ Extracted from {len(paths)} accepting path")

        for text, expected in ((RHO_ACC, True), (RHO_REJ, False)):
            value = accepts_extended(formula, parse_word(text))
            self.assertEqual(value, expected)
            print(f"✅ {text}: {value}")

    def test_scenario_6_sampled_equivalence(self):
        """Test: The worked formula and the worked automaton agree on sampled words"""
        print("\n📝 Test Scenario 6: Sampled Equivalence")

        report = sampled_equivalence(worked_automaton(), worked_formula(), SamplerConfig.from_settings(words=60))
        self.assertTrue(report.equivalent)
        print(f"✅ Equivalent on {report.checked} words")

        report = PipelineService.equiv('a', 'b')
        self.assertFalse(report.equivalent)
        print(f"✅ a and b differ on {report.counterexample}")

    def test_scenario_7_tiling_benchmarks(self):
        """Test: Generate tiling formulas and check their encodings"""
        print("\n📝 Test Scenario 7: Tiling Benchmarks")

        square = load_instance(samples_dir() / 'nexptime_single.json')
        encoded = PipelineService.bench(square)
        word = tiling_to_word([['x', 'x'], ['x', 'x']])
        self.assertTrue(language_member(word, encoded.formula))
        print(f"✅ {word} satisfies the nexptime encoding")

        corridor = load_instance(samples_dir() / 'pspace_corridor.json')
        tiling = solve_tiling(corridor)
        self.assertTrue(check_tiling(tiling, corridor))
        encoded = PipelineService.bench(corridor)
        self.assertTrue(language_member(tiling_to_word(tiling * 2, gap='3/2'), encoded.formula))
        print(f"✅ Corridor tiling {tiling} satisfies the pspace encoding")

    def test_scenario_8_console_exit_codes(self):
        """Test: The console entry point reports verdicts through exit codes"""
        print("\n📝 Test Scenario 8: Console Exit Codes")

        with redirect_stdout(StringIO()), redirect_stderr(StringIO()):
            accepted = dispatch(['run', '--automaton', self.worked_path, '--word', RHO_ACC])
            rejected = dispatch(['run', '--automaton', self.worked_path, '--word', RHO_REJ])
        self.assertEqual(accepted, EXIT_OK)
        self.assertEqual(rejected, EXIT_FALSE)
        print("✅ accept exits 0, reject exits 1")


def run_all_tests():
    """Run all scenario tests"""
    print("=" * 80)
    print("🧪 TIMED LOGIC TOOLKIT - SCENARIO TESTS")
    print("=" * 80)

    from django.test.runner import DiscoverRunner

    test_runner = DiscoverRunner(verbosity=2)
    failures = test_runner.run_tests(['__main__.ScenarioTestCase'])

    print("\n" + "=" * 80)
    if failures:
        print("❌ TESTS COMPLETED WITH FAILURES")
    else:
        print("✅ ALL TESTS PASSED SUCCESSFULLY!")
    print("=" * 80)

    return failures


def show_samples():
    """List the bundled sample files"""
    print("=" * 80)
    print("📂 BUNDLED SAMPLES")
    print("=" * 80)

    for path in sorted(samples_dir().glob('*.json')):
        if path.name == 'a_ex.json':
            automaton = load_automaton(path)
            print(f"🤖 {path.name}: automaton {automaton.name}, {len(automaton.states)} states")
        else:
            instance = load_instance(path)
            print(f"🧩 {path.name}: {instance.family} tiling, n={instance.n}")
    print("=" * 80)


if __name__ == '__main__':
    if len(sys.argv) > 1 and sys.argv[1] == '--samples':
        show_samples()
    else:
        sys.exit(1 if run_all_tests() else 0)
