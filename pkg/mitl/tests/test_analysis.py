from fractions import Fraction

from django.test import SimpleTestCase, override_settings

from mitl.analysis import (
    Outcome, SamplerConfig, SearchBounds, compile_formula, is_satisfiable, sample_words,
    sampled_equivalence, size_report, witness_search,
)
from mitl.catalog import separating, worked_automaton, worked_formula
from mitl.core import TRUE, Fragment, parse_formula
from mitl.exceptions import FragmentError, UnknownAtomError
from mitl.oracle import language_member


class SearchBoundsTests(SimpleTestCase):

    def test_words(self):
        words = list(SearchBounds(2, 1, 1, ('a', 'b')).words())
        self.assertEqual(len(words), 6)
        self.assertEqual(str(words[0]), 'a@0')
        self.assertEqual(str(words[-1]), 'b@0 b@1')
        self.assertTrue(all(word.anchored for word in words))

    def test_min_length(self):
        words = list(SearchBounds(2, 1, 1, ('a',), min_length=2).words())
        self.assertEqual([str(w) for w in words], ['a@0 a@1'])
        with self.assertRaises(ValueError):
            SearchBounds(2, 1, 1, min_length=3)

    def test_invalid_bounds(self):
        for args in ((0, 1, 1), (2, 0, 1), (2, 1, -1)):
            with self.subTest(args=args), self.assertRaises(ValueError):
                SearchBounds(*args)

    def test_default_for(self):
        bounds = SearchBounds.default_for(worked_automaton())
        self.assertEqual((bounds.max_length, bounds.grid, bounds.horizon), (4, 5, Fraction(12)))
        self.assertEqual(bounds.alphabet, ('b', 'c'))

    @override_settings(MITL={'SEARCH_MAX_DEFAULT_LENGTH': 3})
    def test_default_length_cap_is_configurable(self):
        self.assertEqual(SearchBounds.default_for(worked_automaton()).max_length, 3)


class WitnessSearchTests(SimpleTestCase):

    def test_first_witness(self):
        verdict = witness_search(worked_automaton(), SearchBounds(2, 1, 2, ('b', 'c')))
        self.assertIs(verdict.outcome, Outcome.SAT)
        self.assertEqual(str(verdict.witness), 'c@0 b@1')
        self.assertEqual(verdict.words_checked, 5)
        self.assertTrue(verdict.trace.accepted)
        data = verdict.to_dict()
        self.assertEqual(data['verdict'], 'SAT')
        self.assertEqual(data['witness'], 'c@0 b@1')
        self.assertEqual(data['bounds']['horizon'], '2')
        self.assertEqual(data['statistics']['words_checked'], 5)

    def test_negative_answer_within_bounds(self):
        verdict = witness_search(worked_automaton(), SearchBounds(1, 1, 2))
        self.assertIs(verdict.outcome, Outcome.UNSAT)
        self.assertEqual(verdict.words_checked, 2)
        self.assertNotIn('witness', verdict.to_dict())
        self.assertEqual(verdict.to_dict()['verdict'], 'UNSAT-within-bounds')


class SatisfiabilityTests(SimpleTestCase):

    def test_contradiction_needs_no_words(self):
        verdict = is_satisfiable(parse_formula('a & !a'))
        self.assertFalse(verdict.satisfiable)
        self.assertEqual(verdict.words_checked, 0)

    def test_lower_bound_formula(self):
        verdict = is_satisfiable(separating('L3'), SearchBounds(3, 1, 4))
        self.assertTrue(verdict.satisfiable)
        self.assertEqual(str(verdict.witness), 'a@0 a@1 c@4')
        self.assertTrue(language_member(verdict.witness, separating('L3')))

    def test_lower_bound_formula_out_of_reach(self):
        self.assertFalse(is_satisfiable(separating('L3'), SearchBounds(2, 1, 3)).satisfiable)

    def test_bounded_formula(self):
        verdict = is_satisfiable(separating('L4'), SearchBounds(3, 2, 3))
        self.assertTrue(verdict.satisfiable)
        self.assertTrue(language_member(verdict.witness, separating('L4')))

    def test_compiler_choice(self):
        self.assertIs(compile_formula(separating('L3'))[1].fragment, Fragment.LOWER_BOUND)
        self.assertIs(compile_formula(separating('L4'))[1].fragment, Fragment.BOUNDED)

    def test_no_compiler(self):
        for formula in (separating('L1'), parse_formula('F[1,1] a')):
            with self.subTest(formula=str(formula)), self.assertRaises(FragmentError):
                is_satisfiable(formula)


class EquivalenceTests(SimpleTestCase):

    def config(self, **kwargs):
        return SamplerConfig.from_settings(**kwargs)

    def test_settings_defaults(self):
        config = self.config(words=10)
        self.assertEqual(config.words, 10)
        self.assertEqual(config.grid, 4)
        self.assertEqual(config.horizon, Fraction(6))

    def test_samples_repeat(self):
        config = self.config(words=20, seed=7)
        self.assertEqual(sample_words(config, 'ab', [1]), sample_words(config, 'ab', [1]))
        self.assertTrue(all(word.anchored for word in sample_words(config, 'ab')))

    def test_worked_formula_and_automaton(self):
        report = sampled_equivalence(worked_automaton(), worked_formula(), self.config(words=80))
        self.assertTrue(report.equivalent)
        self.assertEqual(report.checked, 80)

    def test_counterexample(self):
        report = sampled_equivalence(
            parse_formula('a'), parse_formula('b'), self.config(alphabet=('a', 'b')),
        )
        self.assertFalse(report.equivalent)
        self.assertEqual(report.checked, 1)
        self.assertNotEqual(report.left, report.right)
        self.assertIn('counterexample', report.to_dict())

    def test_predicate_side(self):
        report = sampled_equivalence(
            lambda word: word.letter(1) == 'a', parse_formula('a'), self.config(words=30, alphabet=('a', 'b')),
        )
        self.assertTrue(report.equivalent)

    def test_alphabet_needed(self):
        with self.assertRaises(UnknownAtomError):
            sampled_equivalence(TRUE, TRUE, self.config(words=5))


class SizeReportTests(SimpleTestCase):

    def test_bounded_formula(self):
        report = size_report(separating('L4'))
        self.assertEqual(report.closure_size, 6)
        self.assertIsNone(report.lower_bound)
        self.assertGreater(report.bounded.states, 0)
        self.assertEqual((report.modalities, report.constant_bits, report.dag_size), (2, 4, 6))
        self.assertIn('closure_size', report.to_dict())

    def test_lower_bound_formula(self):
        report = size_report(separating('L3'))
        self.assertIsNone(report.bounded)
        self.assertIn(report.lower_bound.clocks, (2, 3))
        self.assertNotIn('bounded', report.to_dict())

    def test_no_compiler(self):
        with self.assertRaises(FragmentError):
            size_report(separating('L1'))
