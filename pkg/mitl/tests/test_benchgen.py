from django.test import SimpleTestCase, tag

from mitl.analysis import is_satisfiable
from mitl.benchgen import (
    SEPARATOR, TilingSystem, canonical_bounds, check_tiling, gen_expspace, gen_nexptime, gen_pspace,
    generate, instance_from_dict, instance_to_dict, load_instance, solve_tiling, tiling_problems,
    tiling_to_word, word_to_tiling,
)
from mitl.catalog import samples_dir
from mitl.core import Fragment, classify_fragment, parse_word
from mitl.exceptions import TilingError
from mitl.oracle import language_member


def sample(name):
    return load_instance(samples_dir() / f'{name}.json')


def failed_conjuncts(tiling_formula, word):
    return [name for name, conjunct in tiling_formula.conjuncts if not language_member(word, conjunct)]


class TilingTests(SimpleTestCase):

    def test_word_encoding(self):
        word = tiling_to_word([['x', 'x'], ['x', 'x']])
        self.assertEqual(str(word), 'x@0 x@1 s@2 x@3 x@4 s@5')
        self.assertEqual(word_to_tiling(word, 2), (('x', 'x'), ('x', 'x')))
        self.assertEqual(word_to_tiling(word, 2, rows=1), (('x', 'x'),))
        self.assertEqual(str(tiling_to_word([['w', 'x']], gap='3/2')), 'w@0 x@3/2 s@3')

    def test_bad_encodings(self):
        with self.assertRaises(TilingError):
            word_to_tiling(parse_word('x@0 s@1'), 2)
        with self.assertRaises(TilingError):
            word_to_tiling(parse_word('x@0 x@1'), 2)
        with self.assertRaises(TilingError):
            tiling_to_word([['x', 'x'], ['x']])

    def test_solutions(self):
        corridor = sample('pspace_corridor')
        self.assertEqual(solve_tiling(corridor), (('w', 'x'),))
        self.assertTrue(check_tiling([['w', 'x'], ['w', 'x']], corridor))
        self.assertIn('bottom row does not match', tiling_problems((('x', 'w'),), corridor))
        self.assertIsNone(solve_tiling(sample('nexptime_blocked')))
        self.assertEqual(solve_tiling(sample('nexptime_single')), (('x', 'x'), ('x', 'x')))
        self.assertTrue(check_tiling([['x', 'x']], sample('expspace_single')))


class InstanceTests(SimpleTestCase):

    def test_samples(self):
        instance = sample('nexptime_single')
        self.assertEqual((instance.width, instance.height, instance.length), (2, 2, 6))
        self.assertEqual(instance.system.alphabet, ('s', 'x'))
        self.assertEqual(sample('pspace_corridor').width, 2)
        self.assertEqual(sample('expspace_single').width, 2)

    def test_dictionary_round_trip(self):
        for name in ('expspace_single', 'nexptime_single', 'pspace_corridor'):
            instance = sample(name)
            with self.subTest(instance=name):
                self.assertEqual(instance_from_dict(instance_to_dict(instance)), instance)

    def test_malformed_instances(self):
        good = instance_to_dict(sample('nexptime_single'))
        broken = [
            {k: v for k, v in good.items() if k != 'n'},
            dict(good, family='corridor'),
            dict(good, tiles=['x', SEPARATOR]),
            dict(good, prefix=['x', 'x']),
            dict(good, n=0),
            dict(good, horizontal=[['x', 'y']]),
        ]
        for data in broken:
            with self.subTest(data=data), self.assertRaises(TilingError):
                instance_from_dict(data)

    def test_missing_file(self):
        with self.assertRaises(TilingError):
            load_instance(samples_dir() / 'missing.json')

    def test_tiling_system(self):
        with self.assertRaises(TilingError):
            TilingSystem(())
        self.assertEqual(TilingSystem(('b', 'a')).tiles, ('a', 'b'))


class GeneratedFormulaTests(SimpleTestCase):

    def test_generator_per_family(self):
        generators = {
            'expspace_single': gen_expspace,
            'nexptime_single': gen_nexptime,
            'pspace_corridor': gen_pspace,
        }
        for name, generator in generators.items():
            instance = sample(name)
            with self.subTest(instance=name):
                self.assertEqual(generator(instance).formula, generate(instance).formula)

    def test_nexptime_encoding(self):
        tiling_formula = generate(sample('nexptime_single'))
        self.assertEqual(tiling_formula.names, ['spacing', 'separators', 'prefix', 'horizontal', 'vertical'])
        self.assertTrue(classify_fragment(tiling_formula.formula).within(Fragment.BOUNDED))
        word = tiling_to_word([['x', 'x'], ['x', 'x']])
        self.assertEqual(failed_conjuncts(tiling_formula, word), [])
        self.assertTrue(language_member(word, tiling_formula.formula))

    def test_nexptime_blocked(self):
        tiling_formula = generate(sample('nexptime_blocked'))
        word = tiling_to_word([['x', 'x'], ['x', 'x']])
        self.assertEqual(failed_conjuncts(tiling_formula, word), ['vertical'])

    def test_expspace_encoding(self):
        tiling_formula = generate(sample('expspace_single'))
        self.assertEqual(failed_conjuncts(tiling_formula, parse_word('x@0 x@1 s@2')), [])
        self.assertIs(tiling_formula.conjunct('first'), tiling_formula.conjuncts[2][1])
        with self.assertRaises(KeyError):
            tiling_formula.conjunct('prefix')

    def test_pspace_encoding(self):
        tiling_formula = generate(sample('pspace_corridor'))
        self.assertTrue(classify_fragment(tiling_formula.formula).within(Fragment.ZERO_INF))
        good = parse_word('w@0 x@3/2 s@3 w@9/2 x@6 s@15/2')
        self.assertEqual(good, tiling_to_word([['w', 'x'], ['w', 'x']], gap='3/2'))
        self.assertEqual(failed_conjuncts(tiling_formula, good), [])
        long_row = parse_word('w@0 x@3/2 s@3 w@9/2 x@6 x@15/2 s@9')
        self.assertIn('row_length', failed_conjuncts(tiling_formula, long_row))
        crowded = parse_word('w@0 x@1/2 s@2')
        self.assertIn('spacing', failed_conjuncts(tiling_formula, crowded))

    def test_canonical_bounds(self):
        bounds = canonical_bounds(sample('nexptime_single'))
        self.assertEqual((bounds.min_length, bounds.max_length, bounds.grid, bounds.horizon), (6, 6, 1, 5))
        self.assertEqual(len(list(bounds.words())), 64)
        corridor = canonical_bounds(sample('pspace_corridor'), rows=2)
        self.assertEqual((corridor.max_length, corridor.grid), (6, 2))


@tag('slow')
class TilingSearchTests(SimpleTestCase):

    def test_nexptime_witness_decodes_to_a_tiling(self):
        instance = sample('nexptime_single')
        tiling_formula = generate(instance)
        verdict = is_satisfiable(tiling_formula.formula, canonical_bounds(instance), tiling_formula.alphabet)
        self.assertTrue(verdict.satisfiable)
        self.assertEqual(str(verdict.witness), 'x@0 x@1 s@2 x@3 x@4 s@5')
        self.assertTrue(check_tiling(word_to_tiling(verdict.witness, instance.width), instance))

    def test_nexptime_blocked_has_no_witness(self):
        instance = sample('nexptime_blocked')
        tiling_formula = generate(instance)
        verdict = is_satisfiable(tiling_formula.formula, canonical_bounds(instance), tiling_formula.alphabet)
        self.assertFalse(verdict.satisfiable)
