"""
Tests for the management commands and the ``mitl`` console entry point.
"""
import json
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from io import StringIO
from pathlib import Path

from django.core.management import CommandError, call_command
from django.test import SimpleTestCase

from mitl.catalog import RHO_ACC, RHO_REJ, SEPARATING, samples_dir
from mitl.cli import EXIT_FALSE, EXIT_OK, EXIT_USAGE, alphabet_arg, dispatch


def sample(name):
    return str(samples_dir() / name)


class CommandTestCase(SimpleTestCase):

    def call(self, name, **options):
        out, err = StringIO(), StringIO()
        call_command(name, stdout=out, stderr=err, **options)
        return out.getvalue(), err.getvalue()

    def call_failing(self, name, returncode, **options):
        out = StringIO()
        with self.assertRaises(CommandError) as caught:
            call_command(name, stdout=out, stderr=StringIO(), **options)
        self.assertEqual(caught.exception.returncode, returncode)
        return out.getvalue(), str(caught.exception)


class FormulaCommandTests(CommandTestCase):

    def test_parse(self):
        out, _ = self.call('parse', formula=SEPARATING['L3'])
        self.assertEqual(out, 'F(0,inf) (a & F(2,inf) c)\n')
        data = json.loads(self.call('parse', formula=SEPARATING['L3'], format='json')[0])
        self.assertEqual(data, {'formula': 'F(0,inf) (a & F(2,inf) c)', 'atoms': ['a', 'c'], 'modalities': 2})

    def test_parse_error(self):
        _, message = self.call_failing('parse', EXIT_USAGE, formula='a &')
        self.assertIn('Cannot parse formula', message)

    def test_unknown_atom(self):
        self.call_failing('parse', EXIT_USAGE, formula='a & z', alphabet=('a',))

    def test_normalize(self):
        out, _ = self.call('normalize', formula='a & F[1,inf) b', alphabet=('a', 'b'))
        self.assertTrue(out.startswith('a: F[1,inf) '))
        self.assertIn('modarg 1 [F]', out)

    def test_classify(self):
        out, _ = self.call('classify', formula=SEPARATING['L4'])
        self.assertEqual(out.splitlines(), [
            'Bounded MITL[F_b,P_b] (future only)',
            'modalities: 2, constant bits: 4, size: 6',
        ])

    def test_eval(self):
        out, _ = self.call('eval', formula=SEPARATING['L1'], word='c@0 a@1 c@5/2')
        self.assertEqual(out, 'true\n')
        out, _ = self.call_failing('eval', EXIT_FALSE, formula=SEPARATING['L1'], word='c@0 a@1 c@3')
        self.assertEqual(out, 'false\n')
        self.call('eval', formula='P[0,inf) b', word='b@0 a@1', position=2)

    def test_eval_extended(self):
        out, _ = self.call('eval', formula='_begin', word='a@1', extended=True)
        self.assertEqual(out, 'true\n')

    def test_bad_word(self):
        self.call_failing('eval', EXIT_USAGE, formula='a', word='a@1 b@0')

    def test_size_report(self):
        out, _ = self.call('size_report', formula=SEPARATING['L4'])
        self.assertIn('closure size: 6', out)
        self.assertIn('bounded: ', out)
        self.call_failing('size_report', EXIT_USAGE, formula=SEPARATING['L1'])


class AutomatonCommandTests(CommandTestCase):

    def test_compile_and_run(self):
        with tempfile.TemporaryDirectory() as folder:
            path = str(Path(folder) / 'l3.json')
            out, err = self.call('compile', formula=SEPARATING['L3'], output=path)
            self.assertIn('states', out)
            self.assertIn(f'Wrote {path}', err)
            out, _ = self.call('run', automaton=path, word='c@0 a@1/2 c@3')
            self.assertEqual(out, 'accept\n')
            out, _ = self.call_failing('run', EXIT_FALSE, automaton=path, word='a@0 c@5/2')
            self.assertEqual(out, 'reject\n')

    def test_compile_outputs(self):
        out, _ = self.call('compile', formula=SEPARATING['L4'], fragment='bounded')
        self.assertEqual(json.loads(out)['initial'], 'init.S')
        out, _ = self.call('compile', formula=SEPARATING['L4'], dot=True)
        self.assertTrue(out.startswith('digraph'))

    def test_compile_outside_fragments(self):
        self.call_failing('compile', EXIT_USAGE, formula=SEPARATING['L1'])
        self.call_failing('compile', EXIT_USAGE, formula=SEPARATING['L4'], fragment='lb')

    def test_run_trace(self):
        out, _ = self.call('run', automaton=sample('a_ex.json'), word=RHO_ACC, trace=True)
        lines = out.splitlines()
        self.assertEqual(lines[:2], ['accept', 'S @1 [c@1/5] x=0'])
        self.assertEqual(len(lines), 5)
        out, _ = self.call_failing('run', EXIT_FALSE, automaton=sample('a_ex.json'), word=RHO_REJ)
        self.assertEqual(out, 'reject\n')

    def test_missing_automaton(self):
        self.call_failing('run', EXIT_USAGE, automaton=sample('missing.json'), word='a@0')

    def test_extract(self):
        out, _ = self.call('extract', automaton=sample('a_ex.json'), paths=True)
        lines = out.splitlines()
        self.assertEqual(len(lines), 2)
        self.assertTrue(lines[1].startswith('path: S --b, T-x >= 1 & T-x <= 2 / x := T--> A'))
        data = json.loads(self.call('extract', automaton=sample('a_ex.json'), format='json')[0])
        self.assertEqual(len(data['paths']), 1)


class SearchCommandTests(CommandTestCase):

    def test_sat(self):
        out, _ = self.call('sat', formula=SEPARATING['L3'], bounds='3,1,4')
        lines = out.splitlines()
        self.assertEqual(lines[:2], ['SAT', 'witness: a@0 a@1 c@4'])
        self.assertTrue(lines[2].startswith('checked '))

    def test_unsat(self):
        out, _ = self.call_failing('sat', EXIT_FALSE, formula='a & !a')
        self.assertEqual(out.splitlines()[0], 'UNSAT-within-bounds')

    def test_sat_json(self):
        out, _ = self.call('sat', formula=SEPARATING['L4'], bounds='3,2,3', format='json')
        data = json.loads(out)
        self.assertEqual(data['verdict'], 'SAT')
        self.assertEqual(data['bounds']['max_length'], 3)

    def test_bad_bounds(self):
        for text in ('0,1,1', '3,1', 'a,b,c'):
            with self.subTest(bounds=text):
                _, message = self.call_failing('sat', EXIT_USAGE, formula='a', bounds=text)
                self.assertIn('Invalid --bounds', message)

    def test_equiv(self):
        out, _ = self.call('equiv', left='a', right='a | a', words=20)
        self.assertEqual(out, 'equivalent on 20 sampled words\n')
        out, _ = self.call_failing('equiv', EXIT_FALSE, left='a', right='b', alphabet=('a', 'b'))
        self.assertEqual(out.splitlines()[0], 'inequivalent')

    def test_equiv_with_automaton(self):
        out, _ = self.call('equiv', left=sample('a_ex.json'), right='false', words=10, max_length=1)
        self.assertEqual(out, 'equivalent on 10 sampled words\n')

    def test_equiv_options_checked(self):
        self.call_failing('equiv', EXIT_USAGE, left='a', right='a', horizon='-1')


class BenchCommandTests(CommandTestCase):

    def test_check_word(self):
        out, _ = self.call(
            'bench', instance=sample('nexptime_single.json'), check_word='x@0 x@1 s@2 x@3 x@4 s@5',
        )
        self.assertEqual(out.splitlines()[-1], 'word satisfies every conjunct')
        out, _ = self.call_failing(
            'bench', EXIT_FALSE, instance=sample('nexptime_blocked.json'),
            check_word='x@0 x@1 s@2 x@3 x@4 s@5',
        )
        self.assertEqual(out.splitlines()[-1], 'failed: vertical')

    def test_conjuncts(self):
        out, _ = self.call('bench', instance=sample('pspace_corridor.json'), conjuncts=True)
        names = [line.split(':')[0] for line in out.splitlines()]
        self.assertEqual(names, ['spacing', 'row_length', 'horizontal', 'vertical', 'bottom', 'top', 'left', 'right'])

    def test_tiling(self):
        out, _ = self.call('bench', instance=sample('pspace_corridor.json'), tiling=True)
        self.assertEqual(out.splitlines()[-1], 'tiling: w x')
        data = json.loads(self.call('bench', instance=sample('expspace_single.json'), format='json')[0])
        self.assertEqual((data['family'], data['n']), ('expspace', 1))

    def test_bad_instances(self):
        self.call_failing('bench', EXIT_USAGE, instance=sample('nexptime_single.json'), family='pspace')
        self.call_failing('bench', EXIT_USAGE, instance=sample('missing.json'))
        with tempfile.TemporaryDirectory() as folder:
            path = Path(folder) / 'bad.json'
            path.write_text(json.dumps({'family': 'nexptime', 'n': 0, 'tiles': ['x'], 'prefix': []}))
            _, message = self.call_failing('bench', EXIT_USAGE, instance=str(path))
            self.assertIn('Invalid tiling instance', message)


class DispatchTests(SimpleTestCase):

    def dispatch(self, *argv):
        out, err = StringIO(), StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = dispatch(argv)
        return code, out.getvalue(), err.getvalue()

    def test_exit_codes(self):
        self.assertEqual(self.dispatch('parse', '--formula', 'a')[0], EXIT_OK)
        self.assertEqual(self.dispatch('sat', '--formula', 'a & !a')[0], EXIT_FALSE)
        self.assertEqual(self.dispatch('parse', '--formula', 'a &')[0], EXIT_USAGE)
        self.assertEqual(self.dispatch('parse')[0], EXIT_USAGE)

    def test_hyphenated_command(self):
        code, out, _ = self.dispatch('size-report', '--formula', 'F(0,1) a')
        self.assertEqual(code, EXIT_OK)
        self.assertIn('closure size: 3', out)

    def test_usage(self):
        code, out, _ = self.dispatch()
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn('commands: parse', out)
        self.assertEqual(self.dispatch('--help')[0], EXIT_OK)
        code, _, err = self.dispatch('tile')
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("Unknown command 'tile'", err)

    def test_run_from_command_line(self):
        code, out, _ = self.dispatch('run', '--automaton', sample('a_ex.json'), '--word', RHO_ACC)
        self.assertEqual((code, out), (EXIT_OK, 'accept\n'))
        code, out, err = self.dispatch('run', '--automaton', sample('a_ex.json'), '--word', RHO_REJ)
        self.assertEqual((code, out), (EXIT_FALSE, 'reject\n'))
        self.assertIn('FalseVerdict: run ended in reject', err)

    def test_alphabet_option(self):
        self.assertEqual(alphabet_arg('c, a,a'), ('a', 'c'))
        with self.assertRaises(ValueError):
            alphabet_arg(' , ')
        code, _, _ = self.dispatch('equiv', '--left', 'a', '--right', 'b', '--alphabet', 'a,b')
        self.assertEqual(code, EXIT_FALSE)
