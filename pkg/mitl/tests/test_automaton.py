"""
Tests for guards, the automaton model, the run engine and the JSON format.
"""
import itertools
import random
from fractions import Fraction
from unittest import mock

import networkx as nx
from django.test import SimpleTestCase

from mitl.automaton import (
    TRUE_GUARD, ClockValuation, Direction, Guard, Verdict, accepts, automaton_from_dict,
    automaton_to_dict, complement, compose_all, disjoint_guards, dumps_automaton, elapsed,
    guard_holds, guards_disjoint, loads_automaton, parse_guard, remaining, run, sequential_compose,
    to_dot, transition_graph, trivial_acceptor,
)
from mitl.automaton.guards import (
    Conjunction, Constraint, Disjunction, Negation, Span, any_of, negation, overlapping_pairs,
)
from mitl.automaton.model import Po2dta
from mitl.catalog import RHO_ACC, RHO_REJ, worked_automaton
from mitl.conf import get_setting
from mitl.core import parse_word
from mitl.exceptions import (
    AutomatonError, InvalidAutomatonError, NondeterminismError, PositionError, UnknownClockError,
)
from mitl.sampling import random_automaton, random_word


def expression_holds(expr, valuation, now):
    if isinstance(expr, Constraint):
        return expr.holds(valuation, now)
    if isinstance(expr, Guard):
        return expr.holds(valuation, now)
    if isinstance(expr, Negation):
        return not expression_holds(expr.arg, valuation, now)
    if isinstance(expr, Conjunction):
        return all(expression_holds(p, valuation, now) for p in expr.parts)
    return any(expression_holds(p, valuation, now) for p in expr.parts)


def edited(automaton, change):
    """A copy of ``automaton`` with its JSON document passed through ``change``."""
    data = automaton_to_dict(automaton)
    change(data)
    return automaton_from_dict(data)


class GuardTests(SimpleTestCase):

    def test_parse_and_print(self):
        guard = parse_guard('T-x >= 1 & x-T = 1')
        self.assertEqual(len(guard.constraints), 2)
        self.assertEqual(str(guard), 'T-x >= 1 & x-T = 1')
        self.assertEqual(parse_guard('true'), TRUE_GUARD)
        self.assertEqual(parse_guard('T-y == 2'), Guard.of(elapsed('y', '=', 2)))

    def test_parse_error(self):
        with self.assertRaises(AutomatonError):
            parse_guard('T-x >> 1')

    def test_sign_condition(self):
        valuation = {'x': Fraction(0)}
        self.assertTrue(elapsed('x', '<', 1).holds(valuation, Fraction(1, 2)))
        self.assertFalse(remaining('x', '<=', 1).holds(valuation, 1))
        self.assertTrue(remaining('x', '=', 1).holds({'x': Fraction(2)}, 1))

    def test_guard_holds(self):
        guard = parse_guard('T-x >= 1 & T-x <= 2')
        self.assertTrue(guard_holds({'x': Fraction(0)}, Fraction(6, 5), guard))
        self.assertFalse(guard_holds({'x': Fraction(0)}, Fraction(5, 2), guard))
        self.assertTrue(guard_holds({}, 0, TRUE_GUARD))

    def test_unknown_clock(self):
        with self.assertRaises(UnknownClockError):
            Guard.of(elapsed('y', '<', 1)).holds({'x': Fraction(0)}, 0)

    def test_constants_are_natural(self):
        with self.assertRaises(AutomatonError):
            elapsed('x', '<', -1)

    def test_disjointness(self):
        self.assertTrue(guards_disjoint(parse_guard('T-x < 1'), parse_guard('T-x >= 1')))
        self.assertFalse(guards_disjoint(parse_guard('T-x <= 1'), parse_guard('T-x >= 1')))
        self.assertTrue(guards_disjoint(parse_guard('T-x >= 0'), parse_guard('x-T > 0')))
        self.assertFalse(guards_disjoint(parse_guard('x-T >= 0'), parse_guard('T-x >= 0')))
        self.assertFalse(guards_disjoint(parse_guard('T-x < 1'), parse_guard('T-y > 1')))
        self.assertFalse(guards_disjoint(parse_guard('T-x = 1'), parse_guard('T-x >= 1')))
        self.assertTrue(guards_disjoint(parse_guard('T-x < 1'), parse_guard('T-x > 2')))
        self.assertTrue(parse_guard('T-x = 0').satisfiable())
        self.assertFalse(parse_guard('T-x < 1 & T-x > 2').satisfiable())

    def test_span_emptiness(self):
        one, two = Fraction(1), Fraction(2)
        self.assertFalse(Span(one, True, one, True).empty)
        self.assertTrue(Span(one, True, one, False).empty)
        self.assertTrue(Span(one, False, one, True).empty)
        self.assertTrue(Span(two, True, one, True).empty)
        self.assertFalse(Span(one, True, two, False).empty)
        self.assertFalse(Span(one, False, two, False).empty)
        self.assertFalse(Span(None, False, one, False).empty)
        self.assertFalse(Span(one, False, None, False).empty)

    def test_overlapping_pairs(self):
        guards = [parse_guard(text) for text in (
            'T-x < 1', 'T-x >= 1 & T-y = 0', 'T-x >= 1 & T-y > 0', 'T-x = 1', 'x-T > 0',
        )]
        self.assertEqual(overlapping_pairs(guards), [(1, 3), (2, 3)])
        self.assertEqual(overlapping_pairs([]), [])
        self.assertEqual(overlapping_pairs([TRUE_GUARD, TRUE_GUARD]), [(0, 1)])

    def test_overlapping_pairs_match_pairwise_check(self):
        rng = random.Random(11)
        relations = ['<', '<=', '>', '>=', '=']

        def constraint():
            build = rng.choice([elapsed, remaining])
            return build(rng.choice('xyz'), rng.choice(relations), rng.randint(0, 3))

        for _ in range(60):
            guards = [Guard(tuple(constraint() for _ in range(rng.randint(0, 3)))) for _ in range(8)]
            expected = [
                (i, j) for i, j in itertools.combinations(range(len(guards)), 2)
                if not guards_disjoint(guards[i], guards[j])
            ]
            with self.subTest(guards=[str(g) for g in guards]):
                self.assertEqual(overlapping_pairs(guards), expected)

    def test_disjoint_guards_cover_expression(self):
        expressions = [
            any_of([parse_guard('T-x < 1'), parse_guard('T-x >= 2 & T-y = 1')]),
            negation(parse_guard('T-x > 1 & T-x <= 2')),
            any_of([negation(parse_guard('x-T = 1')), parse_guard('T-y < 1')]),
            Conjunction((negation(parse_guard('T-x < 1')), Disjunction((
                parse_guard('T-y = 0'), parse_guard('x-T > 1'),
            )))),
        ]
        grid = [Fraction(k, 2) for k in range(11)]
        now = Fraction(3)
        for expr in expressions:
            pieces = disjoint_guards(expr)
            for x, y in itertools.product(grid, grid):
                valuation = {'x': x, 'y': y}
                holding = [piece for piece in pieces if piece.holds(valuation, now)]
                with self.subTest(expr=expr, x=x, y=y):
                    self.assertLessEqual(len(holding), 1)
                    self.assertEqual(bool(holding), expression_holds(expr, valuation, now))


class ModelTests(SimpleTestCase):

    def setUp(self):
        self.automaton = worked_automaton()

    def test_worked_automaton_is_valid(self):
        self.assertEqual(self.automaton.validate(), [])
        self.assertEqual(self.automaton.height, 2)
        self.assertEqual(sorted(self.automaton.constants()), [1, 1, 2])
        self.assertEqual(self.automaton.state('A').direction, Direction.LEFT)

    def test_ascending_transition_is_rejected(self):
        def climb(data):
            data['transitions'][2]['to'] = 'S'

        broken = edited(self.automaton, climb)
        with self.assertLogs('mitl.automaton.model', 'WARNING'):
            with self.assertRaises(InvalidAutomatonError) as caught:
                broken.check()
        self.assertTrue(any('does not descend' in v for v in caught.exception.violations))

    def test_missing_end_marker_transition(self):
        def drop(data):
            del data['transitions'][1]

        with self.assertLogs('mitl.automaton.model', 'WARNING'):
            problems = edited(self.automaton, drop).validate()
        self.assertIn('right-moving state S has no transition on _end', problems)

    def test_overlapping_guards(self):
        def overlap(data):
            data['transitions'].append(
                {'from': 'S', 'letter': 'b', 'guard': 'T-x >= 2', 'resets': [], 'to': 'r'}
            )

        with self.assertLogs('mitl.automaton.model', 'WARNING'):
            problems = edited(self.automaton, overlap).validate()
        self.assertTrue(any(p.startswith('nondeterminism at (S, b)') for p in problems))

    def test_unknown_letter_and_clock(self):
        def stray(data):
            data['transitions'].append(
                {'from': 'A', 'letter': 'z', 'guard': 'T-y < 1', 'resets': [], 'to': 'r'}
            )

        with self.assertLogs('mitl.automaton.model', 'WARNING'):
            problems = edited(self.automaton, stray).validate()
        self.assertTrue(any("unknown letter 'z'" in p for p in problems))
        self.assertTrue(any('unknown clocks' in p for p in problems))

    def test_complement(self):
        flipped = complement(self.automaton)
        self.assertTrue(accepts(flipped, parse_word(RHO_REJ)))
        self.assertFalse(accepts(flipped, parse_word(RHO_ACC)))

    def test_sequential_composition(self):
        composite = sequential_compose(trivial_acceptor(['b', 'c']), self.automaton)
        self.assertEqual(composite.height, 3)
        self.assertEqual(composite.name, 'true;A_ex')
        self.assertTrue(accepts(composite, parse_word(RHO_ACC)))
        self.assertFalse(accepts(composite, parse_word(RHO_REJ)))
        named = compose_all([trivial_acceptor(['b', 'c']), self.automaton], name='walk')
        self.assertEqual(named.name, 'walk')

    def test_compose_all_validates_the_result_once(self):
        parts = [trivial_acceptor(['b', 'c'], name=f"walk{i}") for i in range(3)] + [self.automaton]
        unchanged = mock.patch.object(Po2dta, 'check', autospec=True, side_effect=lambda automaton: automaton)
        with unchanged as check:
            composite = compose_all(parts, name='walks')
        self.assertEqual(check.call_count, 1)
        self.assertEqual(composite.height, 5)
        self.assertEqual(composite.validate(), [])
        self.assertTrue(accepts(composite, parse_word(RHO_ACC)))

    def test_compose_all_rejects_an_invalid_part(self):
        def overlap(data):
            data['transitions'].append(
                {'from': 'S', 'letter': 'b', 'guard': 'T-x >= 2', 'resets': [], 'to': 'r'}
            )

        broken = edited(self.automaton, overlap)
        with self.assertLogs('mitl.automaton.model', 'WARNING'):
            with self.assertRaises(InvalidAutomatonError):
                compose_all([trivial_acceptor(['b', 'c']), broken])

    def test_compose_nothing(self):
        with self.assertRaises(AutomatonError):
            compose_all([])

    def test_trivial_acceptor(self):
        self.assertTrue(accepts(trivial_acceptor(['a']), parse_word('a@0 a@3')))

    def test_transition_graph(self):
        graph = transition_graph(self.automaton)
        self.assertEqual(graph.number_of_nodes(), 4)
        self.assertEqual(graph.number_of_edges(), 4)
        self.assertTrue(nx.is_directed_acyclic_graph(graph))

    def test_random_automata_are_valid(self):
        rng = random.Random(3)
        for case in range(get_setting('PROPERTY_CASES')):
            automaton = random_automaton(rng, 'ab', max_edges=4)
            with self.subTest(case=case):
                self.assertEqual(automaton.validate(), [])


class EngineTests(SimpleTestCase):

    def setUp(self):
        self.automaton = worked_automaton()

    def test_accepting_run(self):
        result = run(self.automaton, parse_word(RHO_ACC))
        self.assertIs(result.verdict, Verdict.ACCEPT)
        self.assertEqual(result.steps, 3)
        self.assertEqual([c.head for c in result.trace], [1, 2, 1, 1])
        self.assertEqual(result.final.state, 't')
        self.assertEqual(result.valuation['x'], Fraction(6, 5))
        self.assertEqual(len(result.fired()), 2)
        self.assertEqual(result.trace[0].describe(result.word), 'S @1 [c@1/5] x=0')

    def test_rejecting_run(self):
        result = run(self.automaton, parse_word(RHO_REJ))
        self.assertIs(result.verdict, Verdict.REJECT)
        self.assertEqual(result.steps, 4)
        self.assertFalse(accepts(self.automaton, parse_word('c@0 b@3')))

    def test_start_cell_and_valuation(self):
        self.assertTrue(run(self.automaton, parse_word('c@0 b@1'), head=2).accepted)
        shifted = run(self.automaton, parse_word('c@0 b@1'), valuation={'x': Fraction(1)})
        self.assertIs(shifted.verdict, Verdict.REJECT)
        with self.assertRaises(PositionError):
            run(self.automaton, parse_word('c@0'), head=5)

    def test_fell_off(self):
        def late(data):
            data['transitions'][1]['guard'] = 'T-x >= 5'

        automaton = edited(self.automaton, late)
        with self.assertLogs('mitl.automaton.engine', 'WARNING'):
            result = run(automaton, parse_word('c@0'))
        self.assertIs(result.verdict, Verdict.FELL_OFF)
        self.assertFalse(result.accepted)

    def test_nondeterminism(self):
        def overlap(data):
            data['transitions'].append(
                {'from': 'S', 'letter': 'b', 'guard': 'T-x >= 0', 'resets': [], 'to': 'r'}
            )

        automaton = edited(self.automaton, overlap)
        with self.assertRaises(NondeterminismError):
            run(automaton, parse_word(RHO_ACC), check=False)
        with self.assertLogs('mitl.automaton.model', 'WARNING'):
            with self.assertRaises(InvalidAutomatonError):
                run(automaton, parse_word(RHO_ACC))

    def test_valuation_updates(self):
        valuation = ClockValuation.initial(['x', 'y'])
        moved = valuation.reset(['y'], Fraction(3, 2))
        self.assertEqual(moved['y'], Fraction(3, 2))
        self.assertEqual(valuation['y'], 0)
        with self.assertRaises(UnknownClockError):
            valuation.update('z', 1)

    def test_random_runs_terminate(self):
        rng = random.Random(11)
        for case in range(get_setting('PROPERTY_CASES')):
            automaton = random_automaton(rng, 'ab')
            word = random_word(rng, 'ab', max_length=5)
            with self.subTest(case=case):
                self.assertIn(run(automaton, word).verdict, (Verdict.ACCEPT, Verdict.REJECT))


class SerializationTests(SimpleTestCase):

    def test_document_round_trip(self):
        automaton = worked_automaton()
        again = loads_automaton(dumps_automaton(automaton))
        self.assertEqual(again, automaton)
        self.assertEqual(again.name, 'A_ex')

    def test_malformed_documents(self):
        with self.assertRaises(AutomatonError):
            loads_automaton('{')
        with self.assertRaises(AutomatonError):
            loads_automaton('{"states": []}')

    def test_dot(self):
        dot = to_dot(worked_automaton())
        self.assertIn('"S" -> "A"', dot)
        self.assertIn('"t" [shape=doublecircle', dot)
