from mitl.automaton.engine import (
    ClockValuation, Configuration, RunResult, Verdict, accepts, run,
)
from mitl.automaton.guards import (
    TRUE_GUARD, Constraint, Difference, Guard, Relation,
    disjoint_guards, elapsed, guard_holds, guards_disjoint, parse_guard, remaining,
)
from mitl.automaton.model import (
    Direction, Po2dta, State, Transition,
    complement, compose_all, sequential_compose, transition_graph, trivial_acceptor, validate,
)
from mitl.automaton.serialization import (
    automaton_from_dict, automaton_to_dict, dumps_automaton, load_automaton, loads_automaton, to_dot,
)
