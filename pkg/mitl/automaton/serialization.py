"""
JSON documents for automata.

    {
      "name": "A_ex",
      "alphabet": ["b", "c"],
      "clocks": ["x"],
      "states": [{"name": "S", "direction": "right", "rank": 2}, ...],
      "initial": "S", "accept": "t", "reject": "r",
      "transitions": [
        {"from": "S", "letter": "b", "guard": "T-x >= 1 & T-x <= 2",
         "resets": ["x"], "to": "A"}, ...
      ]
    }

Terminal states have ``"direction": null``. Marker letters are written as
``_begin`` and ``_end``.
"""
import json
from pathlib import Path
from typing import Union

from mitl.automaton.guards import parse_guard
from mitl.automaton.model import Direction, Po2dta, State, Transition
from mitl.exceptions import AutomatonError


def automaton_to_dict(automaton: Po2dta) -> dict:
    return {
        'name': automaton.name,
        'alphabet': list(automaton.alphabet),
        'clocks': list(automaton.clocks),
        'states': [
            {
                'name': state.name,
                'direction': state.direction.value if state.direction else None,
                'rank': state.rank,
            }
            for state in automaton.states
        ],
        'initial': automaton.initial,
        'accept': automaton.accept,
        'reject': automaton.reject,
        'transitions': [
            {
                'from': t.source,
                'letter': t.letter,
                'guard': str(t.guard),
                'resets': list(t.resets),
                'to': t.target,
            }
            for t in automaton.transitions
        ],
    }


def automaton_from_dict(data: dict) -> Po2dta:
    try:
        states = tuple(
            State(
                str(item['name']),
                Direction(item['direction']) if item.get('direction') else None,
                int(item['rank']),
            )
            for item in data['states']
        )
        transitions = tuple(
            Transition(
                source=str(item['from']),
                letter=str(item['letter']),
                guard=parse_guard(str(item.get('guard', 'true'))),
                target=str(item['to']),
                resets=tuple(item.get('resets', ())),
            )
            for item in data['transitions']
        )
        return Po2dta(
            states=states,
            clocks=tuple(data.get('clocks', ())),
            transitions=transitions,
            initial=str(data['initial']),
            accept=str(data['accept']),
            reject=str(data['reject']),
            alphabet=tuple(data['alphabet']),
            name=str(data.get('name', '')),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise AutomatonError(f"Malformed automaton document: {exc}") from exc


def dumps_automaton(automaton: Po2dta) -> str:
    return json.dumps(automaton_to_dict(automaton), indent=2)


def loads_automaton(text: str) -> Po2dta:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AutomatonError(f"Automaton document is not JSON: {exc}") from exc
    return automaton_from_dict(data)


def load_automaton(path: Union[str, Path]) -> Po2dta:
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as exc:
        raise AutomatonError(f"Cannot read automaton file {path}: {exc}") from exc
    return loads_automaton(text)


def to_dot(automaton: Po2dta) -> str:
    """Graphviz text of the transition structure."""
    lines = [f'digraph "{automaton.name or "po2dta"}" {{', '  rankdir=LR;']
    for state in automaton.states:
        shape = 'doublecircle' if state.name == automaton.accept else 'circle'
        arrow = {Direction.RIGHT: ' ->', Direction.LEFT: ' <-'}.get(state.direction, '')
        lines.append(f'  "{state.name}" [shape={shape}, label="{state.name}{arrow}"];')
    for t in automaton.transitions:
        resets = f" / {','.join(t.resets)}" if t.resets else ''
        lines.append(f'  "{t.source}" -> "{t.target}" [label="{t.letter}, {t.guard}{resets}"];')
    lines.append('}')
    return '\n'.join(lines)
