"""
Tiling problems and the formula families that encode them.

A tiling is a list of rows read bottom-up. Its timed word is the
concatenation of the rows, each followed by the separator ``s``. Three
families are generated:

* ``expspace``: rows of width 2^n, letters on successive integers, any number
  of rows, fixed first and final tile;
* ``nexptime``: a 2^n x 2^n square with a fixed prefix of the first row,
  bounded intervals only;
* ``pspace``: corridor tiling of width n, letters 1 to 2 time units apart,
  upper-bound intervals only.
"""
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from mitl.analysis import SearchBounds
from mitl.core.formulas import (
    TRUE, Atom, Eventually, Formula, Not, conjunction, disjunction, implies,
)
from mitl.core.intervals import ANYTIME, Interval
from mitl.core.words import TimedWord, check_symbol, to_stamp
from mitl.exceptions import TilingError, WordFormatError

logger = logging.getLogger(__name__)

SEPARATOR = 's'
FAMILIES = ('expspace', 'nexptime', 'pspace')
#: Gap between letters of a corridor tiling word; any value in (1,2) works.
CORRIDOR_GAP = Fraction(3, 2)

Tiling = Tuple[Tuple[str, ...], ...]


@dataclass(frozen=True)
class TilingSystem:
    """Tiles with horizontal (left, right) and vertical (below, above) matching pairs."""
    tiles: Tuple[str, ...]
    horizontal: FrozenSet[Tuple[str, str]] = frozenset()
    vertical: FrozenSet[Tuple[str, str]] = frozenset()

    def __post_init__(self):
        tiles = tuple(sorted(set(self.tiles)))
        if not tiles:
            raise TilingError("A tiling system needs at least one tile")
        for tile in tiles:
            try:
                check_symbol(tile)
            except WordFormatError as exc:
                raise TilingError(str(exc)) from exc
            if tile == SEPARATOR:
                raise TilingError(f"{SEPARATOR!r} is the row separator and cannot be a tile")
        object.__setattr__(self, 'tiles', tiles)
        for name in ('horizontal', 'vertical'):
            pairs = frozenset(tuple(pair) for pair in getattr(self, name))
            for pair in pairs:
                if len(pair) != 2 or not set(pair) <= set(tiles):
                    raise TilingError(f"{name} pair {pair!r} uses unknown tiles")
            object.__setattr__(self, name, pairs)

    def require(self, tile: str) -> str:
        if tile not in self.tiles:
            raise TilingError(f"Unknown tile {tile!r}")
        return tile

    def right_of(self, tile: str) -> List[str]:
        return sorted(b for a, b in self.horizontal if a == tile)

    def above(self, tile: str) -> List[str]:
        return sorted(b for a, b in self.vertical if a == tile)

    @property
    def alphabet(self) -> Tuple[str, ...]:
        return tuple(sorted(self.tiles + (SEPARATOR,)))


@dataclass(frozen=True)
class ExpspaceInstance:
    system: TilingSystem
    n: int
    first: str
    final: str

    family = 'expspace'

    def __post_init__(self):
        _check_n(self.n)
        self.system.require(self.first)
        self.system.require(self.final)

    @property
    def width(self) -> int:
        return 2 ** self.n

    height = None


@dataclass(frozen=True)
class NexptimeInstance:
    system: TilingSystem
    n: int
    prefix: Tuple[str, ...]

    family = 'nexptime'

    def __post_init__(self):
        _check_n(self.n)
        object.__setattr__(self, 'prefix', tuple(self.prefix))
        if len(self.prefix) != self.n:
            raise TilingError(f"The first-row prefix needs {self.n} tiles, got {len(self.prefix)}")
        for tile in self.prefix:
            self.system.require(tile)

    @property
    def width(self) -> int:
        return 2 ** self.n

    @property
    def height(self) -> int:
        return 2 ** self.n

    @property
    def length(self) -> int:
        """Letters in the encoding of a solution, separators included."""
        return self.width * (self.width + 1)


@dataclass(frozen=True)
class PspaceInstance:
    system: TilingSystem
    n: int
    left: FrozenSet[str]
    right: FrozenSet[str]
    bottom: Tuple[str, ...]
    top: Tuple[str, ...]

    family = 'pspace'

    def __post_init__(self):
        _check_n(self.n)
        object.__setattr__(self, 'left', frozenset(self.left))
        object.__setattr__(self, 'right', frozenset(self.right))
        object.__setattr__(self, 'bottom', tuple(self.bottom))
        object.__setattr__(self, 'top', tuple(self.top))
        for name in ('bottom', 'top'):
            row = getattr(self, name)
            if len(row) != self.n:
                raise TilingError(f"The {name} row needs {self.n} tiles, got {len(row)}")
        for tile in self.left | self.right | set(self.bottom) | set(self.top):
            self.system.require(tile)

    @property
    def width(self) -> int:
        return self.n

    height = None


Instance = Union[ExpspaceInstance, NexptimeInstance, PspaceInstance]


def _check_n(n):
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise TilingError(f"n must be a positive integer, got {n!r}")


@dataclass(frozen=True)
class TilingFormula:
    """A generated formula with its named conjuncts."""
    instance: Instance = field(repr=False)
    conjuncts: Tuple[Tuple[str, Formula], ...]

    @property
    def formula(self) -> Formula:
        return conjunction(f for _, f in self.conjuncts)

    @property
    def alphabet(self) -> Tuple[str, ...]:
        return self.instance.system.alphabet

    def conjunct(self, name: str) -> Formula:
        for key, value in self.conjuncts:
            if key == name:
                return value
        raise KeyError(name)

    @property
    def names(self) -> List[str]:
        return [key for key, _ in self.conjuncts]


# Formula building blocks

def closed(lower: int, upper: int) -> Interval:
    return Interval(lower, upper, False, False)


def left_open(lower: int, upper: int) -> Interval:
    """<lower, upper] open on the left."""
    return Interval(lower, upper, True, False)


def right_open(lower: int, upper: int) -> Interval:
    return Interval(lower, upper, False, True)


def F(interval: Interval, arg: Formula) -> Formula:
    return Eventually(interval, arg)


def later(arg: Formula) -> Formula:
    return Eventually(ANYTIME, arg)


def always(arg: Formula, interval: Interval = ANYTIME) -> Formula:
    """Reflexive G: ``arg`` here and at every later position within ``interval``."""
    return conjunction([arg, Not(F(interval, Not(arg)))])


def any_of(letters: Iterable[str]) -> Formula:
    return disjunction(Atom(letter) for letter in sorted(set(letters)))


def tiles_or_separator(system: TilingSystem) -> Tuple[Formula, Formula]:
    tile = any_of(system.tiles)
    return tile, disjunction([tile, Atom(SEPARATOR)])


def at_last(letter: Formula) -> Formula:
    """No letter follows."""
    return Not(later(letter))


def chain(letters: Sequence[Formula], step: Interval, tail: Formula = TRUE) -> Formula:
    """``l1 & F_step (l2 & F_step (... & F_step (ln & tail)))``."""
    result = tail
    for index in range(len(letters) - 1, -1, -1):
        body = letters[index] if result == TRUE else conjunction([letters[index], result])
        result = body if index == 0 else F(step, body)
    return result


def gen_expspace(instance: ExpspaceInstance) -> TilingFormula:
    system = instance.system
    w = instance.width
    sep = Atom(SEPARATOR)
    tile, letter = tiles_or_separator(system)
    last = at_last(letter)

    spacing = always(implies(letter, conjunction([
        Not(F(Interval.open(0, 1), letter)),
        disjunction([F(left_open(0, 1), letter), last]),
    ])))
    separators = conjunction([
        F(left_open(w - 1, w), sep),
        always(implies(sep, conjunction([
            Not(F(left_open(0, w), sep)),
            disjunction([F(left_open(w, w + 1), sep), last]),
        ]))),
    ])
    first = Atom(instance.first)
    final = later(conjunction([Atom(instance.final), F(left_open(0, 1), conjunction([sep, last]))]))
    horizontal = always(conjunction([
        implies(Atom(a), F(left_open(0, 1), disjunction([sep, any_of(system.right_of(a))])))
        for a in system.tiles
    ]))
    vertical = always(conjunction([
        implies(Atom(a), disjunction([
            F(left_open(0, w + 1), last),
            F(left_open(w, w + 1), any_of(system.above(a))),
        ]))
        for a in system.tiles
    ]))
    return TilingFormula(instance, (
        ('spacing', spacing),
        ('separators', separators),
        ('first', first),
        ('final', final),
        ('horizontal', horizontal),
        ('vertical', vertical),
    ))


def gen_nexptime(instance: NexptimeInstance) -> TilingFormula:
    """
    Bounded encoding of the square. With l the encoding length, every letter
    but the last lies in [0, l-2] and the rows below the top one end before
    l-1-(2^n+1).
    """
    system = instance.system
    w = instance.width
    l = instance.length
    sep = Atom(SEPARATOR)
    _, letter = tiles_or_separator(system)
    body = closed(0, l - 2)
    lower_rows = right_open(0, l - 1 - (w + 1))

    spacing = always(implies(letter, conjunction([
        Not(F(right_open(0, 1), letter)),
        F(closed(0, 1), letter),
    ])), body)
    separators = conjunction([
        F(right_open(0, w), Not(sep)),
        F(closed(0, w), sep),
        always(implies(sep, conjunction([
            Not(F(closed(0, w), sep)),
            F(closed(0, w + 1), sep),
        ])), lower_rows),
    ])
    prefix = chain([Atom(t) for t in instance.prefix], closed(0, 1))
    horizontal = always(conjunction([
        implies(Atom(a), F(closed(0, 1), disjunction([sep, any_of(system.right_of(a))])))
        for a in system.tiles
    ]), body)
    vertical = always(conjunction([
        implies(Atom(a), F(left_open(w, w + 1), any_of(system.above(a))))
        for a in system.tiles
    ]), lower_rows)
    return TilingFormula(instance, (
        ('spacing', spacing),
        ('separators', separators),
        ('prefix', prefix),
        ('horizontal', horizontal),
        ('vertical', vertical),
    ))


def gen_pspace(instance: PspaceInstance) -> TilingFormula:
    """
    Corridor encoding. The bottom row comes first in the word and the top row
    last; every interval is ``[0,1]`` or ``[0,2)`` apart from the untimed F.
    """
    system = instance.system
    n = instance.n
    sep = Atom(SEPARATOR)
    tile, letter = tiles_or_separator(system)
    last = at_last(letter)
    step = right_open(0, 2)

    spacing = always(implies(letter, conjunction([
        Not(F(closed(0, 1), letter)),
        disjunction([last, F(step, letter)]),
    ])))
    row_length = always(implies(sep, disjunction([
        last, F(step, chain([tile] * n, step, F(step, sep))),
    ])))
    horizontal = always(conjunction([
        implies(Atom(a), F(step, disjunction([any_of(system.right_of(a)), sep])))
        for a in system.tiles
    ]))
    below_top = later(conjunction([sep, later(sep)]))
    vertical = conjunction([
        always(implies(
            conjunction([Atom(a), below_top]),
            F(step, chain([letter] * n, step, F(step, any_of(system.above(a))))),
        ))
        for a in system.tiles
    ])
    bottom = chain([Atom(t) for t in instance.bottom], step, F(step, sep))
    top = later(conjunction([
        sep,
        F(step, chain([Atom(t) for t in instance.top], step, F(step, conjunction([sep, last])))),
    ]))
    left = conjunction([
        any_of(instance.left),
        always(implies(sep, disjunction([last, F(step, any_of(instance.left))]))),
    ])
    others = set(system.tiles) - instance.right
    right = always(Not(conjunction([any_of(others), F(step, sep)])))
    return TilingFormula(instance, (
        ('spacing', spacing),
        ('row_length', row_length),
        ('horizontal', horizontal),
        ('vertical', vertical),
        ('bottom', bottom),
        ('top', top),
        ('left', left),
        ('right', right),
    ))


GENERATORS = {
    'expspace': gen_expspace,
    'nexptime': gen_nexptime,
    'pspace': gen_pspace,
}


def generate(instance: Instance) -> TilingFormula:
    tiling_formula = GENERATORS[instance.family](instance)
    logger.debug("Generated %s formula with %d conjuncts", instance.family, len(tiling_formula.conjuncts))
    return tiling_formula


# Tilings and words

def as_tiling(rows: Iterable[Iterable[str]]) -> Tiling:
    tiling = tuple(tuple(row) for row in rows)
    if not tiling or not tiling[0]:
        raise TilingError("A tiling needs at least one tile")
    width = len(tiling[0])
    if any(len(row) != width for row in tiling):
        raise TilingError("Every row of a tiling must have the same width")
    return tiling


def tiling_to_word(tiling: Iterable[Iterable[str]], gap=1) -> TimedWord:
    """
    Rows in order, each closed by the separator, letters ``gap`` apart from
    time 0. ``gap=1`` gives the integer encoding, a gap in (1,2) the corridor one.
    """
    tiling = as_tiling(tiling)
    gap = to_stamp(gap)
    if gap <= 0:
        raise TilingError("Letters must be a positive time apart")
    events = []
    for row in tiling:
        events.extend(row)
        events.append(SEPARATOR)
    return TimedWord(tuple(events), tuple(gap * k for k in range(len(events))))


def word_to_tiling(word: TimedWord, width: int, rows: Optional[int] = None) -> Tiling:
    """
    Decode the rows of a tiling word. With ``rows`` only that many rows are
    read and later letters are ignored.
    """
    decoded = []
    current = []
    for event in word.events:
        if rows is not None and len(decoded) == rows:
            break
        if event == SEPARATOR:
            if len(current) != width:
                raise TilingError(f"Row {len(decoded) + 1} has {len(current)} tiles, expected {width}")
            decoded.append(tuple(current))
            current = []
        else:
            current.append(event)
    if current or not decoded or (rows is not None and len(decoded) != rows):
        raise TilingError(f"{word} does not encode a tiling of width {width}")
    return tuple(decoded)


def tiling_problems(tiling: Tiling, instance: Instance) -> List[str]:
    """Every broken matching or boundary rule; empty for a solution."""
    system = instance.system
    problems = []
    if len(tiling[0]) != instance.width:
        problems.append(f"width {len(tiling[0])} instead of {instance.width}")
        return problems
    for j, row in enumerate(tiling):
        for i, tile in enumerate(row):
            if tile not in system.tiles:
                problems.append(f"unknown tile {tile!r} at ({i + 1},{j + 1})")
        for i in range(len(row) - 1):
            if (row[i], row[i + 1]) not in system.horizontal:
                problems.append(f"horizontal mismatch at ({i + 1},{j + 1})")
    for j in range(len(tiling) - 1):
        for i in range(instance.width):
            if (tiling[j][i], tiling[j + 1][i]) not in system.vertical:
                problems.append(f"vertical mismatch at ({i + 1},{j + 1})")

    if isinstance(instance, ExpspaceInstance):
        if tiling[0][0] != instance.first:
            problems.append(f"first tile is {tiling[0][0]}, not {instance.first}")
        if tiling[-1][-1] != instance.final:
            problems.append(f"final tile is {tiling[-1][-1]}, not {instance.final}")
    elif isinstance(instance, NexptimeInstance):
        if len(tiling) != instance.height:
            problems.append(f"{len(tiling)} rows instead of {instance.height}")
        if tiling[0][:instance.n] != instance.prefix:
            problems.append("first row does not start with the prefix")
    else:
        if tiling[0] != instance.bottom:
            problems.append("bottom row does not match")
        if tiling[-1] != instance.top:
            problems.append("top row does not match")
        for j, row in enumerate(tiling):
            if row[0] not in instance.left:
                problems.append(f"row {j + 1} starts with {row[0]}, not a left tile")
            if row[-1] not in instance.right:
                problems.append(f"row {j + 1} ends with {row[-1]}, not a right tile")
    return problems


def check_tiling(tiling: Iterable[Iterable[str]], instance: Instance) -> bool:
    """True when ``tiling`` solves ``instance``."""
    return not tiling_problems(as_tiling(tiling), instance)


def candidate_tilings(instance: Instance, max_rows: int = 2):
    """Every tiling of the instance's width, by number of rows then tiles."""
    heights = [instance.height] if instance.height else range(1, max_rows + 1)
    tiles = instance.system.tiles
    for height in heights:
        cells = instance.width * height
        for flat in product(tiles, repeat=cells):
            yield tuple(
                tuple(flat[r * instance.width:(r + 1) * instance.width]) for r in range(height)
            )


def solve_tiling(instance: Instance, max_rows: int = 2) -> Optional[Tiling]:
    """First solution found by brute force, or None. Desk-scale instances only."""
    for tiling in candidate_tilings(instance, max_rows):
        if check_tiling(tiling, instance):
            return tiling
    return None


def encoding_gap(instance: Instance) -> Fraction:
    return CORRIDOR_GAP if isinstance(instance, PspaceInstance) else Fraction(1)


def canonical_bounds(instance: Instance, rows: int = 1) -> SearchBounds:
    """
    Bounds that hold exactly the encodings of ``rows``-row tilings (every
    row of a square for nexptime): fixed length, letters on the encoding grid.
    """
    height = instance.height or rows
    length = height * (instance.width + 1)
    gap = encoding_gap(instance)
    return SearchBounds(
        max_length=length,
        grid=gap.denominator,
        horizon=gap * (length - 1),
        alphabet=instance.system.alphabet,
        min_length=length,
    )


# Instance files

def instance_from_dict(data: dict) -> Instance:
    """
    Build an instance from its JSON form::

        {"family": "pspace", "n": 2, "tiles": ["w", "x"],
         "horizontal": [["w", "x"]], "vertical": [["w", "w"]],
         "left": ["w"], "right": ["x"], "bottom": ["w", "x"], "top": ["w", "x"]}
    """
    try:
        family = data['family']
        system = TilingSystem(
            tuple(data['tiles']),
            frozenset(tuple(p) for p in data.get('horizontal', ())),
            frozenset(tuple(p) for p in data.get('vertical', ())),
        )
        n = data['n']
        if family == 'expspace':
            return ExpspaceInstance(system, n, data['first'], data['final'])
        if family == 'nexptime':
            return NexptimeInstance(system, n, tuple(data['prefix']))
        if family == 'pspace':
            return PspaceInstance(
                system, n, frozenset(data['left']), frozenset(data['right']),
                tuple(data['bottom']), tuple(data['top']),
            )
    except (KeyError, TypeError) as exc:
        raise TilingError(f"Malformed tiling instance: {exc}") from exc
    raise TilingError(f"Unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


def instance_to_dict(instance: Instance) -> dict:
    system = instance.system
    data = {
        'family': instance.family,
        'n': instance.n,
        'tiles': list(system.tiles),
        'horizontal': sorted(list(p) for p in system.horizontal),
        'vertical': sorted(list(p) for p in system.vertical),
    }
    if isinstance(instance, ExpspaceInstance):
        data.update(first=instance.first, final=instance.final)
    elif isinstance(instance, NexptimeInstance):
        data['prefix'] = list(instance.prefix)
    else:
        data.update(
            left=sorted(instance.left), right=sorted(instance.right),
            bottom=list(instance.bottom), top=list(instance.top),
        )
    return data


def load_instance(path: Union[str, Path]) -> Instance:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise TilingError(f"Cannot read tiling instance {path}: {exc}") from exc
    return instance_from_dict(data)
