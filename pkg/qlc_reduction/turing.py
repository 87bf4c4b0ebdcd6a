"""
Single-tape machines run on the blank tape, and their compilation into
tile sets whose unique tiling spells out the run row by row.
"""

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple
import json
import logging

from .exceptions import (MachineInconsistencyError, MalformedInputError,
                         RowConstructionError)
from .semantics.validation import ValidationReport
from .tiles import TileGrid, TileSet, TileType, check_constraints
from .utils import load_json, require, source_name

logger = logging.getLogger(__name__)

LEFT, STAY, RIGHT = 'L', 'S', 'R'
MOVES = (LEFT, STAY, RIGHT)


@dataclass(frozen=True)
class Marker(object):
    name: str

    def render(self) -> str:
        return self.name


@dataclass(frozen=True)
class Symbol(object):
    symbol: str

    def render(self) -> str:
        return json.dumps([self.symbol], ensure_ascii=False)


@dataclass(frozen=True)
class StatePair(object):
    state: str
    symbol: str

    def render(self) -> str:
        return json.dumps([self.state, self.symbol], ensure_ascii=False)


CROSS = Marker('⊗')
DOUBLE_STAR = Marker('**')
STAR = Marker('*')


@dataclass(frozen=True)
class Instruction(object):
    state: str
    symbol: str
    move: str


@dataclass(frozen=True)
class TuringMachine(object):
    alphabet: Tuple[str, ...]
    blank: str
    marker: str
    states: Tuple[str, ...]
    initial: str
    halting: str
    delta: Mapping[Tuple[str, str], Instruction]

    def __post_init__(self):
        object.__setattr__(self, 'alphabet', tuple(self.alphabet))
        object.__setattr__(self, 'states', tuple(self.states))
        object.__setattr__(self, 'delta', dict(self.delta))

    @classmethod
    def from_json(cls, source) -> 'TuringMachine':
        path = source_name(source)
        data = load_json(source)
        alphabet = require(data, 'alphabet', list, path)
        states = require(data, 'states', list, path)
        delta = {}
        for entry in require(data, 'delta', list, path):
            try:
                q, s = entry['from']
                q2, s2, move = entry['to']
            except (KeyError, TypeError, ValueError) as e:
                raise MalformedInputError(
                    path, f'bad instruction {entry!r}') from e
            if (q, s) in delta:
                raise MalformedInputError(
                    path, f'two instructions for {(q, s)}')
            delta[(q, s)] = Instruction(q2, s2, move)
        return cls(alphabet=tuple(alphabet),
                   blank=require(data, 'blank', str, path),
                   marker=require(data, 'marker', str, path),
                   states=tuple(states),
                   initial=require(data, 'initial', str, path),
                   halting=require(data, 'halting', str, path),
                   delta=delta)

    def to_dict(self) -> dict:
        return {
            'alphabet': list(self.alphabet),
            'blank': self.blank,
            'marker': self.marker,
            'states': list(self.states),
            'initial': self.initial,
            'halting': self.halting,
            'delta': [{'from': [q, s], 'to': [i.state, i.symbol, i.move]}
                      for (q, s), i in self.delta.items()]
        }

    @property
    def work_symbols(self) -> List[str]:
        """The alphabet without the end marker, in declared order."""
        return [s for s in self.alphabet if s != self.marker]


@dataclass(frozen=True)
class Configuration(object):
    """
    A tape snapshot. ``tape`` is the shortest prefix beyond which every
    cell is ``blank``; the head may sit past it.
    """

    tape: Tuple[str, ...]
    head: int
    state: str
    blank: str = '_'

    def symbol_at(self, i: int, blank: str) -> str:
        return self.tape[i] if i < len(self.tape) else blank

    def colors(self, width: int, blank: str) -> List[str]:
        """The up colors a tiling row must show to spell this snapshot."""
        out = []
        for i in range(width):
            s = self.symbol_at(i, blank)
            color = StatePair(self.state, s) if i == self.head else Symbol(s)
            out.append(color.render())
        return out

    def __str__(self):
        cells = list(self.tape)
        while len(cells) <= self.head:
            cells.append(self.blank)
        cells[self.head] = f'{self.state}[{cells[self.head]}]'
        return ' '.join(cells)


def _trim(tape: List[str], blank: str) -> Tuple[str, ...]:
    while len(tape) > 1 and tape[-1] == blank:
        tape.pop()
    return tuple(tape)


def validate_tm(m: TuringMachine) -> ValidationReport:
    """
    Lists every violated program condition: totality of the program,
    the end marker being kept exactly where it is read, no left move
    from the end marker and the halting state looping in place.
    """
    report = ValidationReport()
    if m.blank not in m.alphabet:
        report.add('alphabet', (m.blank,), 'the blank is not in the alphabet')
    if m.marker not in m.alphabet:
        report.add('alphabet', (m.marker,), 'the marker is not in the alphabet')
    if m.blank == m.marker:
        report.add('alphabet', (m.blank,), 'blank and marker coincide')
    for q in (m.initial, m.halting):
        if q not in m.states:
            report.add('states', (q,), f'{q} is not a declared state')
    for q in m.states:
        for s in m.alphabet:
            if (q, s) not in m.delta:
                report.add('totality', (q, s), 'no instruction')
    for (q, s), ins in m.delta.items():
        if q not in m.states or s not in m.alphabet:
            report.add('domain', (q, s), 'instruction for an unknown pair')
        if ins.state not in m.states or ins.symbol not in m.alphabet:
            report.add('domain', (q, s), 'instruction leads outside the '
                                         'machine')
        if ins.move not in MOVES:
            report.add('move', (q, s), f'unknown move {ins.move!r}')
        if (s == m.marker) != (ins.symbol == m.marker):
            report.add('marker_kept', (q, s),
                       'the marker must be read exactly where it is written')
        if s == m.marker and ins.move == LEFT:
            report.add('marker_no_left', (q, s),
                       'left move from the end marker')
        if q == m.halting and (ins.state != m.halting or ins.symbol != s
                               or ins.move != STAY):
            report.add('halting_loop', (q, s),
                       'the halting state must loop in place')
    return report


def initial_configuration(m: TuringMachine) -> Configuration:
    return Configuration((m.marker,), 0, m.initial, m.blank)


def step(m: TuringMachine, c: Configuration) -> Configuration:
    if c.state == m.halting:
        return c
    s = c.symbol_at(c.head, m.blank)
    try:
        ins = m.delta[(c.state, s)]
    except KeyError:
        raise MachineInconsistencyError(f'no instruction for {(c.state, s)}')
    tape = list(c.tape)
    while len(tape) <= c.head:
        tape.append(m.blank)
    tape[c.head] = ins.symbol
    head = c.head + {LEFT: -1, STAY: 0, RIGHT: 1}[ins.move]
    if head < 0:
        raise MachineInconsistencyError(
            f'the head left cell 0 after {(c.state, s)}')
    return Configuration(_trim(tape, m.blank), head, ins.state, m.blank)


def run_blank(m: TuringMachine, steps: int) -> List[Configuration]:
    """The configurations ``C_0 .. C_steps`` of the run on the blank tape."""
    configs = [initial_configuration(m)]
    for k in range(steps):
        configs.append(step(m, configs[-1]))
        logger.debug(f'C_{k + 1} = {configs[-1]}')
    return configs


def halting_step(m: TuringMachine, limit: int) -> Optional[int]:
    """The first ``k <= limit`` whose configuration is in the halting state."""
    c = initial_configuration(m)
    for k in range(limit + 1):
        if c.state == m.halting:
            return k
        c = step(m, c)
    return None


def machine_tiles(m: TuringMachine) -> List[Tuple[str, TileType]]:
    """
    Named tile types of the machine, in output order: ``t0``, the tile
    for the halting state over the marker, the row-0 filler, one copy
    tile per work symbol, the marker copy tile and then the instruction
    tiles by state and symbol, each followed by its companions.
    """
    entries: List[Tuple[str, tuple]] = []

    def add(name, left, right, up, down):
        entries.append((name, (left, right, up, down)))

    def instruction(q, s):
        ins = m.delta[(q, s)]
        here = StatePair(q, s)
        edge = CROSS if s == m.marker else STAR
        if ins.move == STAY:
            add(f't_{q}{s}', edge, STAR, StatePair(ins.state, ins.symbol),
                here)
        elif ins.move == RIGHT:
            add(f't_{q}{s}', edge, here, Symbol(ins.symbol), here)
            for a in m.work_symbols:
                add(f't_{q}{s}^{a}', here, STAR, StatePair(ins.state, a),
                    Symbol(a))
        else:
            add(f't_{q}{s}', here, STAR, Symbol(ins.symbol), here)
            for a in m.alphabet:
                left = CROSS if a == m.marker else STAR
                add(f't_{q}{s}^{a}', left, here, StatePair(ins.state, a),
                    Symbol(a))

    add('t0', CROSS, DOUBLE_STAR, StatePair(m.initial, m.marker), CROSS)
    instruction(m.halting, m.marker)
    add(f't_{m.blank}**', DOUBLE_STAR, DOUBLE_STAR, Symbol(m.blank), CROSS)
    for s in m.work_symbols:
        add(f't_{s}*', STAR, STAR, Symbol(s), Symbol(s))
    add(f't_{m.marker}*', CROSS, STAR, Symbol(m.marker), Symbol(m.marker))
    for q in m.states:
        for s in m.alphabet:
            if (q, s) != (m.halting, m.marker):
                instruction(q, s)

    return [(name, TileType(k, *(c.render() for c in colors)))
            for k, (name, colors) in enumerate(entries)]


def tm_to_tiles(m: TuringMachine) -> TileSet:
    return TileSet([tile for _, tile in machine_tiles(m)])


class RowBuilder(object):
    """
    Builds the machine tiling of a window one row at a time. Row 0 is
    ``t0`` followed by fillers; every later row is the only row whose
    down colors match the up colors beneath it, whose first cell has the
    left edge of column 0 and whose last cell fits the filler to its
    right.
    """

    def __init__(self, m: TuringMachine, width: int):
        self.logger = logging.getLogger('.'.join([__name__,
                                                  self.__class__.__name__]))
        self.machine = m
        self.width = width
        self.ts = tm_to_tiles(m)
        self._by_down: Dict[str, List[int]] = {}
        for tile in self.ts:
            self._by_down.setdefault(tile.down, []).append(tile.id)
        # index of the row-0 filler in machine_tiles order
        self._filler = 2

    def first_row(self) -> List[int]:
        return [0] + [self._filler] * (self.width - 1)

    def next_row(self, below: List[int], row: int) -> List[int]:
        ups = [self.ts[t].up for t in below]
        solutions = []
        self._extend(ups, [], CROSS.render(), STAR.render(), solutions)
        if len(solutions) != 1:
            self.logger.debug(f'Row {row} has {len(solutions)} candidate(s).')
            raise RowConstructionError(row, len(solutions))
        return solutions[0]

    def _extend(self, ups: List[str], prefix: List[int], left: str,
                edge: str, solutions: List[List[int]]):
        if len(solutions) > 1:
            return
        i = len(prefix)
        if i == len(ups):
            if left == edge:
                solutions.append(list(prefix))
            return
        for t in self._by_down.get(ups[i], []):
            tile = self.ts[t]
            if tile.left == left:
                prefix.append(t)
                self._extend(ups, prefix, tile.right, edge, solutions)
                prefix.pop()

    def build(self, rows: int) -> TileGrid:
        grid = [self.first_row()]
        for k in range(1, rows):
            grid.append(self.next_row(grid[-1], k))
        self.logger.debug(f'Built {rows} row(s) of width {self.width}.')
        return TileGrid.from_rows(grid)


def window_width(m: TuringMachine, rows: int) -> int:
    configs = run_blank(m, max(rows - 1, 0))
    return max(c.head for c in configs) + 2


def build_window(m: TuringMachine, rows: int,
                 width: Optional[int] = None) -> TileGrid:
    """
    The unique machine tiling of ``rows`` rows. The default width is two
    more than the furthest head position reached in those rows.
    """
    if rows < 1:
        raise ValueError('At least one row is needed.')
    width = width or window_width(m, rows)
    return RowBuilder(m, width).build(rows)


def rows_equal_configs(m: TuringMachine, rows: int) -> bool:
    """
    True when every row ``k`` of the forward-built window shows the
    configuration ``C_k`` in its up colors and the window satisfies the
    matching constraints.
    """
    grid = build_window(m, rows)
    ts = tm_to_tiles(m)
    configs = run_blank(m, rows - 1)
    for k, c in enumerate(configs):
        ups = [ts[t].up for t in grid.row(k)]
        if ups != c.colors(grid.width, m.blank):
            logger.info(f'Row {k} does not spell {c}.')
            return False
    return not check_constraints(grid, ts)


def load_machine(source) -> TuringMachine:
    return TuringMachine.from_json(source)
