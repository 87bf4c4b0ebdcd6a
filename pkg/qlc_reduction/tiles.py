from dataclasses import dataclass
from typing import (Dict, Iterator, List, Mapping, NamedTuple, Optional,
                    Sequence, Tuple)
import logging

from .exceptions import (MalformedInputError, SearchLimitError, TileIndexError,
                         TilingCoverageError)
from .utils import load_json, naturals, require, source_name

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]


@dataclass(frozen=True)
class TileType(object):
    id: int
    left: str
    right: str
    up: str
    down: str

    def __post_init__(self):
        for side in ('left', 'right', 'up', 'down'):
            color = getattr(self, side)
            if not isinstance(color, str) or not color:
                raise ValueError(f'Tile {self.id} has an empty {side} color.')

    def to_dict(self) -> dict:
        return {'id': self.id, 'left': self.left, 'right': self.right,
                'up': self.up, 'down': self.down}


class TileSet(object):
    """
    An ordered, nonempty collection of tile types whose ids are their
    positions. ``ts[0]`` and ``ts[1]`` are the two distinguished types.
    Builds from a JSON file or dict through :meth:`from_json`.
    """

    def __init__(self, tiles: Sequence[TileType]):
        tiles = tuple(tiles)
        if not tiles:
            raise ValueError('A tile set needs at least one tile type.')
        for position, tile in enumerate(tiles):
            if tile.id != position:
                raise ValueError(f'Tile at position {position} has id '
                                 f'{tile.id}.')
        self.tiles = tiles

    @classmethod
    def from_colors(cls, colors: Sequence[Sequence[str]]) -> 'TileSet':
        """Builds a set from ``(left, right, up, down)`` color tuples."""
        return cls([TileType(k, *c) for k, c in enumerate(colors)])

    @classmethod
    def from_json(cls, source) -> 'TileSet':
        path = source_name(source)
        data = load_json(source)
        entries = require(data, 'tiles', list, path)
        if not entries:
            raise MalformedInputError(path, 'the tile set is empty')
        tiles = []
        for position, entry in enumerate(entries):
            try:
                tile_id = entry.get('id', position)
                tiles.append(TileType(tile_id, entry['left'], entry['right'],
                                      entry['up'], entry['down']))
            except (AttributeError, KeyError, ValueError) as e:
                raise MalformedInputError(
                    path, f'bad tile at position {position}: {e}') from e
        try:
            return cls(tiles)
        except ValueError as e:
            raise MalformedInputError(path, str(e)) from e

    def to_dict(self) -> dict:
        return {'tiles': [t.to_dict() for t in self.tiles]}

    def __getitem__(self, item: int) -> TileType:
        return self.tiles[item]

    def __iter__(self) -> Iterator[TileType]:
        return iter(self.tiles)

    def __len__(self):
        return len(self.tiles)

    def __eq__(self, other):
        return isinstance(other, TileSet) and self.tiles == other.tiles

    def __repr__(self):
        return f'{self.__class__.__name__}({len(self)} types)'


class TileGrid(object):
    """
    A tiling of the ``width`` by ``height`` rectangle. Cells are keyed by
    ``(i, j)`` with ``i`` the column and ``j`` the row, and hold tile
    indices.
    """

    def __init__(self, width: int, height: int, cells: Mapping[Cell, int]):
        if width < 1 or height < 1:
            raise ValueError('A tile grid needs a positive width and height.')
        self.width = width
        self.height = height
        self.cells: Dict[Cell, int] = dict(cells)
        for i in range(width):
            for j in range(height):
                if (i, j) not in self.cells:
                    raise ValueError(f'Cell {(i, j)} has no tile.')

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> 'TileGrid':
        """``rows[j][i]`` is the tile at column ``i`` of row ``j``."""
        height = len(rows)
        width = len(rows[0]) if rows else 0
        if any(len(r) != width for r in rows):
            raise ValueError('All rows of a tile grid must have equal width.')
        return cls(width, height, {(i, j): t for j, row in enumerate(rows)
                                   for i, t in enumerate(row)})

    @classmethod
    def from_json(cls, source) -> 'TileGrid':
        path = source_name(source)
        data = load_json(source)
        rows = require(data, 'rows', list, path)
        try:
            return cls.from_rows([naturals(r, path, 'tile indices')
                                  for r in rows])
        except (TypeError, ValueError, IndexError) as e:
            raise MalformedInputError(path, str(e)) from e

    def __getitem__(self, cell: Cell) -> int:
        return self.cells[cell]

    def __eq__(self, other):
        return (isinstance(other, TileGrid) and self.width == other.width
                and self.height == other.height and self.cells == other.cells)

    def __repr__(self):
        return f'{self.__class__.__name__}({self.width}x{self.height})'

    def covers(self, i: int, j: int) -> bool:
        return i < self.width and j < self.height

    def row(self, j: int) -> List[int]:
        return [self.cells[(i, j)] for i in range(self.width)]

    def column(self, i: int) -> List[int]:
        return [self.cells[(i, j)] for j in range(self.height)]

    def rows(self) -> List[List[int]]:
        return [self.row(j) for j in range(self.height)]

    def restrict(self, width: int, height: int) -> 'TileGrid':
        if width > self.width or height > self.height:
            raise TilingCoverageError((width - 1, height - 1), self.width,
                                      self.height)
        return TileGrid(width, height, {(i, j): self.cells[(i, j)]
                                        for i in range(width)
                                        for j in range(height)})

    def to_dict(self) -> dict:
        return {'width': self.width, 'height': self.height,
                'rows': self.rows()}

    def render(self) -> str:
        """Text picture with the top row first."""
        size = len(str(max(self.cells.values())))
        return '\n'.join(' '.join(str(t).rjust(size) for t in self.row(j))
                         for j in reversed(range(self.height)))


class TileViolation(NamedTuple):
    kind: str
    cell: Cell
    neighbor: Cell
    colors: Tuple[str, str]

    def to_dict(self) -> dict:
        return {'kind': self.kind, 'cell': list(self.cell),
                'neighbor': list(self.neighbor), 'colors': list(self.colors)}


def _check_indices(g: TileGrid, ts: TileSet):
    for cell in sorted(g.cells, key=lambda c: (c[1], c[0])):
        t = g.cells[cell]
        if not 0 <= t < len(ts):
            raise TileIndexError(cell, t, len(ts))


def check_constraints(g: TileGrid, ts: TileSet) -> List[TileViolation]:
    """
    Lists every horizontally or vertically adjacent pair of cells whose
    touching edges carry different colors, in row-major order.
    """
    _check_indices(g, ts)
    violations = []
    for j in range(g.height):
        for i in range(g.width):
            here = ts[g[i, j]]
            if i + 1 < g.width:
                east = ts[g[i + 1, j]]
                if here.right != east.left:
                    violations.append(TileViolation(
                        'horizontal', (i, j), (i + 1, j),
                        (here.right, east.left)))
            if j + 1 < g.height:
                north = ts[g[i, j + 1]]
                if here.up != north.down:
                    violations.append(TileViolation(
                        'vertical', (i, j), (i, j + 1), (here.up, north.down)))
    return violations


def check_boundary(g: TileGrid, ts: TileSet, jstar: int) -> bool:
    """
    True when the origin holds ``t_0`` and every cell of column 0 from
    row ``jstar`` up to the top of the window holds ``t_1``. Row 0 holds
    ``t_0``, so ``jstar`` must be at least 1.
    """
    if jstar < 1:
        raise ValueError(f'The boundary row must be at least 1, not {jstar}.')
    _check_indices(g, ts)
    if g[0, 0] != 0:
        return False
    return all(g[0, j] == 1 for j in range(jstar, g.height))


class WindowSolver(object):
    """
    Depth-first search for a tiling of a finite window. Cells are
    filled in row-major order, bottom row first, and each cell tries the
    tile indices in ascending order, so the first solution found is the
    least one in that order. A positive ``node_limit`` bounds the number
    of placements tried; reaching it raises :class:`SearchLimitError`
    rather than answering that no tiling exists.
    """

    def __init__(self, ts: TileSet, width: int, height: int,
                 fixed: Optional[Mapping[Cell, int]] = None,
                 node_limit: int = 0):
        self.logger = logging.getLogger('.'.join([__name__,
                                                  self.__class__.__name__]))
        if width < 1 or height < 1:
            raise ValueError('The window needs a positive width and height.')
        self.ts = ts
        self.width = width
        self.height = height
        self.fixed = dict(fixed or {})
        for cell, t in self.fixed.items():
            if not (0 <= cell[0] < width and 0 <= cell[1] < height):
                raise TilingCoverageError(cell, width, height)
            if not 0 <= t < len(ts):
                raise TileIndexError(cell, t, len(ts))
        self.node_limit = node_limit
        self.nodes = 0
        self.backtracks = 0

    def _candidate(self, cell: Cell, assigned: Dict[Cell, int],
                   start: int) -> Optional[int]:
        i, j = cell
        if cell in self.fixed:
            options = [self.fixed[cell]]
        else:
            options = range(len(self.ts))
        west = assigned.get((i - 1, j))
        south = assigned.get((i, j - 1))
        for t in options:
            if t < start:
                continue
            tile = self.ts[t]
            if west is not None and self.ts[west].right != tile.left:
                continue
            if south is not None and self.ts[south].up != tile.down:
                continue
            return t
        return None

    def solve(self) -> Optional[TileGrid]:
        cells = [(i, j) for j in range(self.height) for i in range(self.width)]
        assigned: Dict[Cell, int] = {}
        start = [0] * len(cells)
        pos = 0
        while 0 <= pos < len(cells):
            if self.node_limit and self.nodes >= self.node_limit:
                self.logger.warning(f'Gave up after {self.nodes} placements.')
                raise SearchLimitError(self.nodes, self.width, self.height)
            cell = cells[pos]
            t = self._candidate(cell, assigned, start[pos])
            if t is None:
                start[pos] = 0
                pos -= 1
                if pos >= 0:
                    del assigned[cells[pos]]
                self.backtracks += 1
                continue
            assigned[cell] = t
            start[pos] = t + 1
            self.nodes += 1
            pos += 1
        if pos < 0:
            self.logger.info(f'No tiling of the {self.width}x{self.height} '
                             f'window ({self.nodes} placements).')
            return None
        self.logger.info(f'Tiled the {self.width}x{self.height} window after '
                         f'{self.nodes} placements and {self.backtracks} '
                         f'backtracks.')
        return TileGrid(self.width, self.height, assigned)


def solve_window(ts: TileSet, width: int, height: int,
                 fixed: Optional[Mapping[Cell, int]] = None,
                 node_limit: int = 0) -> Optional[TileGrid]:
    return WindowSolver(ts, width, height, fixed, node_limit).solve()


def load_tiles(source) -> TileSet:
    return TileSet.from_json(source)
