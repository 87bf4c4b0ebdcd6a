"""
The anti-diagonal enumeration of the grid and the index maps derived
from it. Point ``k`` sits at column ``i`` and row ``j``; the diagonal
through it has ``i + j`` fixed and is walked from the floor up to the
wall, so ``(i, j)`` is followed by ``(i - 1, j + 1)`` and the wall point
``(0, j)`` by ``(j + 1, 0)``.
"""

from math import isqrt
from typing import Dict, Iterator, List, NamedTuple
import logging

from .exceptions import GridOverflowError

logger = logging.getLogger(__name__)

MAX_INDEX = 2 ** 64 - 1
CSV_FIELDS = ['k', 'i', 'j', 'right', 'above', 'wall', 'floor']


class GridPoint(NamedTuple):
    i: int
    j: int


def _check(value: int) -> int:
    if value < 0:
        raise ValueError(f'Grid indices are natural numbers, got {value}.')
    if value > MAX_INDEX:
        raise GridOverflowError(value)
    return value


def num(i: int, j: int = None) -> int:
    """
    Index of the grid point ``(i, j)``. Accepts either two naturals or
    a single :class:`GridPoint`.
    """
    if j is None:
        i, j = i
    _check(i)
    _check(j)
    d = i + j
    return _check(d * (d + 1) // 2 + j)


def pair(k: int) -> GridPoint:
    _check(k)
    d = (isqrt(8 * k + 1) - 1) // 2
    j = k - d * (d + 1) // 2
    return GridPoint(d - j, j)


def pair_by_recurrence(k: int) -> GridPoint:
    """Walks the enumeration step by step. Kept as an oracle for ``pair``."""
    _check(k)
    i, j = 0, 0
    for _ in range(k):
        if i > 0:
            i, j = i - 1, j + 1
        else:
            i, j = j + 1, 0
    return GridPoint(i, j)


def right(k: int) -> int:
    i, j = pair(k)
    return num(i + 1, j)


def above(k: int) -> int:
    i, j = pair(k)
    return num(i, j + 1)


def wall(k: int) -> bool:
    return pair(k).i == 0


def floor(k: int) -> bool:
    return pair(k).j == 0


def next_index(k: int) -> int:
    return _check(k + 1)


def diagonal(k: int) -> int:
    """Number of the anti-diagonal holding ``k``, that is ``i_k + j_k``."""
    i, j = pair(k)
    return i + j


def iter_rows(upto: int) -> Iterator[Dict[str, object]]:
    for k in range(upto + 1):
        i, j = pair(k)
        yield {
            'k': k,
            'i': i,
            'j': j,
            'right': right(k),
            'above': above(k),
            'wall': str(wall(k)).lower(),
            'floor': str(floor(k)).lower()
        }


def grid_table(upto: int) -> List[Dict[str, object]]:
    logger.debug(f'Tabulating grid indices up to {upto}.')
    return list(iter_rows(upto))
