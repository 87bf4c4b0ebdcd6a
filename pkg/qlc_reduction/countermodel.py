"""
The finite truncation of the grid countermodel: worlds and individuals
``0 .. N`` on a chain, the unary letters marking how far each front has
advanced at a world, ``lhd`` as the successor relation and ``P_k``
reading the tiling off the grid. Checks on the truncated model are exact
evaluator runs; failures whose witnesses touch the top ``margin`` indices
are reported as boundary effects of the truncation.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple
import logging

try:
    from tqdm import tqdm
except ModuleNotFoundError:
    def tqdm(x, **kwargs): return x

from . import grid
from .exceptions import (BoundNotAttainedError, InvalidTilingError,
                         TilingCoverageError)
from .reduction import (ABOVE, LHD, PHI, PSI, Q, Q1, RIGHT, S1, S2,
                        UNARY_LETTERS, WALL, X, Y, P, conjuncts, preceq)
from .semantics.evaluator import Evaluator, Witness
from .semantics.kripke_model import AugmentedFrame, Frame, KripkeModel
from .syntax.formula import POSITIVE_BOTTOM, And, Implies, Or
from .tiles import TileGrid, TileSet, check_constraints, solve_window

logger = logging.getLogger(__name__)

PASS, PARTIAL, FAIL = 'pass', 'partial', 'fail'
BOUNDARY, INTERIOR = 'boundary', 'interior'
EXPECTED_FALSE = ('Refute', 'Refute_Q')

_RIGHT_QUERY = Implies(And(Q(X), RIGHT(Y)), Or(Q1(X), S2(Y)))
_ABOVE_QUERY = Implies(And(Q(X), ABOVE(Y)), Or(Q1(X), S1(Y)))


@dataclass(frozen=True)
class TruncatedModel(object):
    size: int
    tiles: TileSet
    tiling: TileGrid
    model: KripkeModel


def required_size(k_max: int, padding: int = 3) -> int:
    """
    Smallest truncation keeping every index the checks of ``k <= k_max``
    touch, plus ``padding`` spare indices.
    """
    return grid.above(grid.above(k_max)) + padding


def window_for_size(size: int) -> Tuple[int, int]:
    """Smallest square window holding every grid point of index ``<= size``."""
    d = grid.diagonal(size)
    return d + 1, d + 1


def solve_for_size(ts: TileSet, size: int,
                   node_limit: int = 0) -> Optional[TileGrid]:
    width, height = window_for_size(size)
    return solve_window(ts, width, height, {(0, 0): 0}, node_limit)


def _fronts(size: int) -> Dict[str, List[int]]:
    """For each world, the largest individual at which each front stands."""
    fronts = {letter: [] for letter in ('Q', "Q'", 'next', 'S', "S'", "S''",
                                        'G')}
    for w in range(size + 1):
        top = grid.above(w)
        fronts['Q'].append(w)
        fronts["Q'"].append(w - 1)
        fronts['next'].append(w + 1)
        fronts['S'].append(top)
        fronts["S'"].append(top - 1)
        fronts["S''"].append(top - 2)
        fronts['G'].append(top + 1)
    return fronts


def build_countermodel(ts: TileSet, g: TileGrid, size: int) -> TruncatedModel:
    """
    Builds the model over the chain ``0 .. size`` with constant domain
    ``0 .. size``. ``g`` must cover every grid point of index at most
    ``size`` and satisfy the matching constraints.
    """
    points = [grid.pair(a) for a in range(size + 1)]
    for i, j in points:
        if not g.covers(i, j):
            raise TilingCoverageError((i, j), g.width, g.height)
    violations = check_constraints(g, ts)
    if violations:
        raise InvalidTilingError(violations)

    worlds = range(size + 1)
    individuals = range(size + 1)
    wall = {a for a in individuals if points[a].i == 0}
    floor = {a for a in individuals if points[a].j == 0}
    fronts = _fronts(size)

    def upto(limit: int) -> frozenset:
        return frozenset((a,) for a in individuals if a <= limit)

    interpretation = {letter: tuple(upto(fronts[letter][w]) for w in worlds)
                      for letter in fronts}
    interpretation['above'] = tuple(
        frozenset((a,) for (a,) in interpretation['S'][w] if a not in floor)
        for w in worlds)
    interpretation['right'] = tuple(
        frozenset((a,) for (a,) in interpretation["S'"][w] if a not in wall)
        for w in worlds)
    interpretation['wall'] = tuple(frozenset((a,) for a in wall)
                                   for _ in worlds)
    interpretation['floor'] = tuple(frozenset((a,) for a in floor)
                                    for _ in worlds)
    successor = frozenset((a, a + 1) for a in individuals if a + 1 <= size)
    interpretation[LHD] = tuple(successor for _ in worlds)
    for t in ts:
        marked = frozenset((a,) for a in individuals if g[points[a]] == t.id)
        interpretation[f'P{t.id}'] = tuple(marked for _ in worlds)

    arities = {LHD: 2}
    arities.update({letter: 1 for letter in UNARY_LETTERS})
    arities.update({f'P{t.id}': 1 for t in ts})
    aframe = AugmentedFrame.constant(Frame.linear(size + 1), individuals)
    model = KripkeModel(aframe, arities, interpretation)
    logger.info(f'Built the truncated model of size {size} for '
                f'{len(ts)} tile type(s).')
    return TruncatedModel(size, ts, g, model)


@dataclass(frozen=True)
class ConjunctFinding(object):
    name: str
    value: bool
    expected: bool
    witness: Optional[Witness] = None
    classification: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.value == self.expected

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'value': self.value,
            'expected': self.expected,
            'witness': None if self.witness is None else self.witness.to_dict(),
            'classification': self.classification
        }


@dataclass
class ConjunctReport(object):
    size: int
    margin: int
    mode: str
    findings: List[ConjunctFinding] = field(default_factory=list)
    preceq_agrees: Optional[bool] = None

    @property
    def status(self) -> str:
        failed = [f for f in self.findings if not f.ok]
        if self.preceq_agrees is False:
            return FAIL
        if not failed:
            return PASS
        if all(f.classification == BOUNDARY for f in failed):
            return PARTIAL
        return FAIL

    def __getitem__(self, name: str) -> ConjunctFinding:
        for finding in self.findings:
            if finding.name == name:
                return finding
        raise KeyError(name)

    def to_dict(self) -> dict:
        out = {
            'size': self.size,
            'margin': self.margin,
            'mode': self.mode,
            'status': self.status,
            'findings': [f.to_dict() for f in self.findings]
        }
        if self.preceq_agrees is not None:
            out['preceq_agrees'] = self.preceq_agrees
        return out


def classify(witness: Optional[Witness], size: int, margin: int) -> str:
    if witness is not None and max(witness.indices()) >= size - margin:
        return BOUNDARY
    return INTERIOR


def conjunct_report(m: TruncatedModel, margin: int = 3, mode: str = PHI,
                    workers: int = 1, evaluator: Evaluator = None,
                    progress: bool = False) -> ConjunctReport:
    """
    Evaluates each named conjunct at world 0. Grid and tiling conjuncts
    are expected to be forced there and ``Refute`` (and ``Refute_Q`` in
    ``psi`` mode) not to be. Unexpected truth values come with a witness
    and its classification.
    """
    if margin < 0:
        raise ValueError('The margin must be nonnegative.')
    ev = evaluator or Evaluator(m.model)
    named = conjuncts(m.tiles, mode)

    def evaluate(name: str) -> ConjunctFinding:
        f = named[name]
        expected = name not in EXPECTED_FALSE
        value = ev.forces(0, {}, f)
        if value == expected:
            finding = ConjunctFinding(name, value, expected)
        else:
            witness = ev.find_counterexample(0, {}, f) if expected else None
            finding = ConjunctFinding(name, value, expected, witness,
                                      classify(witness, m.size, margin))
        logger.info(f'{name}: {value} at world 0.')
        return finding

    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        findings = list(tqdm(executor.map(evaluate, named), total=len(named),
                             disable=not progress))
    report = ConjunctReport(m.size, margin, mode, findings)
    if mode == PSI:
        report.preceq_agrees = all(forced == ordered for _, _, forced, ordered
                                   in preceq_table(m, ev))
    logger.debug(f'Evaluator statistics: {ev.stats()}')
    return report


def _least_refuted(m: TruncatedModel, k: int, query, name: str,
                   ev: Evaluator = None) -> int:
    if not 0 <= k <= m.size:
        raise BoundNotAttainedError(name, k, m.size)
    ev = ev or Evaluator(m.model)
    for target in range(m.size + 1):
        if not ev.forces(0, {X: k, Y: target}, query):
            return target
    raise BoundNotAttainedError(name, k, m.size)


def right_prime(m: TruncatedModel, k: int, ev: Evaluator = None) -> int:
    """
    The least ``m`` such that world 0 does not force
    ``Q(a_k) & right(a_m) -> Q'(a_k) | S''(a_m)``.
    """
    return _least_refuted(m, k, _RIGHT_QUERY, 'right_prime', ev)


def above_prime(m: TruncatedModel, k: int, ev: Evaluator = None) -> int:
    """The same as :func:`right_prime` with ``above`` and ``S'``."""
    return _least_refuted(m, k, _ABOVE_QUERY, 'above_prime', ev)


def wall_prime(m: TruncatedModel, k: int, ev: Evaluator = None) -> bool:
    if not 0 <= k <= m.size:
        raise BoundNotAttainedError('wall_prime', k, m.size)
    ev = ev or Evaluator(m.model)
    return ev.forces(0, {X: k}, WALL(X))


def sublemma_table(m: TruncatedModel, k_max: int,
                   ev: Evaluator = None) -> List[Dict[str, object]]:
    """Rows ``k, right, right', above, above', wall, wall'`` for ``k <= k_max``."""
    ev = ev or Evaluator(m.model)
    rows = []
    for k in range(k_max + 1):
        rows.append({
            'k': k,
            'right': grid.right(k),
            'right_prime': right_prime(m, k, ev),
            'above': grid.above(k),
            'above_prime': above_prime(m, k, ev),
            'wall': grid.wall(k),
            'wall_prime': wall_prime(m, k, ev)
        })
    return rows


def extract_tiling(m: TruncatedModel, width: int, height: int,
                   ev: Evaluator = None) -> TileGrid:
    """
    Reads the tiling back from the model: cell ``(i, j)`` holds ``t_s``
    when world 0 forces ``P_s`` of the individual ``num(i, j)``.
    """
    ev = ev or Evaluator(m.model)
    cells = {}
    for i in range(width):
        for j in range(height):
            a = grid.num(i, j)
            if a > m.size:
                raise TilingCoverageError((i, j), width, height)
            marks = [t.id for t in m.tiles if ev.forces(0, {X: a}, P(t.id, X))]
            if len(marks) != 1:
                raise InvalidTilingError([f'cell {(i, j)} carries tiles '
                                          f'{marks}'])
            cells[(i, j)] = marks[0]
    return TileGrid(width, height, cells)


def preceq_table(m: TruncatedModel,
                 ev: Evaluator = None) -> List[Tuple[int, int, bool, bool]]:
    """Rows ``(a, b, forced at 0, a <= b)`` for the expanded ``a preceq b``."""
    ev = ev or Evaluator(m.model)
    f = preceq(X, Y)
    return [(a, b, ev.forces(0, {X: a, Y: b}, f), a <= b)
            for a in range(m.size + 1) for b in range(m.size + 1)]


def positive_bottom_worlds(m: TruncatedModel,
                           ev: Evaluator = None) -> List[int]:
    """Worlds forcing ``forall x. Q'(x)``, the stand-in for bottom."""
    ev = ev or Evaluator(m.model)
    return ev.forced_worlds(POSITIVE_BOTTOM)
