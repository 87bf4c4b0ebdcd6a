from dataclasses import dataclass, field
from typing import (Dict, FrozenSet, Iterable, Iterator, List, Mapping,
                    Sequence, Tuple)
import logging

from ..exceptions import MalformedInputError
from ..utils import load_json, naturals, require, source_name

logger = logging.getLogger(__name__)

Individual = int
World = int
Assignment = Mapping[str, Individual]


def _bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


@dataclass(frozen=True)
class Frame(object):
    """
    A finite frame over the worlds ``0 .. n_worlds - 1``. The
    accessibility relation is stored as one bitmask of successors per
    world and is kept exactly as given; :func:`validate_model` reports
    whether it is a partial order.
    """

    n_worlds: int
    successors: Tuple[int, ...]

    def __post_init__(self):
        if self.n_worlds < 1:
            raise ValueError('A frame needs at least one world.')
        if len(self.successors) != self.n_worlds:
            raise ValueError('One successor mask is needed per world.')

    @classmethod
    def linear(cls, n_worlds: int) -> 'Frame':
        """The chain 0 <= 1 <= ... <= n_worlds - 1."""
        full = (1 << n_worlds) - 1
        return cls(n_worlds, tuple(full & ~((1 << w) - 1)
                                   for w in range(n_worlds)))

    @classmethod
    def from_pairs(cls, n_worlds: int,
                   pairs: Iterable[Sequence[int]]) -> 'Frame':
        succ = [0] * n_worlds
        for u, v in pairs:
            if not (0 <= u < n_worlds and 0 <= v < n_worlds):
                raise ValueError(f'Pair {(u, v)} refers to an unknown world.')
            succ[u] |= 1 << v
        return cls(n_worlds, tuple(succ))

    @property
    def worlds(self) -> range:
        return range(self.n_worlds)

    def accessible(self, u: World, v: World) -> bool:
        return bool(self.successors[u] >> v & 1)

    def successors_of(self, w: World) -> List[World]:
        return list(_bits(self.successors[w]))

    def pairs(self) -> List[Tuple[World, World]]:
        return [(u, v) for u in self.worlds for v in self.successors_of(u)]

    def reachable(self, w: World) -> List[World]:
        """Worlds reachable from ``w`` in zero or more steps."""
        seen = 1 << w
        frontier = seen
        while frontier:
            step = 0
            for u in _bits(frontier):
                step |= self.successors[u]
            frontier = step & ~seen
            seen |= frontier
        return list(_bits(seen))


@dataclass(frozen=True)
class AugmentedFrame(object):
    frame: Frame
    domains: Tuple[FrozenSet[Individual], ...]

    def __post_init__(self):
        if len(self.domains) != self.frame.n_worlds:
            raise ValueError('One domain is needed per world.')
        object.__setattr__(self, 'domains',
                           tuple(frozenset(d) for d in self.domains))

    @classmethod
    def constant(cls, frame: Frame,
                 individuals: Iterable[Individual]) -> 'AugmentedFrame':
        individuals = frozenset(individuals)
        return cls(frame, tuple(individuals for _ in frame.worlds))

    @property
    def global_domain(self) -> FrozenSet[Individual]:
        return frozenset().union(*self.domains)

    def domain(self, w: World) -> FrozenSet[Individual]:
        return self.domains[w]


@dataclass(frozen=True)
class KripkeModel(object):
    """
    A model over an augmented frame. ``interpretation`` maps each letter
    to one set of argument tuples per world; ``arities`` records the
    arity of every letter, so letters with an empty extension are still
    part of the signature. Nullary letters hold the empty tuple at the
    worlds where they are true.
    """

    aframe: AugmentedFrame
    arities: Mapping[str, int]
    interpretation: Mapping[str, Tuple[FrozenSet[tuple], ...]] = \
        field(default_factory=dict)

    def __post_init__(self):
        n = self.aframe.frame.n_worlds
        normalized = {}
        for letter, arity in self.arities.items():
            per_world = tuple(self.interpretation.get(letter, ()))
            if not per_world:
                per_world = tuple(frozenset() for _ in range(n))
            if len(per_world) != n:
                raise ValueError(f'Letter "{letter}" needs one extension per '
                                 f'world.')
            normalized[letter] = tuple(frozenset(tuple(t) for t in ext)
                                       for ext in per_world)
        unknown = set(self.interpretation) - set(self.arities)
        if unknown:
            raise ValueError(f'Letters without an arity: {sorted(unknown)}')
        object.__setattr__(self, 'arities', dict(self.arities))
        object.__setattr__(self, 'interpretation', normalized)

    @property
    def frame(self) -> Frame:
        return self.aframe.frame

    @property
    def worlds(self) -> range:
        return self.aframe.frame.worlds

    @property
    def n_worlds(self) -> int:
        return self.aframe.frame.n_worlds

    @property
    def global_domain(self) -> FrozenSet[Individual]:
        return self.aframe.global_domain

    def domain(self, w: World) -> FrozenSet[Individual]:
        return self.aframe.domain(w)

    def extension(self, letter: str, w: World) -> FrozenSet[tuple]:
        return self.interpretation[letter][w]

    def holds_atom(self, letter: str, w: World, args: tuple) -> bool:
        return tuple(args) in self.interpretation[letter][w]


def build_model(n_worlds: int, successors: Iterable[Sequence[int]],
                domains: Sequence[Iterable[Individual]],
                atoms: Dict[str, Tuple[int, Iterable[Sequence]]]) \
        -> KripkeModel:
    """
    Convenience constructor. ``atoms`` maps each letter to its arity and
    an iterable of ``(world, a1, ..., ak)`` rows.
    """
    frame = Frame.from_pairs(n_worlds, successors)
    aframe = AugmentedFrame(frame, tuple(frozenset(d) for d in domains))
    arities = {}
    interpretation = {}
    for letter, (arity, rows) in atoms.items():
        arities[letter] = arity
        per_world = [set() for _ in range(n_worlds)]
        for row in rows:
            w, args = row[0], tuple(row[1:])
            per_world[w].add(args)
        interpretation[letter] = tuple(frozenset(s) for s in per_world)
    return KripkeModel(aframe, arities, interpretation)


def load_model(source) -> KripkeModel:
    """
    Builds a model from the JSON model format, given a path or an
    already decoded dictionary. With ``"hereditary_closure": true`` every
    atom is kept at its world and copied to every world reachable from
    it through the given order; otherwise the interpretation is kept
    verbatim so that heredity violations can be reported.
    """
    path = source_name(source)
    data = load_json(source)
    if not isinstance(data, dict):
        raise MalformedInputError(path, 'expected a JSON object')
    n_worlds = require(data, 'worlds', int, path)
    if n_worlds < 1:
        raise MalformedInputError(path, 'a model needs at least one world')

    order = data.get('order', 'linear')
    if order == 'linear':
        frame = Frame.linear(n_worlds)
    elif isinstance(order, list):
        pairs = []
        for pair in order:
            if not isinstance(pair, list) or len(pair) != 2:
                raise MalformedInputError(path, f'bad order pair {pair!r}')
            pairs.append(naturals(pair, path, 'worlds'))
        try:
            frame = Frame.from_pairs(n_worlds, pairs)
        except ValueError as e:
            raise MalformedInputError(path, str(e)) from e
    else:
        raise MalformedInputError(path, 'order must be "linear" or a list '
                                        'of pairs')

    domains = require(data, 'domains', list, path)
    if len(domains) != n_worlds:
        raise MalformedInputError(path, f'expected {n_worlds} domains, got '
                                        f'{len(domains)}')
    aframe = AugmentedFrame(frame, tuple(
        frozenset(naturals(d, path, 'individuals')) for d in domains))

    closure = bool(data.get('hereditary_closure', False))
    arities = {}
    interpretation = {}
    for letter, entry in data.get('interpretation', {}).items():
        arity = require(entry, 'arity', int, path)
        per_world = [set() for _ in range(n_worlds)]
        for row in require(entry, 'atoms', list, path):
            row = naturals(row, path, 'atom entries')
            if not row or row[0] >= n_worlds:
                raise MalformedInputError(path, f'atom {row!r} of "{letter}" '
                                                f'names no world')
            targets = frame.reachable(row[0]) if closure else [row[0]]
            for w in targets:
                per_world[w].add(tuple(row[1:]))
        arities[letter] = arity
        interpretation[letter] = tuple(frozenset(s) for s in per_world)
    logger.info(f'Loaded a model with {n_worlds} worlds from {path}.')
    return KripkeModel(aframe, arities, interpretation)


def dump_model(m: KripkeModel) -> dict:
    """Serializes ``m`` in the JSON model format, atoms sorted."""
    linear = m.frame == Frame.linear(m.n_worlds)
    interpretation = {}
    for letter in sorted(m.arities):
        atoms = []
        for w in m.worlds:
            atoms.extend([w, *args] for args in sorted(m.extension(letter, w)))
        interpretation[letter] = {'arity': m.arities[letter], 'atoms': atoms}
    return {
        'worlds': m.n_worlds,
        'order': 'linear' if linear else [list(p) for p in m.frame.pairs()],
        'domains': [sorted(m.domain(w)) for w in m.worlds],
        'interpretation': interpretation
    }
