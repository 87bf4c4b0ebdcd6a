from typing import Dict, List, Mapping, NamedTuple, Optional, Tuple
import logging
import threading

from .kripke_model import Assignment, KripkeModel, World, _bits
from ..exceptions import AssignmentDomainError, UnboundVariableError
from ..syntax.formula import (And, Atom, Bottom, Exists, Forall, Formula,
                              Implies, Or, free_variables)

logger = logging.getLogger(__name__)

_KINDS = {Bottom: 'bot', Atom: 'atom', And: 'and', Or: 'or',
          Implies: 'implies', Forall: 'forall', Exists: 'exists'}


class _Node(NamedTuple):
    kind: str
    children: Tuple[int, ...]
    free: Tuple[str, ...]
    letter: Optional[str] = None
    args: Tuple[str, ...] = ()
    var: Optional[str] = None


class Witness(NamedTuple):
    world: World
    assignment: Dict[str, int]

    def indices(self) -> List[int]:
        return [self.world] + list(self.assignment.values())

    def to_dict(self) -> dict:
        return {'world': self.world,
                'assignment': dict(sorted(self.assignment.items()))}


class Evaluator(object):
    """
    Exact forcing on a finite model. Formulas are compiled into a shared
    node table in which structurally equal subformulas get the same id.
    For a node and a value for each of its free variables the evaluator
    computes the bitmask of worlds forcing it; the masks are memoized on
    ``(node, values)`` when ``memoize`` is set. Worlds where an
    individual is absent never contribute to quantifier clauses, so the
    masks agree with the recursive truth definition at every world whose
    domain holds the assigned values.
    """

    def __init__(self, model: KripkeModel, memoize: bool = True):
        self.logger = logging.getLogger('.'.join([__name__,
                                                  self.__class__.__name__]))
        self.model = model
        self.memoize = memoize
        self._full = (1 << model.n_worlds) - 1
        self._succ = model.frame.successors
        self._individuals = tuple(sorted(model.global_domain))
        self._dom_mask = {d: 0 for d in self._individuals}
        for w in model.worlds:
            for d in model.domain(w):
                self._dom_mask[d] |= 1 << w
        self._atoms: Dict[str, Dict[tuple, int]] = {}
        for letter, per_world in model.interpretation.items():
            masks = {}
            for w, extension in enumerate(per_world):
                for args in extension:
                    masks[args] = masks.get(args, 0) | 1 << w
            self._atoms[letter] = masks
        self._nodes: List[_Node] = []
        self._ids: Dict[Formula, int] = {}
        self._memo: List[Dict[tuple, int]] = []
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def compile(self, f: Formula) -> int:
        with self._lock:
            return self._compile(f)

    def _compile(self, f: Formula) -> int:
        node_id = self._ids.get(f)
        if node_id is not None:
            return node_id
        kind = _KINDS[type(f)]
        if kind == 'bot':
            node = _Node(kind, (), ())
        elif kind == 'atom':
            node = _Node(kind, (), tuple(sorted(set(f.args))),
                         letter=f.letter, args=f.args)
        elif kind in ('and', 'or', 'implies'):
            children = (self._compile(f.left), self._compile(f.right))
            free = set(self._nodes[children[0]].free)
            free.update(self._nodes[children[1]].free)
            node = _Node(kind, children, tuple(sorted(free)))
        else:
            body = self._compile(f.body)
            free = set(self._nodes[body].free) - {f.var}
            node = _Node(kind, (body,), tuple(sorted(free)), var=f.var)
        self._nodes.append(node)
        self._memo.append({})
        node_id = len(self._nodes) - 1
        self._ids[f] = node_id
        return node_id

    def _up_closed(self, bad: int) -> int:
        """Worlds none of whose successors lie in ``bad``."""
        if not bad:
            return self._full
        out = 0
        for w, succ in enumerate(self._succ):
            if not succ & bad:
                out |= 1 << w
        return out

    def mask(self, node_id: int, env: Mapping[str, int]) -> int:
        node = self._nodes[node_id]
        key = tuple(env[v] for v in node.free)
        memo = self._memo[node_id]
        if self.memoize:
            cached = memo.get(key)
            with self._lock:
                if cached is not None:
                    self.hits += 1
                else:
                    self.misses += 1
            if cached is not None:
                return cached

        kind = node.kind
        if kind == 'bot':
            out = 0
        elif kind == 'atom':
            out = self._atoms.get(node.letter, {}).get(
                tuple(env[a] for a in node.args), 0)
        elif kind == 'and':
            out = self.mask(node.children[0], env)
            if out:
                out &= self.mask(node.children[1], env)
        elif kind == 'or':
            out = self.mask(node.children[0], env)
            if out != self._full:
                out |= self.mask(node.children[1], env)
        elif kind == 'implies':
            antecedent = self.mask(node.children[0], env)
            if antecedent:
                bad = antecedent & ~self.mask(node.children[1], env)
            else:
                bad = 0
            out = self._up_closed(bad)
        elif kind == 'forall':
            inner = dict(env)
            bad = 0
            for d in self._individuals:
                inner[node.var] = d
                bad |= self._dom_mask[d] & ~self.mask(node.children[0], inner)
            out = self._up_closed(bad)
        else:
            inner = dict(env)
            out = 0
            for d in self._individuals:
                inner[node.var] = d
                out |= self._dom_mask[d] & self.mask(node.children[0], inner)
                if out == self._full:
                    break

        if self.memoize:
            memo[key] = out
        return out

    def _check(self, w: World, g: Assignment, f: Formula) -> Dict[str, int]:
        if w not in self.model.worlds:
            raise ValueError(f'World {w} is not in the model.')
        env = {}
        for v in free_variables(f):
            if v not in g:
                raise UnboundVariableError(v)
            if g[v] not in self.model.global_domain:
                raise AssignmentDomainError(v, g[v])
            if g[v] not in self.model.domain(w):
                raise AssignmentDomainError(v, g[v], w)
            env[v] = g[v]
        return env

    def _forced(self, node_id: int, w: World, env: Mapping[str, int]) -> bool:
        return bool(self.mask(node_id, env) >> w & 1)

    def forces(self, w: World, g: Assignment, f: Formula) -> bool:
        env = self._check(w, g, f)
        return self._forced(self.compile(f), w, env)

    def forced_worlds(self, f: Formula, g: Assignment = None) -> List[World]:
        """Worlds forcing ``f`` among those whose domain holds ``g``."""
        g = g or {}
        node_id = self.compile(f)
        env = {}
        allowed = self._full
        for v in free_variables(f):
            if v not in g:
                raise UnboundVariableError(v)
            if g[v] not in self._dom_mask:
                raise AssignmentDomainError(v, g[v])
            env[v] = g[v]
            allowed &= self._dom_mask[g[v]]
        return list(_bits(self.mask(node_id, env) & allowed))

    def holds_everywhere(self, f: Formula) -> bool:
        node_id = self.compile(f)
        free = free_variables(f)
        return self._holds_from(node_id, free, {}, self._full)

    def _holds_from(self, node_id: int, free: Tuple[str, ...],
                    env: Dict[str, int], allowed: int) -> bool:
        if not allowed:
            return True
        if len(env) == len(free):
            return self.mask(node_id, env) & allowed == allowed
        var = free[len(env)]
        for d in self._individuals:
            inner = dict(env)
            inner[var] = d
            if not self._holds_from(node_id, free, inner,
                                    allowed & self._dom_mask[d]):
                return False
        return True

    def find_counterexample(self, w: World, g: Assignment,
                            f: Formula) -> Optional[Witness]:
        """
        Returns ``None`` when ``f`` is forced at ``w`` under ``g``.
        Otherwise follows the refutation through conjunctions, universal
        quantifiers and implications, taking the least world and then the
        least individual at each step, and returns the deepest point
        reached.
        """
        env = self._check(w, g, f)
        node_id = self.compile(f)
        if self._forced(node_id, w, env):
            return None
        return self._descend(node_id, w, dict(g, **env))

    def _descend(self, node_id: int, w: World, env: Dict[str, int]) \
            -> Witness:
        node = self._nodes[node_id]
        if node.kind == 'and':
            for child in node.children:
                if not self._forced(child, w, env):
                    return self._descend(child, w, env)
        elif node.kind == 'forall':
            body = node.children[0]
            for v in _bits(self._succ[w]):
                for d in sorted(self.model.domain(v)):
                    inner = dict(env)
                    inner[node.var] = d
                    if not self._forced(body, v, inner):
                        return self._descend(body, v, inner)
        elif node.kind == 'implies':
            left, right = node.children
            for v in _bits(self._succ[w]):
                if self._forced(left, v, env) and \
                        not self._forced(right, v, env):
                    return self._descend(right, v, env)
        return Witness(w, dict(env))

    def stats(self) -> dict:
        with self._lock:
            return {'nodes': len(self._nodes),
                    'memo_entries': sum(len(m) for m in self._memo),
                    'hits': self.hits,
                    'misses': self.misses}


def forces(m: KripkeModel, w: World, g: Assignment, f: Formula) -> bool:
    return Evaluator(m).forces(w, g, f)


def holds_everywhere(m: KripkeModel, f: Formula) -> bool:
    return Evaluator(m).holds_everywhere(f)


def find_counterexample(m: KripkeModel, w: World, g: Assignment,
                        f: Formula) -> Optional[Witness]:
    return Evaluator(m).find_counterexample(w, g, f)
