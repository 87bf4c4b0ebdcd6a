"""
Random models and formulas for the property tests, and a direct
recursive reading of the forcing clauses to compare the evaluator with.
"""

from itertools import product
from random import Random
from typing import Dict, Mapping

from qlc_reduction.semantics import AugmentedFrame, Frame, KripkeModel
from qlc_reduction.syntax import (And, Atom, Bottom, Exists, Forall, Formula,
                                  Implies, Or)

VARIABLES = ('x', 'y')
LETTERS = {'P': 1, 'R': 2, 'p': 0}


def random_model(rng: Random, max_worlds: int = 4,
                 max_individuals: int = 3) -> KripkeModel:
    """
    A partial order on ``0 .. n-1`` extending the natural order's
    topological sort, expanding domains and hereditary atoms.
    """
    n = rng.randint(1, max_worlds)
    below = [{w} for w in range(n)]
    for v in range(n):
        for u in range(v):
            if rng.random() < 0.5:
                below[v] |= below[u]
    pairs = [(u, v) for v in range(n) for u in below[v]]
    frame = Frame.from_pairs(n, pairs)

    individuals = list(range(max_individuals))
    domains = []
    for v in range(n):
        inherited = set().union(*(domains[u] for u in below[v] if u != v))
        fresh = {d for d in individuals if rng.random() < 0.4}
        domain = inherited | fresh
        if not domain:
            domain = {rng.choice(individuals)}
        domains.append(frozenset(domain))

    interpretation = {}
    for letter, arity in LETTERS.items():
        per_world = []
        for v in range(n):
            ext = set().union(*(per_world[u] for u in below[v] if u != v))
            for args in product(sorted(domains[v]), repeat=arity):
                if rng.random() < 0.35:
                    ext.add(args)
            per_world.append(frozenset(ext))
        interpretation[letter] = tuple(per_world)
    return KripkeModel(AugmentedFrame(frame, tuple(domains)), dict(LETTERS),
                       interpretation)


def random_formula(rng: Random, depth: int = 5) -> Formula:
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.1:
            return Bottom()
        letter = rng.choice(sorted(LETTERS))
        args = tuple(rng.choice(VARIABLES) for _ in range(LETTERS[letter]))
        return Atom(letter, args)
    kind = rng.choice(['and', 'or', 'implies', 'forall', 'exists'])
    if kind in ('forall', 'exists'):
        cls = Forall if kind == 'forall' else Exists
        return cls(rng.choice(VARIABLES), random_formula(rng, depth - 1))
    cls = {'and': And, 'or': Or, 'implies': Implies}[kind]
    return cls(random_formula(rng, depth - 1), random_formula(rng, depth - 1))


def reference_forces(m: KripkeModel, w: int, g: Mapping[str, int],
                     f: Formula) -> bool:
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Atom):
        return tuple(g[a] for a in f.args) in m.extension(f.letter, w)
    if isinstance(f, And):
        return (reference_forces(m, w, g, f.left)
                and reference_forces(m, w, g, f.right))
    if isinstance(f, Or):
        return (reference_forces(m, w, g, f.left)
                or reference_forces(m, w, g, f.right))
    later = m.frame.successors_of(w)
    if isinstance(f, Implies):
        return all(reference_forces(m, v, g, f.right) for v in later
                   if reference_forces(m, v, g, f.left))
    if isinstance(f, Forall):
        return all(reference_forces(m, v, dict(g, **{f.var: d}), f.body)
                   for v in later for d in m.domain(v))
    return any(reference_forces(m, w, dict(g, **{f.var: d}), f.body)
               for d in m.domain(w))


def classical_truth(m: KripkeModel, g: Dict[str, int], f: Formula) -> bool:
    """Tarskian truth in the single world of ``m``."""
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Atom):
        return tuple(g[a] for a in f.args) in m.extension(f.letter, 0)
    if isinstance(f, And):
        return classical_truth(m, g, f.left) and classical_truth(m, g, f.right)
    if isinstance(f, Or):
        return classical_truth(m, g, f.left) or classical_truth(m, g, f.right)
    if isinstance(f, Implies):
        return (not classical_truth(m, g, f.left)) or \
            classical_truth(m, g, f.right)
    values = (classical_truth(m, dict(g, **{f.var: d}), f.body)
              for d in m.domain(0))
    return all(values) if isinstance(f, Forall) else any(values)
