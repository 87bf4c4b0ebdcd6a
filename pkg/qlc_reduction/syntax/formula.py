from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, Sequence, Tuple


# Keywords of the text notation; they cannot name letters or variables.
RESERVED_WORDS = frozenset({'bot', 'forall', 'exists'})


def _check_name(name: str, what: str):
    if not name:
        raise ValueError(f'A {what} must have a nonempty name.')
    if name in RESERVED_WORDS:
        raise ValueError(f'"{name}" is reserved and cannot be used as a '
                         f'{what}.')


class Formula(object):
    """Base class of every node of the formula AST."""

    __slots__ = ()

    @property
    def children(self) -> Tuple['Formula', ...]:
        return ()

    def __str__(self):
        from .printer import print_formula
        return print_formula(self)


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Atom(Formula):
    letter: str
    args: Tuple[str, ...] = ()

    def __post_init__(self):
        _check_name(self.letter, 'predicate letter')
        object.__setattr__(self, 'args', tuple(self.args))
        for v in self.args:
            _check_name(v, 'variable')

    @property
    def arity(self) -> int:
        return len(self.args)


@dataclass(frozen=True)
class _Binary(Formula):
    left: Formula
    right: Formula

    @property
    def children(self) -> Tuple[Formula, ...]:
        return self.left, self.right


class And(_Binary):
    pass


class Or(_Binary):
    pass


class Implies(_Binary):
    pass


@dataclass(frozen=True)
class _Quantifier(Formula):
    var: str
    body: Formula

    def __post_init__(self):
        _check_name(self.var, 'variable')

    @property
    def children(self) -> Tuple[Formula, ...]:
        return self.body,


class Forall(_Quantifier):
    pass


class Exists(_Quantifier):
    pass


@dataclass(frozen=True, order=True)
class PredicateLetter(object):
    name: str
    arity: int

    def __str__(self):
        return f'{self.name}/{self.arity}'


@dataclass(frozen=True)
class Signature(object):
    letters: FrozenSet[PredicateLetter]
    variables: Tuple[str, ...]

    @property
    def binary_letters(self) -> FrozenSet[PredicateLetter]:
        return frozenset(p for p in self.letters if p.arity == 2)

    @property
    def unary_letters(self) -> FrozenSet[PredicateLetter]:
        return frozenset(p for p in self.letters if p.arity == 1)

    @property
    def is_two_variable(self) -> bool:
        return len(self.variables) <= 2

    def arities(self) -> Dict[str, int]:
        return {p.name: p.arity for p in self.letters}


BOTTOM = Bottom()


def neg(f: Formula) -> Formula:
    return Implies(f, BOTTOM)


def iff(f: Formula, g: Formula) -> Formula:
    return And(Implies(f, g), Implies(g, f))


def _right_nested(cls, formulas: Sequence[Formula]) -> Formula:
    out = formulas[-1]
    for f in reversed(formulas[:-1]):
        out = cls(f, out)
    return out


def conj(*formulas: Formula) -> Formula:
    """Right-nested conjunction of one or more formulas."""
    if not formulas:
        raise ValueError('An empty conjunction has no formula.')
    return _right_nested(And, formulas)


def disj(*formulas: Formula, allow_empty: bool = False) -> Formula:
    """
    Right-nested disjunction of the arguments. With ``allow_empty`` an
    empty argument list yields :class:`Bottom`.
    """
    if not formulas:
        if allow_empty:
            return BOTTOM
        raise ValueError('An empty disjunction has no formula.')
    return _right_nested(Or, formulas)


def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal, left operands first."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children))


def free_variables(f: Formula) -> Tuple[str, ...]:
    seen = []

    def walk(node: Formula, bound: FrozenSet[str]):
        if isinstance(node, Atom):
            for v in node.args:
                if v not in bound and v not in seen:
                    seen.append(v)
        elif isinstance(node, _Quantifier):
            walk(node.body, bound | {node.var})
        else:
            for child in node.children:
                walk(child, bound)

    walk(f, frozenset())
    return tuple(seen)


def count_bottoms(f: Formula) -> int:
    return sum(1 for node in subformulas(f) if isinstance(node, Bottom))


def depth(f: Formula) -> int:
    if not f.children:
        return 0
    return 1 + max(depth(child) for child in f.children)


def signature_of(f: Formula) -> Signature:
    letters = set()
    variables = set()
    for node in subformulas(f):
        if isinstance(node, Atom):
            letters.add(PredicateLetter(node.letter, node.arity))
            variables.update(node.args)
        elif isinstance(node, _Quantifier):
            variables.add(node.var)
    return Signature(frozenset(letters), tuple(sorted(variables)))


POSITIVE_BOTTOM = Forall('x', Atom("Q'", ('x',)))


def to_positive(f: Formula) -> Formula:
    """Replaces every occurrence of bottom by ``forall x. Q'(x)``."""
    if isinstance(f, Bottom):
        return POSITIVE_BOTTOM
    if isinstance(f, Atom):
        return f
    if isinstance(f, _Binary):
        return type(f)(to_positive(f.left), to_positive(f.right))
    return type(f)(f.var, to_positive(f.body))
