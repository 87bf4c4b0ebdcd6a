from typing import Any, Optional, Sequence, Tuple


class QLCError(Exception):

    def __init__(self, e=None):
        self.error = e

    def __str__(self):
        out = 'An error occurred in the QLC reduction toolkit'
        if self.error is None:
            return out + '.'
        else:
            return f'{out}:\n{self.error}'


class FormulaError(QLCError):

    def __str__(self):
        return 'The formula could not be processed.'


class FormulaSyntaxError(FormulaError):

    def __init__(self, line: int, column: int, detail: str = None):
        self.line = line
        self.column = column
        self.detail = detail

    def __str__(self):
        out = f'Syntax error at line {self.line}, column {self.column}'
        if self.detail is None:
            return out + '.'
        return f'{out}: {self.detail}'


class ArityMismatchError(FormulaError):

    def __init__(self, letter: str, expected: int, found: int):
        self.letter = letter
        self.expected = expected
        self.found = found

    def __str__(self):
        return (f'Predicate letter "{self.letter}" was used with arity '
                f'{self.expected} and then with arity {self.found}.')


class EvaluationError(QLCError):

    def __str__(self):
        return 'The formula could not be evaluated on the model.'


class UnboundVariableError(EvaluationError):

    def __init__(self, variable: str):
        self.variable = variable

    def __str__(self):
        return f'Free variable "{self.variable}" has no value in the assignment.'


class AssignmentDomainError(EvaluationError):
    """Raised when an assignment sends a variable outside the domain."""

    def __init__(self, variable: str, value: Any, world: int = None):
        self.variable = variable
        self.value = value
        self.world = world

    def __str__(self):
        where = ('the global domain' if self.world is None
                 else f'the domain of world {self.world}')
        return (f'Variable "{self.variable}" is assigned {self.value!r}, which '
                f'is not in {where}.')


class TilingError(QLCError):

    def __str__(self):
        return 'There was an error with a tiling.'


class TileIndexError(TilingError):

    def __init__(self, cell: Tuple[int, int], index: int, n_tiles: int):
        self.cell = cell
        self.index = index
        self.n_tiles = n_tiles

    def __str__(self):
        return (f'Cell {self.cell} refers to tile {self.index}, but the tile '
                f'set only has {self.n_tiles} types.')


class TilingCoverageError(TilingError):

    def __init__(self, required: Tuple[int, int], width: int, height: int):
        self.required = required
        self.width = width
        self.height = height

    def __str__(self):
        return (f'A {self.width}x{self.height} grid does not cover grid point '
                f'{self.required}.')


class InvalidTilingError(TilingError):

    def __init__(self, violations: Sequence):
        self.violations = list(violations)

    def __str__(self):
        first = self.violations[0] if self.violations else None
        return (f'The tiling violates {len(self.violations)} matching '
                f'constraint(s); first: {first}')


class TileSetTooSmallError(TilingError):

    def __init__(self, size: int, required: int):
        self.size = size
        self.required = required

    def __str__(self):
        return (f'The tile set has {self.size} type(s) but at least '
                f'{self.required} are required.')


class SearchLimitError(TilingError):
    """
    Raised when the window solver stops at its node limit before it has
    either found a tiling or exhausted the search.
    """

    def __init__(self, nodes: int, width: int, height: int):
        self.nodes = nodes
        self.width = width
        self.height = height

    def __str__(self):
        return (f'The search of the {self.width}x{self.height} window stopped '
                f'after {self.nodes} placements without a verdict.')


class BoundNotAttainedError(QLCError):
    """
    Raised when a minimum searched for by evaluator queries does not
    exist inside the truncated domain.
    """

    def __init__(self, function: str, k: int, bound: int):
        self.function = function
        self.k = k
        self.bound = bound

    def __str__(self):
        return (f'{self.function}({self.k}) is not attained within bound '
                f'{self.bound}; the truncation is too small for this k.')


class MachineError(QLCError):

    def __str__(self):
        return 'There was an error with a Turing machine.'


class MachineInconsistencyError(MachineError):

    def __init__(self, detail: str):
        self.detail = detail

    def __str__(self):
        return 'Internal inconsistency while running the machine: ' + self.detail


class RowConstructionError(MachineError):
    """
    Raised when a row of the machine tiling is not uniquely determined
    by the row beneath it.
    """

    def __init__(self, row: int, n_solutions: int):
        self.row = row
        self.n_solutions = n_solutions

    def __str__(self):
        state = 'stuck' if self.n_solutions == 0 else 'ambiguous'
        return f'Construction of row {self.row} is {state}.'


class GridOverflowError(QLCError):

    def __init__(self, value: int):
        self.value = value

    def __str__(self):
        return f'Grid index {self.value} does not fit in 64 bits.'


class MalformedInputError(QLCError):

    def __init__(self, path: str, detail: str, line: Optional[int] = None,
                 column: Optional[int] = None):
        self.path = path
        self.detail = detail
        self.line = line
        self.column = column

    def __str__(self):
        where = self.path
        if self.line is not None:
            where += f':{self.line}:{self.column}'
        return f'Malformed input in {where}: {self.detail}'


class UsageError(QLCError):

    def __init__(self, detail: str):
        self.detail = detail

    def __str__(self):
        return self.detail
