"""
The formula language: an AST of frozen dataclasses, a parser for the
concrete text syntax and the canonical printer.

Classes:
    - Formula, Bottom, Atom, And, Or, Implies, Forall, Exists
    - PredicateLetter, Signature
    - FormulaParser
"""

from .formula import (BOTTOM, POSITIVE_BOTTOM, And, Atom, Bottom, Exists,
                      Forall, Formula, Implies, Or, PredicateLetter, Signature,
                      conj, count_bottoms, depth, disj, free_variables, iff,
                      neg, signature_of, subformulas, to_positive)
from .parser import FormulaParser, check_arities, parse_formula
from .printer import print_formula
