from typing import Dict, Optional
import logging

from lark import Lark, Transformer, v_args
from lark.exceptions import (UnexpectedCharacters, UnexpectedEOF,
                             UnexpectedInput, UnexpectedToken)

from .formula import (BOTTOM, And, Atom, Exists, Forall, Formula, Implies, Or,
                      iff, neg, subformulas)
from ..exceptions import ArityMismatchError, FormulaSyntaxError

logger = logging.getLogger(__name__)

# Precedence runs ~ > & > | > -> > <->. Implication and the connectives
# & and | nest to the right; <-> nests to the left. A quantifier body
# extends as far to the right as possible.
FORMULA_GRAMMAR = r"""
    ?start: equivalence

    ?equivalence: implication
                | equivalence "<->" implication     -> iff

    ?implication: disjunction
                | disjunction "->" implication      -> implies

    ?disjunction: conjunction
                | conjunction "|" disjunction       -> or_

    ?conjunction: unary
                | unary "&" conjunction             -> and_

    ?unary: "~" unary                               -> neg
          | "forall" NAME "." equivalence           -> forall
          | "exists" NAME "." equivalence           -> exists
          | "bot"                                   -> bottom
          | NAME "(" NAME ("," NAME)* ")"           -> atom
          | NAME                                    -> atom
          | "(" equivalence ")"

    NAME: /[A-Za-z_][A-Za-z0-9_]*'*/

    %import common.WS
    %ignore WS
"""


@v_args(inline=True)
class _ToFormula(Transformer):

    def iff(self, left, right):
        return iff(left, right)

    def implies(self, left, right):
        return Implies(left, right)

    def or_(self, left, right):
        return Or(left, right)

    def and_(self, left, right):
        return And(left, right)

    def neg(self, body):
        return neg(body)

    def forall(self, var, body):
        return Forall(str(var), body)

    def exists(self, var, body):
        return Exists(str(var), body)

    def bottom(self):
        return BOTTOM

    def atom(self, letter, *args):
        return Atom(str(letter), tuple(str(a) for a in args))


class FormulaParser(object):
    """
    LALR parser for the concrete formula syntax. ``~f`` and ``f <-> g``
    are expanded while parsing, so the returned AST only holds bottom,
    atoms, the three binary connectives and the two quantifiers.
    """

    def __init__(self):
        self.parser = Lark(FORMULA_GRAMMAR, parser='lalr',
                           transformer=_ToFormula())

    def parse(self, text: str,
              arities: Optional[Dict[str, int]] = None) -> Formula:
        try:
            f = self.parser.parse(text)
        except UnexpectedInput as e:
            raise _syntax_error(text, e) from e
        check_arities(f, arities)
        return f


def _syntax_error(text: str, e: UnexpectedInput) -> FormulaSyntaxError:
    line, column = getattr(e, 'line', -1), getattr(e, 'column', -1)
    if line is None or line < 0:
        lines = text.split('\n')
        line, column = len(lines), len(lines[-1]) + 1
    if isinstance(e, UnexpectedCharacters):
        detail = f'unexpected character {e.char!r}'
    elif isinstance(e, UnexpectedToken):
        if e.token.type == '$END':
            detail = 'unexpected end of input'
        else:
            detail = f'unexpected token {str(e.token)!r}'
    elif isinstance(e, UnexpectedEOF):
        detail = 'unexpected end of input'
    else:
        detail = None
    return FormulaSyntaxError(line, column, detail)


def check_arities(f: Formula, arities: Optional[Dict[str, int]] = None):
    """
    Raises :class:`ArityMismatchError` when a letter is used with two
    different arities, in reading order or against ``arities``.
    """
    seen = dict(arities or {})
    for node in subformulas(f):
        if isinstance(node, Atom):
            expected = seen.setdefault(node.letter, node.arity)
            if expected != node.arity:
                raise ArityMismatchError(node.letter, expected, node.arity)


_parser = None


def parse_formula(text: str,
                  arities: Optional[Dict[str, int]] = None) -> Formula:
    global _parser
    if _parser is None:
        logger.debug('Building the formula parser.')
        _parser = FormulaParser()
    return _parser.parse(text, arities)
