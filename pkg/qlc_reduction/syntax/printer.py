from .formula import (And, Atom, Bottom, Exists, Forall, Formula, Implies, Or,
                      _Quantifier)

_OPERATORS = {And: '&', Or: '|', Implies: '->'}
_QUANTIFIERS = {Forall: 'forall', Exists: 'exists'}


def print_formula(f: Formula) -> str:
    """
    Renders the canonical ASCII text of a formula. Binary connectives
    are always parenthesized, negation and equivalence are never
    reintroduced, and a quantifier standing as the left operand of a
    connective is wrapped in parentheses so that its scope does not
    swallow the right operand when read back.
    """
    if isinstance(f, Bottom):
        return 'bot'
    if isinstance(f, Atom):
        if not f.args:
            return f.letter
        return f'{f.letter}({",".join(f.args)})'
    if isinstance(f, _Quantifier):
        return f'{_QUANTIFIERS[type(f)]} {f.var}. {print_formula(f.body)}'
    left = print_formula(f.left)
    if isinstance(f.left, _Quantifier):
        left = f'({left})'
    return f'({left} {_OPERATORS[type(f)]} {print_formula(f.right)})'
