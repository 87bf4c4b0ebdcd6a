from random import Random
import unittest

from qlc_reduction.exceptions import ArityMismatchError, FormulaSyntaxError
from qlc_reduction.syntax import (BOTTOM, POSITIVE_BOTTOM, And, Atom, Exists,
                                  Forall, Implies, Or, PredicateLetter, conj,
                                  count_bottoms, depth, disj, free_variables,
                                  iff, neg, parse_formula, print_formula,
                                  signature_of, subformulas, to_positive)
from .utils import random_formula


def P(v):
    return Atom('P', (v,))


def R(a, b):
    return Atom('R', (a, b))


p, q, r = Atom('p'), Atom('q'), Atom('r')


class TestParser(unittest.TestCase):

    def test_quantifiers(self):
        f = parse_formula('forall x. (P(x) -> exists y. R(x,y))')
        self.assertEqual(f, Forall('x', Implies(P('x'),
                                                Exists('y', R('x', 'y')))))

    def test_sugar(self):
        self.assertEqual(parse_formula('~P(x)'), neg(P('x')))
        self.assertEqual(parse_formula('~P(x)'), Implies(P('x'), BOTTOM))
        self.assertEqual(parse_formula('p <-> q'), iff(p, q))
        self.assertEqual(parse_formula('bot'), BOTTOM)

    def test_precedence(self):
        self.assertEqual(parse_formula('p & q | r'), Or(And(p, q), r))
        self.assertEqual(parse_formula('p | q & r'), Or(p, And(q, r)))
        self.assertEqual(parse_formula('p -> q -> r'),
                         Implies(p, Implies(q, r)))
        self.assertEqual(parse_formula('p & q & r'), And(p, And(q, r)))
        self.assertEqual(parse_formula('~p & q'), And(neg(p), q))

    def test_quantifier_scope(self):
        self.assertEqual(parse_formula('forall x. P(x) & q'),
                         Forall('x', And(P('x'), q)))
        self.assertEqual(parse_formula('(forall x. P(x)) & q'),
                         And(Forall('x', P('x')), q))

    def test_primed_letters(self):
        f = parse_formula("Q(x) -> Q'(x) | S''(y)")
        self.assertEqual(f, Implies(Atom('Q', ('x',)),
                                    Or(Atom("Q'", ('x',)),
                                       Atom("S''", ('y',)))))

    def test_syntax_error_position(self):
        with self.assertRaises(FormulaSyntaxError) as cm:
            parse_formula('P(x) $ Q(x)')
        self.assertEqual(cm.exception.line, 1)
        self.assertEqual(cm.exception.column, 6)

    def test_unexpected_end(self):
        with self.assertRaises(FormulaSyntaxError) as cm:
            parse_formula('P(x) &')
        self.assertEqual(cm.exception.line, 1)

    def test_arity_mismatch(self):
        with self.assertRaises(ArityMismatchError) as cm:
            parse_formula('P(x) & P(x,y)')
        self.assertEqual((cm.exception.letter, cm.exception.expected,
                          cm.exception.found), ('P', 1, 2))
        with self.assertRaises(ArityMismatchError):
            parse_formula('P(x)', arities={'P': 2})


class TestPrinter(unittest.TestCase):

    def test_canonical_text(self):
        f = Forall('x', Implies(P('x'), BOTTOM))
        self.assertEqual(print_formula(f), 'forall x. (P(x) -> bot)')
        self.assertEqual(print_formula(And(p, Or(q, r))), '(p & (q | r))')
        self.assertEqual(str(R('x', 'y')), 'R(x,y)')

    def test_quantified_left_operand(self):
        f = And(Forall('x', P('x')), q)
        self.assertEqual(print_formula(f), '((forall x. P(x)) & q)')
        self.assertEqual(parse_formula(print_formula(f)), f)

    def test_keywords_are_not_names(self):
        for word in ('bot', 'forall', 'exists'):
            with self.assertRaises(ValueError):
                Atom(word)
            with self.assertRaises(ValueError):
                Atom(word, ('x',))
            with self.assertRaises(ValueError):
                Atom('P', (word,))
            with self.assertRaises(ValueError):
                Forall(word, P('x'))
            with self.assertRaises(ValueError):
                Exists(word, P('x'))
        f = Forall('bottom', Atom('forall_', ('exists2',)))
        self.assertEqual(parse_formula(print_formula(f)), f)

    def test_random_round_trip(self):
        rng = Random(20240611)
        for _ in range(500):
            f = random_formula(rng, depth=rng.randint(0, 6))
            self.assertEqual(parse_formula(print_formula(f)), f)


class TestFormulaHelpers(unittest.TestCase):

    def test_free_variables(self):
        f = And(P('y'), Forall('x', R('x', 'y')))
        self.assertEqual(free_variables(f), ('y',))
        self.assertEqual(free_variables(Exists('x', P('x'))), ())
        self.assertEqual(free_variables(And(R('y', 'x'), P('x'))), ('y', 'x'))

    def test_counts(self):
        f = parse_formula('~p | (q -> bot)')
        self.assertEqual(count_bottoms(f), 2)
        self.assertEqual(depth(p), 0)
        self.assertEqual(depth(f), 2)
        self.assertEqual(len(list(subformulas(f))), 7)

    def test_nesting(self):
        self.assertEqual(conj(p, q, r), And(p, And(q, r)))
        self.assertEqual(disj(p), p)
        self.assertEqual(disj(allow_empty=True), BOTTOM)
        with self.assertRaises(ValueError):
            conj()
        with self.assertRaises(ValueError):
            disj()

    def test_to_positive(self):
        f = to_positive(parse_formula('forall x. (~P(x) | bot)'))
        self.assertEqual(count_bottoms(f), 0)
        self.assertEqual(count_bottoms(to_positive(BOTTOM)), 0)
        self.assertEqual(to_positive(BOTTOM), POSITIVE_BOTTOM)

    def test_signature(self):
        sig = signature_of(parse_formula('forall x. exists y. (R(x,y) & P(x) '
                                         '& p)'))
        self.assertEqual(sig.variables, ('x', 'y'))
        self.assertEqual(sig.binary_letters,
                         frozenset({PredicateLetter('R', 2)}))
        self.assertEqual(sig.unary_letters,
                         frozenset({PredicateLetter('P', 1)}))
        self.assertTrue(sig.is_two_variable)
        self.assertEqual(sig.arities(), {'R': 2, 'P': 1, 'p': 0})


if __name__ == '__main__':
    unittest.main()
