from random import Random
import unittest

from qlc_reduction.exceptions import TileSetTooSmallError
from qlc_reduction.reduction import (PHI, PSI, UNARY_LETTERS, build_cd,
                                     build_phi, build_phi_positive, build_psi,
                                     build_psi_positive, build_refute,
                                     conjunct_names, conjuncts, preceq,
                                     tiling_conjuncts)
from qlc_reduction.syntax import (POSITIVE_BOTTOM, Atom, Bottom, Exists,
                                  Forall, Implies, Or, PredicateLetter,
                                  count_bottoms, parse_formula, print_formula,
                                  signature_of, to_positive)
from qlc_reduction.tiles import TileSet, load_tiles
from .constants import DATA_DIR
from .utils import random_formula


def checkerboard():
    return TileSet.from_colors([('a', 'b', 'c', 'd'), ('b', 'a', 'd', 'c')])


class TestReductionShape(unittest.TestCase):

    def setUp(self):
        self.tile_sets = [load_tiles(DATA_DIR/'demo_tiles.json'),
                          load_tiles(DATA_DIR/'two_tiles.json'),
                          checkerboard()]

    def _audit(self, f, ts):
        sig = signature_of(f)
        self.assertEqual(sig.variables, ('x', 'y'))
        self.assertEqual(sig.binary_letters,
                         frozenset({PredicateLetter('lhd', 2)}))
        self.assertEqual(len(sig.unary_letters), len(ts) + 11)
        self.assertEqual(len(sig.letters), len(ts) + 12)

    def test_signature_audit(self):
        for ts in self.tile_sets:
            for f in (build_phi(ts), build_psi(ts), build_phi_positive(ts),
                      build_psi_positive(ts)):
                self._audit(f, ts)

    def test_single_tile_phi(self):
        ts = load_tiles(DATA_DIR/'single_tile.json')
        self._audit(build_phi(ts), ts)
        with self.assertRaises(TileSetTooSmallError):
            build_psi(ts)

    def test_positive_variants(self):
        for ts in self.tile_sets:
            self.assertGreater(count_bottoms(build_phi(ts)), 0)
            self.assertEqual(count_bottoms(build_phi_positive(ts)), 0)
            self.assertEqual(count_bottoms(build_psi_positive(ts)), 0)

    def test_unary_letters(self):
        letters = {p.name for p in signature_of(build_phi(checkerboard()))
                   .unary_letters}
        self.assertEqual(letters, set(UNARY_LETTERS) | {'P0', 'P1'})

    def test_color_renaming(self):
        ts = checkerboard()
        renamed = TileSet.from_colors([('1', '2', '3', '4'),
                                       ('2', '1', '4', '3')])
        self.assertEqual(build_phi(ts), build_phi(renamed))
        self.assertEqual(build_psi(ts), build_psi(renamed))

    def test_print_parse(self):
        for ts in self.tile_sets:
            f = build_psi(ts)
            self.assertEqual(parse_formula(print_formula(f)), f)
        self.assertEqual(parse_formula(print_formula(build_cd())), build_cd())


class TestConjuncts(unittest.TestCase):

    def test_names(self):
        ts = checkerboard()
        self.assertEqual(list(conjuncts(ts, PHI)), conjunct_names(PHI))
        self.assertEqual(list(conjuncts(ts, PSI)), conjunct_names(PSI))
        self.assertEqual(len(conjunct_names(PHI)), 19)
        self.assertEqual(conjunct_names(PSI)[-4:],
                         ['Agree_preceq', 'T3', 'T4', 'Refute_Q'])
        with self.assertRaises(ValueError):
            conjuncts(ts, 'chi')

    def test_text(self):
        named = conjuncts(checkerboard())
        self.assertEqual(print_formula(named['Serial_lhd']),
                         'forall x. exists y. lhd(x,y)')
        self.assertEqual(print_formula(named['EM_W']),
                         'forall x. (wall(x) | (wall(x) -> bot))')
        self.assertEqual(print_formula(build_refute()),
                         "forall x. forall y. ((lhd(x,y) & (wall(x) & "
                         "(floor(x) & Q(x)))) -> (Q'(x) | S''(y)))")

    def test_preceq_expansion(self):
        self.assertEqual(preceq('x', 'y'),
                         Implies(Atom('Q', ('y',)), Atom('Q', ('x',))))

    def test_no_forbidden_neighbors(self):
        ts = load_tiles(DATA_DIR/'two_tiles.json')
        parts = tiling_conjuncts(ts)
        self.assertEqual(count_bottoms(parts['T1']), 2)
        self.assertEqual(count_bottoms(parts['T2']), 2)
        self.assertEqual(count_bottoms(tiling_conjuncts(checkerboard())['T1']),
                         0)

    def test_phi_shape(self):
        ts = checkerboard()
        f = build_phi(ts)
        self.assertIsInstance(f, Implies)
        self.assertEqual(f.right, build_refute())


def same_skeleton(original, positive):
    """True when ``positive`` is ``original`` with each bottom replaced."""
    if isinstance(original, Bottom):
        return positive == POSITIVE_BOTTOM
    if type(original) is not type(positive):
        return False
    if isinstance(original, Atom):
        return original == positive
    if isinstance(original, (Forall, Exists)):
        if original.var != positive.var:
            return False
    return all(same_skeleton(a, b)
               for a, b in zip(original.children, positive.children))


class TestDisplayedFormulas(unittest.TestCase):

    def setUp(self):
        self.ts = checkerboard()
        self.named = conjuncts(self.ts, PSI)

    def test_diag_n(self):
        self.assertEqual(print_formula(self.named['Diag_N']),
                         'forall x. forall y. (lhd(x,y) -> ((Q(x) -> next(y)) '
                         '& (next(y) -> Q(x))))')

    def test_start_lhd(self):
        self.assertEqual(print_formula(self.named['Start_lhd']),
                         'forall x. forall y. ((lhd(x,y) & (wall(x) & '
                         'floor(x))) -> right(y))')

    def test_move_2_letters(self):
        body = self.named['Move_2'].body.body
        self.assertIsInstance(body, Implies)
        self.assertEqual(set(signature_of(body.left).arities()),
                         {'wall', 'right', 'Q', "Q'", "S''"})
        self.assertEqual(set(signature_of(body.right).arities()),
                         {'lhd', 'wall', 'next', 'above', 'Q', "S'"})

    def test_t0_two_tiles(self):
        self.assertEqual(print_formula(self.named['T0']),
                         'forall x. ((P0(x) & (P1(x) -> bot)) | '
                         '(P1(x) & (P0(x) -> bot)))')

    def test_psi_pieces(self):
        f = build_psi(self.ts)
        agree = f.left.left.right
        self.assertEqual(agree, self.named['Agree_preceq'])
        self.assertEqual(print_formula(agree),
                         'forall x. forall y. (lhd(x,y) -> (Q(y) -> Q(x)))')
        refute_q = Exists('x', Implies(Atom('Q', ('x',)),
                                       Atom("Q'", ('x',))))
        self.assertEqual(f.right, Or(build_refute(), refute_q))

    def test_positive_em_w(self):
        self.assertEqual(print_formula(to_positive(self.named['EM_W'])),
                         "forall x. (wall(x) | (wall(x) -> forall x. Q'(x)))")

    def test_positive_builders(self):
        for ts in (self.ts, load_tiles(DATA_DIR/'demo_tiles.json')):
            self.assertEqual(build_phi_positive(ts),
                             to_positive(build_phi(ts)))
            self.assertEqual(build_psi_positive(ts),
                             to_positive(build_psi(ts)))

    def test_positive_keeps_skeleton(self):
        extra = PredicateLetter("Q'", 1)
        formulas = [build_phi(self.ts), build_psi(self.ts)]
        rng = Random(31)
        formulas.extend(random_formula(rng, depth=rng.randint(0, 6))
                        for _ in range(300))
        for f in formulas:
            positive = to_positive(f)
            self.assertTrue(same_skeleton(f, positive), str(f))
            self.assertLessEqual(signature_of(positive).letters,
                                 signature_of(f).letters | {extra})
            self.assertEqual(count_bottoms(positive), 0)


if __name__ == '__main__':
    unittest.main()
