import unittest

from qlc_reduction import grid
from qlc_reduction.countermodel import (BOUNDARY, INTERIOR, PARTIAL,
                                        build_countermodel, classify,
                                        conjunct_report, extract_tiling,
                                        positive_bottom_worlds, preceq_table,
                                        required_size, right_prime,
                                        solve_for_size, sublemma_table,
                                        window_for_size)
from qlc_reduction.exceptions import (BoundNotAttainedError,
                                      InvalidTilingError, TilingCoverageError)
from qlc_reduction.reduction import PHI, PSI
from qlc_reduction.semantics import Evaluator, Witness, validate_model
from qlc_reduction.tiles import TileGrid, load_tiles
from qlc_reduction.turing import build_window, load_machine, tm_to_tiles
from .constants import DATA_DIR


class TestSizes(unittest.TestCase):

    def test_required_size(self):
        self.assertEqual(required_size(12), 28)
        self.assertEqual(required_size(0), grid.above(2) + 3)

    def test_window(self):
        self.assertEqual(window_for_size(28), (8, 8))
        self.assertEqual(window_for_size(25), (7, 7))
        self.assertEqual(window_for_size(0), (1, 1))

    def test_classify(self):
        self.assertEqual(classify(Witness(0, {'x': 28}), 28, 3), BOUNDARY)
        self.assertEqual(classify(Witness(25, {}), 28, 3), BOUNDARY)
        self.assertEqual(classify(Witness(3, {'x': 4}), 28, 3), INTERIOR)
        self.assertEqual(classify(None, 28, 3), INTERIOR)


class TestTruncatedModel(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.ts = load_tiles(DATA_DIR/'demo_tiles.json')
        cls.size = required_size(12)
        cls.tiling = solve_for_size(cls.ts, cls.size)
        cls.m = build_countermodel(cls.ts, cls.tiling, cls.size)
        cls.ev = Evaluator(cls.m.model)

    def test_model_is_valid(self):
        report = validate_model(self.m.model, linear=True,
                                constant_domains=True)
        self.assertTrue(report.is_valid)

    def test_fronts(self):
        model = self.m.model
        self.assertEqual(max(a for (a,) in model.extension('S', 3)), 7)
        self.assertEqual(max(a for (a,) in model.extension('Q', 3)), 3)
        self.assertNotIn((1,), model.extension('wall', 0))
        self.assertIn((2,), model.extension('wall', 0))
        self.assertIn((27, 28), model.extension('lhd', 5))

    def test_right_and_above_are_defined(self):
        for row in sublemma_table(self.m, 12, self.ev):
            self.assertEqual(row['right_prime'], row['right'], row)
            self.assertEqual(row['above_prime'], row['above'], row)
            self.assertEqual(row['wall_prime'], row['wall'], row)

    def test_bound_not_attained(self):
        with self.assertRaises(BoundNotAttainedError):
            right_prime(self.m, 27, self.ev)
        with self.assertRaises(BoundNotAttainedError):
            right_prime(self.m, 29, self.ev)

    def test_phi_report(self):
        report = conjunct_report(self.m, 3, PHI, evaluator=self.ev)
        self.assertEqual(report.status, PARTIAL)
        failed = [f for f in report.findings if not f.ok]
        self.assertEqual([f.name for f in failed], ['Serial_lhd'])
        self.assertEqual(failed[0].classification, BOUNDARY)
        self.assertEqual(failed[0].witness.assignment, {'x': self.size})
        self.assertFalse(report['Refute'].value)
        self.assertTrue(report['Refute'].ok)

    def test_workers_agree(self):
        one = conjunct_report(self.m, 3, PHI, workers=1)
        two = conjunct_report(self.m, 3, PHI, workers=2)
        self.assertEqual(one.to_dict(), two.to_dict())

    def test_psi_report(self):
        report = conjunct_report(self.m, 3, PSI, evaluator=self.ev)
        self.assertTrue(report.preceq_agrees)
        self.assertFalse(report['Refute_Q'].value)
        self.assertTrue(report['Refute_Q'].ok)
        self.assertTrue(report['T3'].ok)
        self.assertTrue(report['Agree_preceq'].ok)
        # At the last world every pair is ordered by preceq, so the
        # origin, which carries t_0, would have to carry t_1.
        self.assertFalse(report['T4'].value)

    def test_preceq_table(self):
        table = preceq_table(self.m, self.ev)
        self.assertEqual(len(table), (self.size + 1) ** 2)
        self.assertTrue(all(forced == ordered
                            for _, _, forced, ordered in table))

    def test_positive_bottom(self):
        self.assertEqual(positive_bottom_worlds(self.m, self.ev), [])

    def test_extract_tiling(self):
        self.assertEqual(extract_tiling(self.m, 4, 4, self.ev),
                         self.tiling.restrict(4, 4))
        with self.assertRaises(TilingCoverageError):
            extract_tiling(self.m, 8, 8, self.ev)


class TestOtherSizes(unittest.TestCase):

    def test_size_25(self):
        ts = load_tiles(DATA_DIR/'demo_tiles.json')
        g = solve_for_size(ts, 25)
        self.assertEqual((g.width, g.height), (7, 7))
        m = build_countermodel(ts, g, 25)
        report = conjunct_report(m, 3, PHI)
        self.assertEqual(report.status, PARTIAL)
        self.assertTrue(all(f.classification == BOUNDARY
                            for f in report.findings if not f.ok))
        self.assertFalse(report['Refute'].value)

    def test_doubling_keeps_truth_values(self):
        ts = load_tiles(DATA_DIR/'demo_tiles.json')
        values = []
        for size in (25, 50):
            m = build_countermodel(ts, solve_for_size(ts, size), size)
            report = conjunct_report(m, 3, PHI)
            values.append({f.name: f.value for f in report.findings})
        self.assertEqual(values[0], values[1])
        self.assertFalse(values[1]['Serial_lhd'])
        self.assertFalse(values[1]['Refute'])

    def test_size_zero(self):
        ts = load_tiles(DATA_DIR/'demo_tiles.json')
        m = build_countermodel(ts, solve_for_size(ts, 0), 0)
        self.assertEqual(m.model.n_worlds, 1)
        self.assertEqual(m.model.extension('lhd', 0), frozenset())

    def test_machine_tiling(self):
        machine = load_machine(DATA_DIR/'three_state.json')
        ts = tm_to_tiles(machine)
        g = build_window(machine, 8, width=8)
        m = build_countermodel(ts, g, 28)
        report = conjunct_report(m, 3, PHI)
        self.assertEqual(report.status, PARTIAL)

    def test_rejects_bad_tilings(self):
        ts = load_tiles(DATA_DIR/'demo_tiles.json')
        with self.assertRaises(TilingCoverageError):
            build_countermodel(ts, TileGrid.from_rows([[0, 2]]), 5)
        bad = TileGrid.from_rows([[0, 0], [0, 0]])
        with self.assertRaises(InvalidTilingError):
            build_countermodel(ts, bad, 2)


if __name__ == '__main__':
    unittest.main()
