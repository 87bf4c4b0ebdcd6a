import os
import unittest
from unittest import mock

from qlc_reduction.settings import Settings
from .constants import DATA_DIR


class TestSettings(unittest.TestCase):

    def test_default(self):
        s = Settings.default()
        self.assertEqual(s.margin, 3)
        self.assertTrue(s.memoize)
        self.assertEqual(s['workers'], 1)
        self.assertIsNone(s['nothing'])

    def test_from_json(self):
        s = Settings.from_json(DATA_DIR/'settings.json')
        self.assertEqual((s.margin, s.workers), (2, 2))
        self.assertEqual(s.sublemma_padding, 3)
        with open(DATA_DIR/'settings.json', 'r') as f:
            self.assertEqual(Settings.from_json(f).to_dict(), s.to_dict())

    def test_from_environment(self):
        path = str(DATA_DIR/'settings.json')
        with mock.patch.dict(os.environ, {'QLC_SETTINGS': path}):
            self.assertEqual(Settings.from_environment().margin, 2)
        with mock.patch.dict(os.environ, {'QLC_SETTINGS': 'nowhere.json'}):
            self.assertEqual(Settings.from_environment().margin, 3)


if __name__ == '__main__':
    unittest.main()
