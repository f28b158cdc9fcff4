import os
import tempfile
import unittest
from unittest import mock

from dynpdr.config import deep_merge, load_config, strategy_from_config, backend_from_config, ConfigException, \
    SEED_ENV
from dynpdr.ic3.strategy import StrategyKind, LiteralOrder, StrategyConfigException


class ConfigTest(unittest.TestCase):

    def setUp(self):
        self.dir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.dir.cleanup()

    def _write(self, text):
        name = os.path.join(self.dir.name, 'config.yaml')
        with open(name, 'w') as f:
            f.write(text)
        return name

    def testDeepMerge(self):
        base = {'a': {'x': 1, 'y': 2}, 'b': 3}
        merged = deep_merge(base, {'a': {'y': 5}, 'c': 4})
        assert merged == {'a': {'x': 1, 'y': 5}, 'b': 3, 'c': 4}
        assert base['a']['y'] == 2

    @mock.patch.dict(os.environ, {}, clear=False)
    def testDefaults(self):
        os.environ.pop(SEED_ENV, None)
        config = load_config()
        assert config['strategy']['kind'] == 'dynamic'
        assert config['solver']['backend'] == 'minisat22'
        assert config['bench']['time_limit'] == 60
        cfg = strategy_from_config(config['strategy'])
        assert cfg.kind == StrategyKind.Dynamic
        assert (cfg.ctg_th, cfg.exctg_th) == (10, 40)

    @mock.patch.dict(os.environ, {}, clear=False)
    def testUserFileOverrides(self):
        os.environ.pop(SEED_ENV, None)
        name = self._write('strategy:\n  kind: exctg\n  literal_order: activity\nsolver:\n  seed: 3\n')
        config = load_config(name)
        cfg = strategy_from_config(config['strategy'])
        assert cfg.kind == StrategyKind.Exctg
        assert cfg.literal_order == LiteralOrder.Activity
        assert cfg.exctg_limit == 5
        assert config['solver']['seed'] == 3
        assert config['solver']['backend'] == 'minisat22'

    def testSeedFromEnvironment(self):
        name = self._write('solver:\n  seed: 3\n')
        with mock.patch.dict(os.environ, {SEED_ENV: '11'}):
            assert load_config(name)['solver']['seed'] == 11
        with mock.patch.dict(os.environ, {SEED_ENV: 'eleven'}):
            with self.assertRaises(ConfigException):
                load_config()

    def testBadFiles(self):
        with self.assertRaises(ConfigException):
            load_config(os.path.join(self.dir.name, 'missing.yaml'))
        with self.assertRaises(ConfigException):
            load_config(self._write('- just\n- a list\n'))
        with self.assertRaises(ConfigException):
            load_config(self._write('strategy: [unclosed\n'))
        # an empty file keeps the defaults
        assert load_config(self._write(''))['strategy']['ctg_max'] == 3

    def testBadStrategySection(self):
        section = dict(load_config()['strategy'])
        section['kind'] = 'bogus'
        with self.assertRaises(ConfigException):
            strategy_from_config(section)
        section['kind'] = 'ctg'
        section['literal_order'] = 'sideways'
        with self.assertRaises(ConfigException):
            strategy_from_config(section)
        section['literal_order'] = 'reverse'
        section['ctg_max'] = 0
        with self.assertRaises(StrategyConfigException):
            strategy_from_config(section)

    def testBackendSection(self):
        section = dict(load_config()['solver'])
        assert backend_from_config(section) == 'minisat22'
        section['backend'] = 'no-such-solver'
        with self.assertRaises(ConfigException):
            backend_from_config(section)


if __name__ == "__main__":
    unittest.main()
