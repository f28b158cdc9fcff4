import unittest

from dynpdr.aiger.aiger_io import read_aiger_file
from dynpdr.aiger.aiger_circuit import to_transition_system
from dynpdr.ic3.engine import check
from dynpdr.ic3.strategy import StrategyConfig
from dynpdr.pluggable import PluggableType, PluggableRegistry, PluggableException, SatBackendPluggable
from dynpdr.sat.pysat_solver import PySatSolver


class CountingBackend:
    """
    Delegates to python-sat and counts the solvers it creates
    """
    def __init__(self, counts, backend):
        self.counts = counts
        self.backend = backend

    def plug_make_solver(self, *, name, clauses, seed):
        self.counts.append(name)
        return PySatSolver(name=self.backend, clauses=clauses)


class NoMethods:

    def blah(self):
        pass


class TestPluggable(unittest.TestCase):

    def tearDown(self):
        PluggableRegistry().unregister_pluggable(t=PluggableType.SatBackend)

    def testRegistrySingleton(self):
        r = PluggableRegistry()
        r1 = PluggableRegistry()

        assert r.instance is r1.instance

    def testEmptyRegistered(self):
        r = PluggableRegistry()

        assert r.pluggable_registered(t=PluggableType.SatBackend) is False

    def testPluggableMethods(self):
        assert SatBackendPluggable.get_pluggable_methods(detail=False) == ['plug_make_solver']
        name, signature, doc = SatBackendPluggable.get_pluggable_methods()[0]
        assert 'clauses' in signature

    def testRegistrationWithParams(self):
        r = PluggableRegistry()
        counts = list()
        r.register_pluggable(t=PluggableType.SatBackend, p=CountingBackend, counts=counts, backend='glucose4')

        assert r.pluggable_registered(t=PluggableType.SatBackend) is True
        assert "plug_make_solver" in r.get_implemented_methods(t=PluggableType.SatBackend)

        c = r.get_method_callable(t=PluggableType.SatBackend, method='plug_make_solver')
        assert callable(c) is True

        ts = to_transition_system(read_aiger_file("test/models/handshake.aag"))
        verdict = check(ts, StrategyConfig())
        assert verdict.safe
        # one solver per frame context, named by the configured backend
        assert len(counts) >= 2
        assert set(counts) == {'minisat22'}

    def testDoubleRegistration(self):
        r = PluggableRegistry()
        r.register_pluggable(t=PluggableType.SatBackend, p=CountingBackend, counts=list(), backend='minisat22')
        with self.assertRaises(PluggableException):
            r.register_pluggable(t=PluggableType.SatBackend, p=CountingBackend, counts=list(),
                                 backend='minisat22')

    def testNoPluggableMethods(self):
        r = PluggableRegistry()
        with self.assertRaises(PluggableException):
            r.register_pluggable(t=PluggableType.SatBackend, p=NoMethods)
        assert r.pluggable_registered(t=PluggableType.SatBackend) is False


if __name__ == "__main__":

    unittest.main()
