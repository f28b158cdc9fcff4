import logging
import unittest

from dynpdr.aiger.aiger_io import read_aiger_file
from dynpdr.aiger.aiger_circuit import to_transition_system
from dynpdr.bench.families import counter, corpus, token_ring
from dynpdr.ic3.engine import Ic3Engine, check
from dynpdr.ic3.strategy import StrategyConfig, StrategyKind
from dynpdr.ic3.verdict import VerdictKind, UnknownReason
from dynpdr.logging.dynpdr_logger import get_logger, set_logger
from dynpdr.oracle.certify import check_invariant, replay_trace
from dynpdr.oracle.reachability import StateSet, brute_force_reachable, reachable_within
from dynpdr.pluggable import PluggableRegistry, PluggableType
from dynpdr.sat.query_trace import QueryTrace

from sat_context_test import UndecidedBackend

STRATEGIES = [StrategyConfig(kind=StrategyKind.Standard), StrategyConfig(kind=StrategyKind.Ctg),
              StrategyConfig(kind=StrategyKind.Exctg), StrategyConfig(kind=StrategyKind.Dynamic)]


class EngineTest(unittest.TestCase):

    def testToggleIsUnsafe(self):
        ts = to_transition_system(read_aiger_file("test/models/toggle.aag"))
        for cfg in STRATEGIES:
            verdict = check(ts, cfg)
            assert verdict.kind == VerdictKind.Unsafe
            assert verdict.kind.exit_code == 1
            assert len(verdict.trace) == 2
            assert replay_trace(ts, verdict.trace)

    def testBadInitialStateIsDepthZero(self):
        ts = to_transition_system(counter(bits=2, wrap=3, bad_value=0))
        verdict = check(ts, StrategyConfig())
        assert verdict.unsafe
        assert verdict.depth == 0
        assert len(verdict.trace) == 1
        assert replay_trace(ts, verdict.trace)

    def testConstantFalseIsSafe(self):
        ts = to_transition_system(read_aiger_file("test/models/constant_false.aag"))
        verdict = check(ts, StrategyConfig())
        assert verdict.safe
        assert verdict.depth == 1
        assert verdict.invariant == []
        assert check_invariant(ts, verdict.invariant)

    def testCounterIsSafe(self):
        ts = to_transition_system(counter(bits=3, wrap=4, bad_value=5))
        for cfg in STRATEGIES:
            verdict = check(ts, cfg, debug=True)
            assert verdict.safe, cfg
            assert check_invariant(ts, verdict.invariant)

    def testHandshakeIsSafe(self):
        ts = to_transition_system(read_aiger_file("test/models/handshake.aag"))
        verdict = check(ts, StrategyConfig(), check_frames=True)
        assert verdict.safe
        assert verdict.kind.exit_code == 0
        assert check_invariant(ts, verdict.invariant)

    def testAgreesWithExplicitSearch(self):
        for name, circuit in corpus(count=200, seed=11):
            ts = to_transition_system(circuit)
            expected = brute_force_reachable(ts)
            for cfg in STRATEGIES:
                verdict = check(ts, cfg, debug=True)
                assert verdict.kind == expected.verdict, f'{name} {cfg}'
                if verdict.safe:
                    assert check_invariant(ts, verdict.invariant), name
                    assert expected.reachable.issubset(StateSet(ts).satisfies(verdict.invariant)), name
                else:
                    assert replay_trace(ts, verdict.trace), name
                    assert len(verdict.trace) - 1 >= expected.depth, name

    def testFramesOverApproximateReachability(self):
        for name, circuit in corpus(count=40, seed=13):
            ts = to_transition_system(circuit)
            expected = brute_force_reachable(ts)
            engine = Ic3Engine(ts=ts, cfg=StrategyConfig(), check_frames=True)
            engine.check()
            universe = StateSet(ts)
            for i in range(1, engine.frames.k + 1):
                within = reachable_within(expected, ts, i)
                assert within.issubset(universe.satisfies(engine.frames.frame_clauses(i))), f'{name} F_{i}'

    def testActivityReachesGeneralization(self):
        for name, circuit in corpus(count=40, seed=17):
            engine = Ic3Engine(ts=to_transition_system(circuit), cfg=StrategyConfig())
            engine.check()
            for event in engine.events:
                assert event.sact == event.successor_activity, name

    def testSeededRunsAreReproducible(self):
        ts = to_transition_system(token_ring(length=6, safe=True))
        digests = list()
        for _ in range(2):
            trace = QueryTrace(keep_lines=False)
            verdict = check(ts, StrategyConfig(), seed=7, trace=trace)
            assert verdict.safe
            digests.append(trace.digest())
        assert digests[0] == digests[1]

    def testStatisticsAreFilled(self):
        ts = to_transition_system(token_ring(length=6, safe=True))
        verdict = check(ts, StrategyConfig(kind=StrategyKind.Exctg))
        stats = verdict.stats
        assert stats['queries'] == stats['relind_queries'] + stats['bad_queries']
        assert stats['lemmas'] > 0
        assert stats['frames'] >= verdict.depth

    def testExpiredDeadlineGivesTimeout(self):
        ts = to_transition_system(token_ring(length=6, safe=True))
        verdict = check(ts, StrategyConfig(), time_limit=-1.0)
        assert verdict.kind == VerdictKind.Unknown
        assert verdict.reason == UnknownReason.Timeout
        assert verdict.kind.exit_code == 2

    def testFrameBound(self):
        ts = to_transition_system(counter(bits=4, wrap=10, bad_value=12))
        verdict = check(ts, StrategyConfig(kind=StrategyKind.Standard), max_frames=1)
        assert verdict.kind == VerdictKind.Unknown
        assert verdict.reason == UnknownReason.FrameBound

    def testUndecidedSolverGivesUnknown(self):
        ts = to_transition_system(read_aiger_file("test/models/toggle.aag"))
        r = PluggableRegistry()
        r.register_pluggable(t=PluggableType.SatBackend, p=UndecidedBackend)
        try:
            verdict = check(ts, StrategyConfig())
            assert verdict.kind == VerdictKind.Unknown
            assert verdict.reason == UnknownReason.SolverFailure
        finally:
            r.unregister_pluggable(t=PluggableType.SatBackend)

    def testUnknownBackendGivesUnknown(self):
        ts = to_transition_system(read_aiger_file("test/models/toggle.aag"))
        verdict = check(ts, StrategyConfig(), backend='no-such-solver')
        assert verdict.kind == VerdictKind.Unknown
        assert verdict.reason == UnknownReason.SolverFailure

    def testPackageLoggerReceivesEngineOutput(self):
        ts = to_transition_system(read_aiger_file("test/models/toggle.aag"))
        default = get_logger()
        set_logger(logging.getLogger('dynpdr.engine_test'))
        try:
            with self.assertLogs('dynpdr.engine_test', level='INFO') as cm:
                check(ts, StrategyConfig())
            assert any('Counterexample of length 2' in line for line in cm.output)
        finally:
            set_logger(default)


if __name__ == "__main__":
    unittest.main()
