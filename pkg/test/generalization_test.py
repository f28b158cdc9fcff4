import unittest

from dynpdr.aiger.aiger_circuit import to_transition_system
from dynpdr.bench.families import CircuitBuilder, corpus, ladder
from dynpdr.ic3.engine import Ic3Engine
from dynpdr.ic3.frames import FrameSequence
from dynpdr.ic3.generalization import Generalizer
from dynpdr.ic3.strategy import StrategyConfig, StrategyKind, LiteralOrder, ExctgBudget
from dynpdr.logging.stats_collector import StatsCollector
from dynpdr.logic.literals import Cube, make_lit
from dynpdr.sat.query_trace import QueryTrace
from dynpdr.sat.sat_context import SatContexts


def stuck_latch():
    """
    x0 keeps its reset value 0 and is the bad output, x1 and x2 load free inputs
    """
    b = CircuitBuilder(num_inputs=2, num_latches=3)
    x0, x1, x2 = b.latches
    return b.build(next_fns=[x0, b.inputs[0], b.inputs[1]], resets=[0, 0, 0], bad=[x0], name='stuck')


def generalizer(ts, cfg, k, debug=False):
    stats = StatsCollector()
    frames = FrameSequence(ts=ts, stats=stats)
    contexts = SatContexts(ts=ts, lemma_source=frames.lemmas_at, stats=stats)
    frames.attach(contexts)
    for _ in range(k):
        frames.new_frame()
    return Generalizer(ts=ts, frames=frames, contexts=contexts, cfg=cfg, stats=stats, debug=debug)


def trace_of(ts, cfg):
    trace = QueryTrace()
    verdict = Ic3Engine(ts=ts, cfg=cfg, trace=trace).check()
    return verdict, trace.lines


class GeneralizationTest(unittest.TestCase):

    def setUp(self):
        self.ts = to_transition_system(ladder(latches=2))
        v0, v1 = self.ts.state_vars
        self.x0 = Cube([make_lit(v0)])
        self.x1 = Cube([make_lit(v1)])
        self.bad = self.ts.index_to_state(3)
        self.p1 = self.ts.index_to_state(1)
        self.p0 = self.ts.index_to_state(2)
        # 10 -> 11 keeps the bad cube from being blocked at F_2, so these runs
        # exercise the drop loop without the soundness check

    def testStandardDropsToSingleLiteral(self):
        ts = to_transition_system(stuck_latch())
        gen = generalizer(ts, StrategyConfig(kind=StrategyKind.Standard), 1, debug=True)
        c = ts.index_to_state(7)
        gen_cube = gen.generalize(c, 0)
        assert gen_cube == Cube([make_lit(ts.state_vars[0])])
        assert gen.stats.get('literals_dropped') == 2
        gen.contexts.close()

    def testStandardKeepsLadderCube(self):
        gen = generalizer(self.ts, StrategyConfig(kind=StrategyKind.Standard), 2)
        assert gen.generalize(self.bad, 2) == self.bad
        assert gen.stats.get('relind_queries') == 2
        assert gen.frames.lemma_log == []
        gen.contexts.close()

    def testCtgBlocksPredecessor(self):
        gen = generalizer(self.ts, StrategyConfig(kind=StrategyKind.Ctg), 2)
        assert gen.generalize(self.bad, 2) == self.x0
        # 01 has no predecessor and is blocked at F_2 on the way
        assert gen.frames.lemma_log == [(self.p0, 2)]
        assert gen.stats.get('ctg_blocks') == 1
        assert gen.stats.get('relind_queries') == 6
        gen.contexts.close()

    def testExtendedChasesPredecessorChain(self):
        gen = generalizer(self.ts, StrategyConfig(kind=StrategyKind.Exctg, exctg_limit=5), 2)
        assert gen.generalize(self.bad, 2) == self.x1
        assert gen.frames.lemma_log == [(self.x1, 1), (self.x0, 2)]
        assert gen.stats.get('ctg_blocks') == 2
        assert gen.stats.get('relind_queries') == 7
        gen.contexts.close()

    def testEffortGrowsWithStrategy(self):
        queries = list()
        for cfg in [StrategyConfig(kind=StrategyKind.Standard), StrategyConfig(kind=StrategyKind.Ctg),
                    StrategyConfig(kind=StrategyKind.Exctg)]:
            gen = generalizer(self.ts, cfg, 2)
            gen.generalize(self.bad, 2)
            queries.append(gen.stats.get('relind_queries'))
            gen.contexts.close()
        assert queries == sorted(queries)

    def testUnitBudgetMatchesCtg(self):
        ctg = generalizer(self.ts, StrategyConfig(kind=StrategyKind.Ctg), 2)
        ex = generalizer(self.ts, StrategyConfig(kind=StrategyKind.Exctg, exctg_limit=1), 2)
        assert ctg.generalize(self.bad, 2) == ex.generalize(self.bad, 2)
        assert ctg.frames.lemma_log == ex.frames.lemma_log
        assert ctg.stats.get('relind_queries') == ex.stats.get('relind_queries')
        assert ex.stats.get('exctg_budget_exhaustions') == 1
        ctg.contexts.close()
        ex.contexts.close()

    def testBudgetIsShared(self):
        params = StrategyConfig(kind=StrategyKind.Exctg).static_params()
        gen = generalizer(self.ts, StrategyConfig(kind=StrategyKind.Exctg), 2)
        budget = ExctgBudget(remaining=1)
        assert not gen.exctg_block(self.p1, 2, budget, 0, params)
        assert budget.remaining == 0
        assert gen.stats.get('exctg_budget_exhaustions') == 1

        budget = ExctgBudget(remaining=2)
        assert gen.exctg_block(self.p1, 2, budget, 0, params)
        assert budget.remaining == 0
        assert gen.frames.level_of(self.x1) == 1
        gen.contexts.close()

    def testBlockRefusesInitialCube(self):
        params = StrategyConfig(kind=StrategyKind.Exctg).static_params()
        gen = generalizer(self.ts, StrategyConfig(kind=StrategyKind.Exctg), 2)
        budget = ExctgBudget(remaining=5)
        assert not gen.exctg_block(self.ts.index_to_state(0), 2, budget, 0, params)
        assert not gen.exctg_block(self.p1, 0, budget, 0, params)
        assert budget.remaining == 5
        gen.contexts.close()

    def testAdaptiveRecordsBranch(self):
        gen = generalizer(self.ts, StrategyConfig(), 2)
        assert gen.generalize(self.bad, 2, sact=0) == self.bad
        assert gen.stats.get('dyn_branches')['standard'] == 1
        gen.contexts.close()
        gen = generalizer(self.ts, StrategyConfig(), 2)
        assert gen.generalize(self.bad, 2, sact=50) == self.x1
        assert gen.stats.get('dyn_branches')['exctg'] == 1
        gen.contexts.close()

    def testLiteralOrders(self):
        c = Cube([2, 5, 6])
        gen = generalizer(self.ts, StrategyConfig(literal_order=LiteralOrder.Reverse), 1)
        assert gen.literal_order(c) == [6, 5, 2]
        gen.cfg = StrategyConfig(literal_order=LiteralOrder.Activity)
        gen.activity = {1: 4, 2: 1}
        assert gen.literal_order(c) == [6, 5, 2]
        gen.activity = {3: 4}
        assert gen.literal_order(c) == [2, 5, 6]
        gen.contexts.close()

    def testSubsumedLemmaEarnsNoActivity(self):
        gen = generalizer(self.ts, StrategyConfig(), 2)
        v0, v1 = self.ts.state_vars
        assert gen.add_lemma(self.x0, 2)
        assert gen.activity == {v0: 1}
        assert not gen.add_lemma(self.bad, 1)
        assert gen.activity == {v0: 1}
        assert gen.frames.lemma_log == [(self.x0, 2)]
        gen.contexts.close()

    def testOrdersAgreeOnVerdicts(self):
        for name, circuit in corpus(count=12, seed=3):
            ts = to_transition_system(circuit)
            verdicts = set()
            for order in LiteralOrder:
                cfg = StrategyConfig(kind=StrategyKind.Ctg, literal_order=order)
                verdicts.add(Ic3Engine(ts=ts, cfg=cfg, debug=True).check().kind)
            assert len(verdicts) == 1, name

    def testZeroLevelCoincidesWithStandard(self):
        for name, circuit in corpus(count=20, seed=5):
            ts = to_transition_system(circuit)
            v1, t1 = trace_of(ts, StrategyConfig(kind=StrategyKind.Standard))
            v2, t2 = trace_of(ts, StrategyConfig(kind=StrategyKind.Exctg, ctg_lv=0))
            assert v1.kind == v2.kind, name
            assert t1 == t2, name

    def testUnitBudgetCoincidesWithCtg(self):
        for name, circuit in corpus(count=20, seed=7):
            ts = to_transition_system(circuit)
            v1, t1 = trace_of(ts, StrategyConfig(kind=StrategyKind.Ctg))
            v2, t2 = trace_of(ts, StrategyConfig(kind=StrategyKind.Exctg, exctg_limit=1))
            v3, t3 = trace_of(ts, StrategyConfig(kind=StrategyKind.Ctg, unified=True))
            assert v1.kind == v2.kind == v3.kind, name
            assert t1 == t2 == t3, name


if __name__ == "__main__":
    unittest.main()
