import os
import random
import tempfile
import unittest

from dynpdr.aiger.aiger_io import read_aiger_file, write_aiger_file, is_binary_canonical
from dynpdr.aiger.aiger_circuit import to_transition_system
from dynpdr.bench.families import corpus, write_corpus, ladder, ladder_family, structured_family, counter
from dynpdr.bench.report import par2, par2_sum, compare, by_strategy, cactus_rows, scatter_rows, \
    format_table, write_plot_data, EmptyRecordSet, MismatchedCaseSets, ReportException
from dynpdr.bench.runner import RunRecord, run_single, bench, write_records, read_records, RunnerException
from dynpdr.ic3.strategy import StrategyConfig, StrategyKind
from dynpdr.ic3.verdict import VerdictKind
from dynpdr.oracle.reachability import brute_force_reachable
from dynpdr.oracle.simulator import NetlistSimulator


def record(case, strategy, result, wall_time, time_limit=10.0):
    return RunRecord(case=case, strategy=strategy, result=result, wall_time=wall_time, queries=0,
                     lemmas=0, time_limit=time_limit, message='')


class ReportTest(unittest.TestCase):

    def testPar2(self):
        solved = [record(f'c{i}', 's', 'Safe', 0.0) for i in range(4)]
        assert par2(solved) == 0.0
        unsolved = [record(f'c{i}', 's', 'Timeout', 10.0) for i in range(4)]
        assert par2(unsolved) == 20.0
        assert par2_sum(unsolved) == 80.0
        half = [record('a', 's', 'Unsafe', 5.0), record('b', 's', 'MemOut', 3.0)]
        assert par2(half) == 12.5
        # the limit can be overridden at scoring time
        assert par2(half, time_limit=20.0) == 22.5

    def testPar2IgnoresOrder(self):
        recs = [record(f'c{i}', 's', 'Safe' if i % 3 else 'Error', 0.1 * i) for i in range(30)]
        base = par2(recs)
        for seed in range(5):
            shuffled = list(recs)
            random.Random(seed).shuffle(shuffled)
            assert par2(shuffled) == base

    def testEmptyRecords(self):
        with self.assertRaises(EmptyRecordSet):
            par2([])

    def testCompare(self):
        recs = [record('a', 'standard', 'Safe', 1.0), record('b', 'standard', 'Timeout', 10.0),
                record('a', 'dynamic', 'Safe', 2.0), record('b', 'dynamic', 'Unsafe', 4.0)]
        rows = compare(by_strategy(recs), 'standard')
        assert [r.strategy for r in rows] == ['dynamic', 'standard']
        assert rows[0].solved == 2 and rows[0].delta == 1
        assert rows[1].solved == 1 and rows[1].delta == 0
        assert rows[0].par2 == 3.0
        assert rows[1].par2 == 10.5
        table = format_table(rows)
        assert 'dynamic' in table and '+1' in table
        with self.assertRaises(ReportException):
            compare(by_strategy(recs), 'ctg')

    def testMismatchedCases(self):
        recs = [record('a', 'standard', 'Safe', 1.0), record('b', 'ctg', 'Safe', 1.0)]
        with self.assertRaises(MismatchedCaseSets):
            compare(by_strategy(recs), 'standard')

    def testScatterDiagonal(self):
        recs = [record(c, s, 'Safe', t) for c, t in [('a', 1.0), ('b', 2.5)] for s in ('x', 'y')]
        recs.append(record('c', 'x', 'Timeout', 10.0))
        recs.append(record('c', 'y', 'Timeout', 10.0))
        for case, tx, ty in scatter_rows(by_strategy(recs), 'x', 'y'):
            assert tx == ty, case

    def testCactus(self):
        recs = [record('a', 's', 'Safe', 3.0), record('b', 's', 'Unsafe', 1.0), record('c', 's', 'Error', 0.5)]
        assert cactus_rows({'s': recs}) == [('s', 1, 1.0), ('s', 2, 3.0)]

    def testPlotData(self):
        recs = [record('a', 'standard', 'Safe', 1.0), record('a', 'ctg', 'Safe', 0.5)]
        with tempfile.TemporaryDirectory() as d:
            written = write_plot_data(by_strategy(recs), 'standard', os.path.join(d, 'run'))
            assert [os.path.basename(w) for w in written] == ['run_cactus.csv', 'run_scatter_standard_ctg.csv']
            with open(written[1]) as f:
                assert f.read().splitlines() == ['case,standard,ctg', 'a,1.000000,0.500000']

    def testRecordsCsv(self):
        recs = [record('a', 'standard', 'Safe', 1.25), record('b', 'standard', 'Timeout', 10.0)]
        recs[1].message = 'deadline, exceeded'
        with tempfile.TemporaryDirectory() as d:
            name = os.path.join(d, 'records.csv')
            write_records(recs, name)
            again = read_records(name)
            assert [tuple(r) for r in again] == [tuple(r) for r in recs]
            with open(name, 'w') as f:
                f.write('case,strategy,result,wall_time,queries,lemmas,time_limit,message\n'
                        'a,standard,Maybe,1.0,0,0,10.0,\n')
            with self.assertRaises(RunnerException):
                read_records(name)


class FamiliesTest(unittest.TestCase):

    def testCorpusIsDeterministic(self):
        a = corpus(count=40, seed=2)
        b = corpus(count=40, seed=2)
        assert [n for n, _ in a] == [n for n, _ in b]
        assert all(x == y for (_, x), (_, y) in zip(a, b))
        for name, circuit in a:
            circuit.validate()
            assert is_binary_canonical(circuit), name

    def testStructuredVerdicts(self):
        expected = {'toggle_r0': VerdictKind.Unsafe, 'counter_3_4_5': VerdictKind.Safe,
                    'counter_3_4_3': VerdictKind.Unsafe, 'shift_4_safe': VerdictKind.Safe,
                    'shift_4_unsafe': VerdictKind.Unsafe, 'ring_6_safe': VerdictKind.Safe,
                    'ring_6_unsafe': VerdictKind.Unsafe,
                    'ladder_5_safe': VerdictKind.Safe, 'ladder_5_unsafe': VerdictKind.Unsafe}
        family = dict(structured_family())
        for name, kind in expected.items():
            assert brute_force_reachable(to_transition_system(family[name])).verdict == kind, name

    def testWriteCorpus(self):
        with tempfile.TemporaryDirectory() as d:
            files = write_corpus(d, count=5, binary=True)
            assert len(files) == 5
            for f in files:
                assert f.endswith('.aig')
                read_aiger_file(f).validate()

    def testLadder(self):
        family = ladder_family(sizes=[4, 8])
        assert [n for n, _ in family] == ['ladder_4_safe', 'ladder_4_unsafe', 'ladder_8_safe',
                                          'ladder_8_unsafe']
        two = to_transition_system(ladder(latches=2))
        succ, _ = NetlistSimulator(two).successor_table()
        assert [int(x) for x in succ[:, 0]] == [0, 3, 1, 3]
        for name, circuit in family:
            assert is_binary_canonical(circuit), name
            result = brute_force_reachable(to_transition_system(circuit))
            expected = VerdictKind.Unsafe if name.endswith('_unsafe') else VerdictKind.Safe
            assert result.verdict == expected, name


class RunnerTest(unittest.TestCase):

    def testRunSingle(self):
        rec = run_single("test/models/toggle.aag", StrategyConfig(), time_limit=30.0)
        assert rec.case == 'toggle'
        assert rec.strategy == 'dynamic'
        assert rec.result == 'Unsafe'
        assert 0.0 <= rec.wall_time <= 30.0

    def testRunSingleCorruptFile(self):
        rec = run_single("test/models/truncated.aag", StrategyConfig(), time_limit=30.0)
        assert rec.result == 'Error'
        assert rec.message

    def testRunSingleExpiredLimit(self):
        with tempfile.TemporaryDirectory() as d:
            name = os.path.join(d, 'counter.aag')
            write_aiger_file(counter(bits=4, wrap=10, bad_value=12), name)
            rec = run_single(name, StrategyConfig(), time_limit=0.0)
            assert rec.result == 'Timeout'
            assert rec.wall_time == 0.0

    def testBench(self):
        strategies = {'standard': StrategyConfig(kind=StrategyKind.Standard),
                      'dynamic': StrategyConfig()}
        recs = bench(["test/models/toggle.aag", "test/models/handshake.aag"], strategies,
                     time_limit=30.0, jobs=2)
        assert [(r.case, r.strategy) for r in recs] == [('toggle', 'standard'), ('toggle', 'dynamic'),
                                                        ('handshake', 'standard'), ('handshake', 'dynamic')]
        assert [r.result for r in recs] == ['Unsafe', 'Unsafe', 'Safe', 'Safe']
        rows = compare(by_strategy(recs), 'standard')
        assert all(r.solved == 2 and r.delta == 0 for r in rows)

    def testLadderOrdering(self):
        strategies = {'standard': StrategyConfig(kind=StrategyKind.Standard),
                      'ctg': StrategyConfig(kind=StrategyKind.Ctg),
                      'exctg': StrategyConfig(kind=StrategyKind.Exctg),
                      'dynamic': StrategyConfig()}
        with tempfile.TemporaryDirectory() as d:
            files = list()
            for name, circuit in ladder_family(sizes=[20, 30]):
                files.append(os.path.join(d, name + '.aig'))
                write_aiger_file(circuit, files[-1])
            recs = bench(files, strategies, time_limit=60.0, jobs=2)
        for r in recs:
            if r.result in ('Safe', 'Unsafe'):
                assert r.result == ('Unsafe' if r.case.endswith('_unsafe') else 'Safe'), r
        solved = {row.strategy: row.solved for row in compare(by_strategy(recs), 'standard', time_limit=60.0)}
        assert solved['standard'] <= solved['ctg'] <= solved['exctg']
        assert solved['dynamic'] >= solved['ctg']


if __name__ == "__main__":
    unittest.main()
