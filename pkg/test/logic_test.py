import os
import tempfile
import unittest

from pysat.solvers import Solver

from dynpdr.aiger.aiger_io import read_aiger_file
from dynpdr.aiger.aiger_circuit import to_transition_system
from dynpdr.logic.literals import Cube, Clause, make_lit, lit_var, negate, to_dimacs, from_dimacs, \
    subsumes, LogicException, VarNotStateVar
from dynpdr.logic.cnf import encode_transition, write_dimacs


class LiteralTest(unittest.TestCase):

    def testLiterals(self):
        assert make_lit(3) == 6
        assert make_lit(3, True) == 7
        assert lit_var(7) == 3
        assert negate(6) == 7
        assert to_dimacs(6) == 4
        assert to_dimacs(7) == -4
        assert from_dimacs(-4) == 7
        assert to_dimacs(0) == 1

    def testCubeIsSortedAndDeduplicated(self):
        c = Cube([9, 4, 6, 4])
        assert c.lits == (4, 6, 9)
        assert len(c) == 3
        assert 9 in c
        assert c.vars() == (2, 3, 4)
        with self.assertRaises(LogicException):
            Cube([4, 5])

    def testSubsumption(self):
        small = Cube([4])
        big = Cube([4, 7])
        assert subsumes(small, big)
        assert not subsumes(big, small)
        assert subsumes(big, big)
        assert not Cube([5]).subsumes(big)
        assert Cube([]).subsumes(big)

    def testNegation(self):
        c = Cube([4, 7])
        cl = c.negate()
        assert isinstance(cl, Clause)
        assert cl.lits == (5, 6)
        assert cl.negate() == c
        # same literals, different kinds
        assert Cube([4]) != Clause([4])

    def testCubeOps(self):
        c = Cube([2, 4, 7])
        assert c.without(4) == Cube([2, 7])
        assert c.intersect(Cube([2, 5, 7])) == Cube([2, 7])
        assert str(Cube([2, 5])) == 'v1 & !v2'
        assert str(Clause([])) == 'false'


class TransitionSystemTest(unittest.TestCase):

    def setUp(self):
        self.ts = to_transition_system(read_aiger_file("test/models/handshake.aag"))

    def testVariables(self):
        ts = self.ts
        assert ts.state_vars == [2, 3]
        assert ts.input_vars == [1]
        assert ts.next_vars == [6, 7]
        assert ts.init == Cube([5, 7])
        assert ts.num_vars == 8

    def testPrime(self):
        ts = self.ts
        c = Cube([4, 7])
        assert ts.prime(c) == Cube([12, 15])
        assert ts.unprime(ts.prime(c)) == c
        with self.assertRaises(VarNotStateVar):
            ts.prime(Cube([2]))

    def testIntersectsInitial(self):
        ts = self.ts
        assert ts.intersects_initial(Cube([5]))
        assert not ts.intersects_initial(Cube([4]))
        assert ts.intersects_initial(Cube([]))

    def testStateIndex(self):
        ts = self.ts
        c = ts.state_cube({2: True, 3: False})
        assert c == Cube([4, 7])
        assert ts.state_to_index(c) == 1
        assert ts.index_to_state(1) == c
        assert ts.input_cube({1: False}) == Cube([3])

    def testEncodingClauses(self):
        cnf = encode_transition(self.ts)
        # constant, three per gate, two per latch
        assert len(cnf.clauses) == 1 + 3 * 2 + 2 * 2

    def testEncodingMatchesNetlist(self):
        ts = self.ts
        cnf = encode_transition(ts)
        # req=0, enable=1 forces req'=1 and ack'=0
        with Solver(bootstrap_with=cnf.clauses) as s:
            assumptions = [to_dimacs(lit) for lit in [5, 7, 2]]
            assert s.solve(assumptions=assumptions)
            model = s.get_model()
            assert model[6] > 0
            assert model[7] < 0
            assert not s.solve(assumptions=assumptions + [-(6 + 1)])

    def testWriteDimacs(self):
        with tempfile.TemporaryDirectory() as d:
            name = os.path.join(d, 't.cnf')
            write_dimacs(self.ts, name)
            with open(name) as f:
                text = f.read()
            assert 'p cnf' in text
            assert 'c bad literal' in text


if __name__ == "__main__":
    unittest.main()
