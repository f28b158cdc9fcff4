#!/usr/bin/env python3
# MIT License
#
# Copyright (c) 2025 The dynpdr authors
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.
#
#

"""
Independent certification of verdicts: an inductive invariant is checked with
three fresh SAT queries over its own encoding of the netlist, and a counterexample
trace is replayed by simulation.
"""
from typing import List

from pysat.formula import CNF, IDPool
from pysat.solvers import Solver

from dynpdr.logic.literals import Clause
from dynpdr.logic.transition_system import TransitionSystem
from dynpdr.ic3.verdict import TraceStep
from dynpdr.oracle.simulator import NetlistSimulator
from dynpdr.logging.dynpdr_logger import get_logger

CONDITIONS = ['initiation', 'consecution', 'safety']


class _Encoding:
    """
    Tseitin encoding of one step of the netlist. ('v', var) names current-state,
    input and gate variables, ('p', var) the next-state copy of latch var.
    """

    def __init__(self, ts: TransitionSystem):
        self.ts = ts
        self.pool = IDPool()
        self.cnf = CNF()
        self.cnf.append([-self.pool.id(('v', 0))])
        for lhs, rhs0, rhs1 in ts.gates:
            g, a, b = self.lit(lhs), self.lit(rhs0), self.lit(rhs1)
            self.cnf.extend([[-g, a], [-g, b], [g, -a, -b]])
        for v, f in zip(ts.state_vars, ts.next_fns):
            p, fl = self.pool.id(('p', v)), self.lit(f)
            self.cnf.extend([[-p, fl], [p, -fl]])

    def lit(self, lit: int) -> int:
        x = self.pool.id(('v', lit >> 1))
        return -x if lit & 1 else x

    def next_lit(self, lit: int) -> int:
        x = self.pool.id(('p', lit >> 1))
        return -x if lit & 1 else x

    def clauses(self, invariant: List[Clause], primed: bool = False) -> List[List[int]]:
        enc = self.next_lit if primed else self.lit
        return [[enc(lit) for lit in c] for c in invariant]

    def negation(self, invariant: List[Clause], primed: bool = False) -> List[List[int]]:
        """
        !INV: some clause has all its literals false, one selector per clause
        """
        enc = self.next_lit if primed else self.lit
        ret = list()
        selectors = list()
        for j, c in enumerate(invariant):
            s = self.pool.id(('s', primed, j))
            selectors.append(s)
            ret.extend([-s, -enc(lit)] for lit in c)
        # the constant false variable stands in for the empty disjunction
        ret.append(selectors if selectors else [self.pool.id(('v', 0))])
        return ret


def invariant_conditions(ts: TransitionSystem, invariant: List[Clause],
                         backend: str = 'minisat22') -> List[bool]:
    """
    Evaluate I => INV, INV & T => INV' and INV => P
    :param ts:
    :param invariant: clauses over state variables
    :param backend: pysat solver name
    :return: one flag per condition, in CONDITIONS order
    """
    enc = _Encoding(ts)
    init = [[enc.lit(lit)] for lit in ts.init]
    queries = [
        init + enc.negation(invariant),
        enc.clauses(invariant) + enc.negation(invariant, primed=True),
        enc.clauses(invariant) + [[enc.lit(ts.bad)]],
    ]
    ret = list()
    for extra in queries:
        with Solver(name=backend, bootstrap_with=enc.cnf.clauses + extra) as s:
            ret.append(not s.solve())
    return ret


def check_invariant(ts: TransitionSystem, invariant: List[Clause], backend: str = 'minisat22',
                    logger=None) -> bool:
    """
    True iff the clause set is an inductive invariant proving the property
    """
    ok = invariant_conditions(ts, invariant, backend=backend)
    if not all(ok):
        log = logger if logger is not None else get_logger()
        log.warning(f'Invariant rejected, failed conditions: '
                    f'{[name for name, flag in zip(CONDITIONS, ok) if not flag]}')
    return all(ok)


def replay_trace(ts: TransitionSystem, trace: List[TraceStep], logger=None) -> bool:
    """
    Simulate a counterexample: the first state must be initial, each step must follow
    the netlist under its inputs, and the last state with its inputs must raise bad.
    """
    log = logger if logger is not None else get_logger()
    if not trace:
        return False
    if not ts.intersects_initial(trace[0].state):
        log.warning('Trace does not start in an initial state')
        return False
    sim = NetlistSimulator(ts)
    for t, step in enumerate(trace):
        state = ts.state_to_index(step.state)
        inputs = input_index(ts, step.inputs)
        nxt, bad = sim.step(state, inputs)
        if t == len(trace) - 1:
            if not bad:
                log.warning(f'Final trace state {t} is not bad')
            return bad
        if nxt != ts.state_to_index(trace[t + 1].state):
            log.warning(f'Trace step {t} is not a transition of the netlist')
            return False


def input_index(ts: TransitionSystem, inputs) -> int:
    idx = 0
    pos = {v: j for j, v in enumerate(ts.input_vars)}
    for lit in inputs:
        if not lit & 1:
            idx |= 1 << pos[lit >> 1]
    return idx
