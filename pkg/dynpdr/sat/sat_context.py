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
Per-frame incremental solving contexts. Context i holds F_i & T (context 0 holds
I & T). Relative induction checks assert !c through a fresh activation literal that
is released right after the query, and c' as assumptions.
"""
import random
import time
from typing import List, Optional, Tuple, Callable

from dynpdr.logic.literals import Cube, LiteralSet, to_dimacs, make_lit
from dynpdr.logic.transition_system import TransitionSystem
from dynpdr.logic.cnf import encode_transition
from dynpdr.logging.stats_collector import StatsCollector
from dynpdr.sat.abc_sat_solver import SolverFailure, SatException
from dynpdr.sat.pysat_solver import make_solver
from dynpdr.sat.query_trace import QueryTrace
from dynpdr.logging.dynpdr_logger import get_logger


class Model:
    """
    Total assignment of the last satisfiable query over X, Y and X'
    """

    def __init__(self, assignment: List[int], ts: TransitionSystem):
        self.assignment = assignment
        self.ts = ts

    def value(self, var: int) -> bool:
        return var < len(self.assignment) and self.assignment[var] > 0

    def _cube(self, variables: List[int]) -> Cube:
        return Cube(make_lit(v, not self.value(v)) for v in variables)

    def state_cube(self) -> Cube:
        return self._cube(self.ts.state_vars)

    def input_cube(self) -> Cube:
        return self._cube(self.ts.input_vars)


def get_predecessor(witness: Model) -> Cube:
    """
    The state-variable literals of a model: a full assignment cube over X
    :param witness:
    :return:
    """
    return witness.state_cube()


class SatContext:
    """
    One solver for one frame. lemma_source returns the cubes whose negations currently
    form the frame, it is used when the solver is rebuilt.
    """

    def __init__(self, *, frame_index: int, ts: TransitionSystem, transition: List[List[int]],
                 backend: str, seed: int, conf_budget: Optional[int], rebuild_threshold: int,
                 lemma_source: Callable[[int], List[Cube]], logger=None):
        assert frame_index >= 0
        self.frame_index = frame_index
        self.ts = ts
        self.transition = transition
        self.backend = backend
        self.seed = seed
        self.conf_budget = conf_budget
        self.rebuild_threshold = rebuild_threshold
        self.lemma_source = lemma_source
        self.log = logger if logger is not None else get_logger()
        self.solver = None
        self.rebuilds = 0
        self._build(lemma_source(frame_index))

    def _build(self, lemmas: List[Cube]) -> None:
        if self.solver is not None:
            self.solver.delete()
        clauses = list(self.transition)
        if self.frame_index == 0:
            clauses.extend([to_dimacs(lit)] for lit in self.ts.init)
        clauses.extend([to_dimacs(lit ^ 1) for lit in cube] for cube in lemmas)
        self.solver = make_solver(name=self.backend, clauses=clauses, seed=self.seed,
                                  conf_budget=self.conf_budget)
        if self.seed:
            rng = random.Random(self.seed)
            self.solver.set_phases([(v + 1) if rng.random() < 0.5 else -(v + 1)
                                    for v in self.ts.state_vars])
        # activation variables live above all transition system variables
        self._next_act = self.ts.num_vars + 1
        self._released = 0

    def add_lemma(self, cube: LiteralSet) -> None:
        self.solver.add_clause([to_dimacs(lit ^ 1) for lit in cube])

    def solve(self, assumptions: List[int]) -> Optional[Model]:
        res = self.solver.solve(assumptions)
        if res is None:
            raise SolverFailure(frame=self.frame_index, msg='query undecided within the conflict budget')
        if res:
            return Model(self.solver.get_model(), self.ts)
        return None

    def relind(self, c: LiteralSet) -> Tuple[bool, Optional[Model]]:
        """
        Is !c inductive relative to this frame, i.e. is F_i & !c & T & c' UNSAT?
        :param c:
        :return: (holds, witness when it does not hold)
        """
        act = self._next_act
        self._next_act += 1
        self.solver.add_clause([-act] + [to_dimacs(lit ^ 1) for lit in c])
        assumptions = [act] + [to_dimacs(lit) for lit in self.ts.prime(c)]
        try:
            model = self.solve(assumptions)
        finally:
            self.solver.add_clause([-act])
            self._released += 1
        if self._released >= self.rebuild_threshold:
            self.rebuild()
        return model is None, model

    def rebuild(self) -> None:
        self.log.debug(f'Rebuilding solver of frame {self.frame_index} after {self._released} '
                       f'released activations')
        self.rebuilds += 1
        self._build(self.lemma_source(self.frame_index))

    def delete(self) -> None:
        if self.solver is not None:
            self.solver.delete()
            self.solver = None


class SatContexts:
    """
    The engine's solving contexts, one per frame, plus query accounting
    """

    def __init__(self, *, ts: TransitionSystem, lemma_source: Callable[[int], List[Cube]],
                 backend: str = 'minisat22', seed: int = 0, conf_budget: Optional[int] = None,
                 rebuild_threshold: int = 1000, trace: Optional[QueryTrace] = None,
                 stats: Optional[StatsCollector] = None, deadline: Optional[float] = None,
                 logger=None):
        self.ts = ts
        self.lemma_source = lemma_source
        self.backend = backend
        self.seed = seed
        self.conf_budget = conf_budget
        self.rebuild_threshold = rebuild_threshold
        self.trace = trace
        self.stats = stats if stats is not None else StatsCollector()
        self.deadline = deadline
        self.log = logger if logger is not None else get_logger()
        self.transition = encode_transition(ts).clauses
        self.contexts = list()
        self.new_frame()

    def new_frame(self) -> SatContext:
        ctx = SatContext(frame_index=len(self.contexts), ts=self.ts, transition=self.transition,
                         backend=self.backend, seed=self.seed, conf_budget=self.conf_budget,
                         rebuild_threshold=self.rebuild_threshold, lemma_source=self.lemma_source,
                         logger=self.log)
        self.contexts.append(ctx)
        return ctx

    def __len__(self):
        return len(self.contexts)

    def _before_query(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise SolverTimeout()
        self.stats.bump('queries')

    def relind(self, c: LiteralSet, i: int) -> Tuple[bool, Optional[Model]]:
        """
        Is clause !c inductive relative to F_i?
        :param c: cube over X
        :param i: frame index
        :return: (holds, witness model when it does not hold)
        """
        assert 0 <= i < len(self.contexts)
        self._before_query()
        self.stats.bump('relind_queries')
        ctx = self.contexts[i]
        before = ctx.rebuilds
        holds, model = ctx.relind(c)
        self.stats.bump('rebuilds', ctx.rebuilds - before)
        if self.trace is not None:
            self.trace.record(kind='relind', frame=i, cube=c, result='unsat' if holds else 'sat')
        return holds, model

    def solve_bad(self, k: int) -> Optional[Model]:
        """
        sat(F_k & !P): a model whose state is a bad state in F_k, or None
        """
        self._before_query()
        self.stats.bump('bad_queries')
        model = self.contexts[k].solve([to_dimacs(self.ts.bad)])
        if self.trace is not None:
            self.trace.record(kind='bad', frame=k, cube=(), result='sat' if model else 'unsat')
        return model

    def add_lemma(self, cube: LiteralSet, i: int) -> None:
        """
        Load !cube into the contexts of F_1..F_i
        """
        for j in range(1, i + 1):
            self.contexts[j].add_lemma(cube)

    def push_lemma(self, cube: LiteralSet, j: int) -> None:
        self.contexts[j].add_lemma(cube)

    def close(self) -> None:
        for ctx in self.contexts:
            ctx.delete()


class SolverTimeout(SatException):
    """
    The wall-clock deadline passed before a query could be issued
    """
    def __init__(self):
        super().__init__('wall-clock deadline reached')
