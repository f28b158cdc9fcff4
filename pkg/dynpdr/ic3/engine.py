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
IC3 main loop: pull bad states out of the top frame, block them recursively,
generalize the blocked cubes with the configured strategy, and propagate lemmas
until two adjacent frames coincide or a blocking chain reaches the initial states.
"""
import time
from typing import List, Optional

from recordclass import recordclass

from dynpdr.logic.transition_system import TransitionSystem
from dynpdr.logging.stats_collector import StatsCollector
from dynpdr.sat.abc_sat_solver import SolverFailure
from dynpdr.sat.query_trace import QueryTrace
from dynpdr.sat.sat_context import SatContexts, SolverTimeout, get_predecessor
from dynpdr.ic3.frames import FrameSequence
from dynpdr.ic3.generalization import Generalizer
from dynpdr.ic3.strategy import StrategyConfig
from dynpdr.ic3.verdict import Verdict, VerdictKind, TraceStep, UnknownReason
from dynpdr.logging.dynpdr_logger import get_logger

# proof obligation: cube to block at frame, its failed blocking attempts so far,
# the obligation it is a predecessor of and the inputs leading from it to that successor
Obligation = recordclass('Obligation', ['cube', 'frame', 'activity', 'successor', 'inputs'])

# one generalize call made by block: the activity it received and the failure count
# of the successor obligation at that moment
GeneralizeEvent = recordclass('GeneralizeEvent', ['frame', 'sact', 'successor_activity'])


class Ic3Engine:
    """
    One verification run over one transition system. Not reusable: create a new
    engine per check.
    """

    def __init__(self, *, ts: TransitionSystem, cfg: StrategyConfig, backend: str = 'minisat22',
                 seed: int = 0, conf_budget: Optional[int] = None, rebuild_threshold: int = 1000,
                 time_limit: Optional[float] = None, max_frames: Optional[int] = None,
                 trace: Optional[QueryTrace] = None, check_frames: bool = False, debug: bool = False,
                 logger=None):
        """
        :param ts: transition system
        :param cfg: generalization strategy
        :param backend: pysat solver name
        :param seed: solver phase seed, 0 for none
        :param conf_budget: conflict budget per query, exceeding it gives Unknown
        :param rebuild_threshold: released activation literals before a context is rebuilt
        :param time_limit: seconds of wall clock, exceeding it gives Unknown
        :param max_frames: frame bound, exceeding it gives Unknown
        :param trace: optional query trace
        :param check_frames: verify the frame invariants after every propagation
        :param debug: check every generalization result
        :param logger:
        """
        self.ts = ts
        self.cfg = cfg
        self.backend = backend
        self.seed = seed
        self.conf_budget = conf_budget
        self.rebuild_threshold = rebuild_threshold
        self.time_limit = time_limit
        self.max_frames = max_frames
        self.trace = trace
        self.check_frames = check_frames
        self.debug = debug
        self.log = logger if logger is not None else get_logger()
        self.stats = StatsCollector()
        self.events: List[GeneralizeEvent] = list()
        self.frames = None
        self.contexts = None
        self.generalizer = None
        self.cex = None

    def _setup(self) -> None:
        deadline = time.monotonic() + self.time_limit if self.time_limit is not None else None
        self.frames = FrameSequence(ts=self.ts, stats=self.stats, logger=self.log)
        self.contexts = SatContexts(ts=self.ts, lemma_source=self.frames.lemmas_at, backend=self.backend,
                                    seed=self.seed, conf_budget=self.conf_budget,
                                    rebuild_threshold=self.rebuild_threshold, trace=self.trace,
                                    stats=self.stats, deadline=deadline, logger=self.log)
        self.frames.attach(self.contexts)
        self.generalizer = Generalizer(ts=self.ts, frames=self.frames, contexts=self.contexts,
                                       cfg=self.cfg, stats=self.stats, debug=self.debug, logger=self.log)

    def block(self, ob: Obligation, sact: int) -> bool:
        """
        Block ob.cube at ob.frame, recursively blocking predecessors at ob.frame - 1 first.
        Each failed relative induction query raises the obligation's activity by one and
        the predecessor it yields is blocked with that activity.
        :param ob: obligation
        :param sact: activity of the successor obligation, 0 for the root
        :return: False if the chain reaches an initial state (counterexample in self.cex)
        """
        c, i = ob.cube, ob.frame
        if i == 0 or self.ts.intersects_initial(c):
            self.cex = ob
            return False
        while True:
            holds, model = self.contexts.relind(c, i - 1)
            if holds:
                break
            ob.activity += 1
            p = Obligation(cube=get_predecessor(model), frame=i - 1, activity=0, successor=ob,
                           inputs=model.input_cube())
            self.stats.bump('obligations')
            if not self.block(p, ob.activity):
                return False
        self.events.append(GeneralizeEvent(frame=i - 1, sact=sact,
                                           successor_activity=ob.successor.activity if ob.successor else 0))
        gen = self.generalizer.generalize(c, i - 1, sact)
        self.generalizer.add_lemma(gen, i)
        return True

    def counterexample(self) -> List[TraceStep]:
        """
        Walk from the obligation that reached I along the successor chain
        """
        steps = list()
        ob = self.cex
        while ob is not None:
            steps.append(TraceStep(state=ob.cube, inputs=ob.inputs))
            ob = ob.successor
        return steps

    def _unsafe(self, depth: int) -> Verdict:
        trace = self.counterexample()
        self.log.info(f'Counterexample of length {len(trace)} found at depth {depth}')
        return Verdict(kind=VerdictKind.Unsafe, trace=trace, stats=self.stats.to_dict(), depth=depth)

    def check(self) -> Verdict:
        """
        Run to a verdict
        :return: Verdict
        """
        k = 0
        try:
            self._setup()
            model = self.contexts.solve_bad(0)
            if model is not None:
                self.cex = Obligation(cube=get_predecessor(model), frame=0, activity=0,
                                      successor=None, inputs=model.input_cube())
                return self._unsafe(0)
            k = self.frames.new_frame()
            while True:
                while True:
                    model = self.contexts.solve_bad(k)
                    if model is None:
                        break
                    root = Obligation(cube=get_predecessor(model), frame=k, activity=0,
                                      successor=None, inputs=model.input_cube())
                    self.stats.bump('obligations')
                    if not self.block(root, 0):
                        return self._unsafe(k)
                if self.max_frames is not None and k >= self.max_frames:
                    return self._unknown(k, f'frame bound {self.max_frames} reached',
                                         UnknownReason.FrameBound)
                self.frames.new_frame()
                fixpoint = self.frames.propagate(self.frames.k)
                self.log.info(f'Frame {k} done: {self.frames}')
                if self.check_frames:
                    self.frames.verify(backend=self.backend)
                if fixpoint:
                    invariant = self.frames.extract_invariant()
                    self.log.info(f'Safe at depth {k}, invariant of {len(invariant)} clauses')
                    return Verdict(kind=VerdictKind.Safe, invariant=invariant, stats=self.stats.to_dict(),
                                   depth=k)
                k = self.frames.k
        except SolverTimeout as e:
            return self._unknown(k, str(e), UnknownReason.Timeout)
        except SolverFailure as e:
            return self._unknown(k, str(e), UnknownReason.SolverFailure)
        except MemoryError:
            return self._unknown(k, 'out of memory', UnknownReason.MemOut)
        finally:
            if self.contexts is not None:
                self.contexts.close()
            self.log.debug(f'Run statistics: {self.stats}')

    def _unknown(self, k: int, msg: str, reason: UnknownReason) -> Verdict:
        self.log.warning(f'No verdict at depth {k}: {msg}')
        return Verdict(kind=VerdictKind.Unknown, stats=self.stats.to_dict(), depth=k, message=msg,
                       reason=reason)


def check(ts: TransitionSystem, cfg: StrategyConfig, **kwargs) -> Verdict:
    """
    Check ts with the given strategy. Extra keyword arguments go to Ic3Engine.
    """
    return Ic3Engine(ts=ts, cfg=cfg, **kwargs).check()
