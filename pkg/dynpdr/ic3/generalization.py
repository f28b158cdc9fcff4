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
Literal-dropping generalization of blocked cubes. Four strategies share one skeleton:
a drop loop over the cube's literals and a 'down' procedure that tries to prove
the reduced cube blocked, intersecting it with counterexample predecessors on failure.
Standard uses plain down, CTG first tries to block the predecessor, the extended
variant chases the predecessor's own predecessors under a budget, and the adaptive
strategy picks parameters for the extended variant from the obligation's activity.
Cubes are immutable, so every down-style method returns (success, resulting cube).
"""
from typing import Callable, Dict, List, Optional, Tuple

from dynpdr.logic.literals import Cube
from dynpdr.logic.transition_system import TransitionSystem
from dynpdr.logging.stats_collector import StatsCollector
from dynpdr.sat.sat_context import SatContexts, get_predecessor
from dynpdr.ic3.frames import FrameSequence
from dynpdr.ic3.strategy import StrategyConfig, StrategyKind, LiteralOrder, GeneralizeParams, \
    ExctgBudget, strategy_params
from dynpdr.logging.dynpdr_logger import get_logger


class Generalizer:
    """
    Holds the handles generalization mutates (frames and their solving contexts)
    and the per-variable activity used by the activity literal order.
    """

    def __init__(self, *, ts: TransitionSystem, frames: FrameSequence, contexts: SatContexts,
                 cfg: StrategyConfig, stats: Optional[StatsCollector] = None, debug: bool = False,
                 logger=None):
        self.ts = ts
        self.frames = frames
        self.contexts = contexts
        self.cfg = cfg
        self.stats = stats if stats is not None else StatsCollector()
        self.debug = debug
        self.log = logger if logger is not None else get_logger()
        self.activity: Dict[int, int] = dict()

    def add_lemma(self, gen: Cube, i: int) -> bool:
        """
        Insert !gen into F_1..F_i and credit its variables if it went in
        """
        if not self.frames.add_lemma(gen, i):
            return False
        for var in gen.vars():
            self.activity[var] = self.activity.get(var, 0) + 1
        return True

    def literal_order(self, c: Cube) -> List[int]:
        """
        Snapshot of c's literals in the configured drop order
        """
        if self.cfg.literal_order == LiteralOrder.Reverse:
            return list(reversed(c.lits))
        if self.cfg.literal_order == LiteralOrder.Activity:
            return sorted(c.lits, key=lambda lit: (self.activity.get(lit >> 1, 0), lit >> 1))
        return list(c.lits)

    def _drop_literals(self, c: Cube, i: int, down: Callable[[Cube, int], Tuple[bool, Cube]]) -> Cube:
        for lit in self.literal_order(c):
            if lit not in c:
                continue
            ok, cand = down(c.without(lit), i)
            if ok:
                c = cand
        return c

    #
    # Standard
    #
    def down(self, c: Cube, i: int) -> Tuple[bool, Cube]:
        """
        Shrink c until !c is inductive relative to F_i, failing once it meets I
        :param c:
        :param i:
        :return: (success, cube)
        """
        while True:
            if self.ts.intersects_initial(c):
                return False, c
            holds, model = self.contexts.relind(c, i)
            if holds:
                return True, c
            # common literals of c and the predecessor
            c = c.intersect(get_predecessor(model))

    def standard_generalize(self, c: Cube, i: int) -> Cube:
        return self._drop_literals(c, i, self.down)

    #
    # Counterexamples to generalization
    #
    def ctg_down(self, c: Cube, i: int, cl: int, params: GeneralizeParams) -> Tuple[bool, Cube]:
        """
        As down, but first try to block a predecessor p of c at F_i (relative to F_{i-1}),
        at most ctg_max times in a row, generalizing it with ctg level cl-1.
        """
        num_ctg = 0
        while True:
            if self.ts.intersects_initial(c):
                return False, c
            holds, model = self.contexts.relind(c, i)
            if holds:
                return True, c
            p = get_predecessor(model)
            if cl > 0 and num_ctg < params.ctg_max and i > 0:
                if not self.ts.intersects_initial(p):
                    blocked, _ = self.contexts.relind(p, i - 1)
                    if blocked:
                        gen = self.ctg_generalize(p, i - 1, cl - 1, params)
                        self.add_lemma(gen, i)
                        self.stats.bump('ctg_blocks')
                        num_ctg += 1
                        continue
            num_ctg = 0
            c = c.intersect(p)

    def ctg_generalize(self, c: Cube, i: int, cl: int, params: GeneralizeParams) -> Cube:
        return self._drop_literals(c, i, lambda cand, j: self.ctg_down(cand, j, cl, params))

    #
    # Extended counterexamples to generalization
    #
    def exctg_block(self, c: Cube, i: int, budget: ExctgBudget, cl: int, params: GeneralizeParams) -> bool:
        """
        Try to block c at F_i, recursively blocking its predecessors at F_{i-1} first.
        Every invocation takes one unit of the shared budget; a predecessor is chased
        only while budget remains, so a budget of 1 blocks c directly or gives up.
        Lemmas added by successful inner calls are kept when the outer call fails.
        :param c: cube
        :param i: frame to block c at
        :param budget: shared across the whole recursion
        :param cl: ctg level handed to the generalization of each blocked cube
        :param params:
        :return: True if c was blocked
        """
        if i == 0 or self.ts.intersects_initial(c):
            return False
        budget.remaining -= 1
        while True:
            holds, model = self.contexts.relind(c, i - 1)
            if holds:
                gen = self.exctg_generalize(c, i - 1, cl, params)
                self.add_lemma(gen, i)
                self.stats.bump('ctg_blocks')
                return True
            if budget.remaining <= 0:
                self.stats.bump('exctg_budget_exhaustions')
                return False
            if not self.exctg_block(get_predecessor(model), i - 1, budget, cl, params):
                return False

    def exctg_down(self, c: Cube, i: int, cl: int, params: GeneralizeParams) -> Tuple[bool, Cube]:
        """
        As ctg_down, blocking each predecessor through exctg_block with a fresh budget
        """
        num_ctg = 0
        while True:
            if self.ts.intersects_initial(c):
                return False, c
            holds, model = self.contexts.relind(c, i)
            if holds:
                return True, c
            p = get_predecessor(model)
            if cl > 0 and num_ctg < params.ctg_max and i > 0:
                budget = ExctgBudget(remaining=params.exctg_limit)
                if self.exctg_block(p, i, budget, cl - 1, params):
                    num_ctg += 1
                    continue
            num_ctg = 0
            c = c.intersect(p)

    def exctg_generalize(self, c: Cube, i: int, cl: int, params: GeneralizeParams) -> Cube:
        """
        Covers the static strategies: ctg level 0 behaves as Standard, a budget of 1 as CTG
        """
        return self._drop_literals(c, i, lambda cand, j: self.exctg_down(cand, j, cl, params))

    #
    # Adaptive
    #
    def dyn_generalize(self, c: Cube, i: int, sact: int) -> Cube:
        """
        Select strategy parameters from the successor's activity, then run the
        extended generalization with them
        :param c:
        :param i:
        :param sact: failed blocking attempts of the successor obligation
        :return:
        """
        params = strategy_params(sact, self.cfg)
        self.stats.record_branch(params.branch)
        self.log.debug(f'Activity {sact} selects {params.branch} {params}')
        return self.exctg_generalize(c, i, params.ctg_lv, params)

    def generalize(self, c: Cube, i: int, sact: int = 0) -> Cube:
        """
        Generalize a cube whose negation is inductive relative to F_i with the
        configured strategy. sact is ignored by the static strategies.
        :param c: blocked cube, disjoint from I
        :param i: frame index
        :param sact: activity of the successor obligation
        :return: gen, a sub-cube of c
        """
        kind = self.cfg.kind
        if kind == StrategyKind.Dynamic:
            gen = self.dyn_generalize(c, i, sact)
        else:
            params = self.cfg.static_params()
            if kind == StrategyKind.Exctg or self.cfg.unified:
                gen = self.exctg_generalize(c, i, params.ctg_lv, params)
            elif kind == StrategyKind.Ctg:
                gen = self.ctg_generalize(c, i, params.ctg_lv, params)
            else:
                gen = self.standard_generalize(c, i)
        self.stats.bump('literals_dropped', len(c) - len(gen))
        if self.debug:
            self.check_sound(c, gen, i)
        return gen

    def check_sound(self, c: Cube, gen: Cube, i: int) -> None:
        """
        Debug check: gen shrinks c, is disjoint from I and !gen is inductive relative to F_i
        """
        if not gen.subsumes(c):
            raise GeneralizationUnsound(f'{gen} is not a sub-cube of {c}')
        if len(gen) == 0 or self.ts.intersects_initial(gen):
            raise GeneralizationUnsound(f'{gen} intersects the initial states')
        holds, _ = self.contexts.relind(gen, i)
        if not holds:
            raise GeneralizationUnsound(f'!({gen}) is not inductive relative to F_{i}')


class GeneralizationException(Exception):
    """
    base generalization exception
    """
    def __init__(self, msg: str):
        super().__init__(f"{self.__class__.__name__}: {msg}")


class GeneralizationUnsound(GeneralizationException):

    def __init__(self, msg: str):
        super().__init__(msg)
