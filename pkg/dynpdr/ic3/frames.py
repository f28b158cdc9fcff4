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
The monotone frame sequence F_0..F_k. Lemmas are stored once, at the highest
frame they are known to hold in (delta encoding): F_i is the union of levels >= i,
and F_i minus F_{i+1} is exactly level i. F_0 is I and keeps no lemmas.
A lemma is kept as the cube it blocks, the lemma itself being the negation.
"""
from typing import List, Optional, Tuple

from pysat.solvers import Solver

from dynpdr.logic.literals import Cube, Clause, to_dimacs
from dynpdr.logic.transition_system import TransitionSystem
from dynpdr.logic.cnf import encode_transition
from dynpdr.logging.stats_collector import StatsCollector
from dynpdr.sat.sat_context import SatContexts
from dynpdr.logging.dynpdr_logger import get_logger


class FrameSequence:
    """
    Lemma storage kept canonical: no lemma is subsumed by a lemma
    at the same or a higher level.
    """

    def __init__(self, *, ts: TransitionSystem, stats: Optional[StatsCollector] = None, logger=None):
        self.ts = ts
        self.stats = stats if stats is not None else StatsCollector()
        self.log = logger if logger is not None else get_logger()
        # levels[0] stays empty, F_0 = I
        self.levels = [list()]
        self.contexts = None
        self.fixpoint = None
        # (cube, level) in insertion order, for comparing runs
        self.lemma_log = list()

    def attach(self, contexts: SatContexts) -> None:
        """
        Bind the solving contexts mirrored by this sequence; there must be
        one context per existing frame
        """
        assert len(contexts) == len(self.levels)
        self.contexts = contexts

    @property
    def k(self) -> int:
        return len(self.levels) - 1

    def new_frame(self) -> int:
        """
        F_{k+1} := true
        :return: new k
        """
        self.levels.append(list())
        if self.contexts is not None:
            self.contexts.new_frame()
        self.stats.raise_to('frames', self.k)
        return self.k

    def lemmas_at(self, i: int) -> List[Cube]:
        """
        Blocked cubes whose negations form F_i (i >= 1), or nothing for F_0
        """
        if i == 0:
            return list()
        ret = list()
        for level in self.levels[i:]:
            ret.extend(level)
        return ret

    def frame_clauses(self, i: int) -> List[Clause]:
        if i == 0:
            return [Clause([lit]) for lit in self.ts.init]
        return [c.negate() for c in self.lemmas_at(i)]

    def level_of(self, cube: Cube) -> Optional[int]:
        for j, level in enumerate(self.levels):
            if cube in level:
                return j
        return None

    def add_lemma(self, gen: Cube, i: int) -> bool:
        """
        Insert !gen into F_1..F_i. Lemmas at levels up to i that !gen subsumes are
        deleted; nothing is inserted if a lemma at level i or above already subsumes !gen.
        :param gen: blocked cube
        :param i: frame index
        :return: True if inserted
        """
        assert 1 <= i <= self.k
        for level in self.levels[i:]:
            for d in level:
                if d.subsumes(gen):
                    return False
        for j in range(1, i + 1):
            keep = [d for d in self.levels[j] if not gen.subsumes(d)]
            self.stats.bump('lemmas_subsumed', len(self.levels[j]) - len(keep))
            self.levels[j] = keep
        self.levels[i].append(gen)
        self.lemma_log.append((gen, i))
        self.stats.bump('lemmas')
        if self.contexts is not None:
            self.contexts.add_lemma(gen, i)
        self.log.debug(f'Lemma !({gen}) added to F_1..F_{i}')
        return True

    def _push(self, cube: Cube, i: int) -> None:
        """
        Move a lemma from level i to level i+1, dropping what it subsumes there
        """
        self.levels[i].remove(cube)
        nxt = [d for d in self.levels[i + 1] if not cube.subsumes(d)]
        self.stats.bump('lemmas_subsumed', len(self.levels[i + 1]) - len(nxt))
        nxt.append(cube)
        self.levels[i + 1] = nxt
        self.stats.bump('pushes')
        if self.contexts is not None:
            self.contexts.push_lemma(cube, i + 1)

    def propagate(self, k: int) -> bool:
        """
        For i = 1..k-1 push every lemma of F_i minus F_{i+1} that is inductive relative
        to F_i. Returns True as soon as some F_i equals F_{i+1}.
        :param k:
        :return:
        """
        assert self.contexts is not None
        assert k == self.k
        for i in range(1, k):
            for cube in list(self.levels[i]):
                if cube not in self.levels[i]:
                    continue
                holds, _ = self.contexts.relind(cube, i)
                if holds:
                    self._push(cube, i)
            if len(self.levels[i]) == 0:
                self.fixpoint = i
                self.log.debug(f'F_{i} = F_{i + 1}, inductive invariant with '
                               f'{len(self.lemmas_at(i))} lemmas')
                return True
        return False

    def extract_invariant(self) -> List[Clause]:
        """
        The lemmas of the frame found equal to its successor by propagate
        :return: clause set
        """
        if self.fixpoint is None:
            raise NotAtFixpoint()
        return [c.negate() for c in self.lemmas_at(self.fixpoint)]

    def check_canonical(self) -> None:
        for j, level in enumerate(self.levels):
            for d in level:
                for jj in range(j, len(self.levels)):
                    for e in self.levels[jj]:
                        if e is not d and e.subsumes(d):
                            raise FrameInvariantViolation(f'lemma !({d}) at level {j} is subsumed by '
                                                          f'!({e}) at level {jj}')

    def verify(self, backend: str = 'minisat22') -> None:
        """
        Debug check of the frame invariants with fresh solvers: canonical storage,
        no lemma excludes an initial state (F_0 = I implies F_1), and
        F_i & T implies F_{i+1}' for i = 0..k-1.
        """
        self.check_canonical()
        for cube in self.lemmas_at(1):
            if self.ts.intersects_initial(cube):
                raise FrameInvariantViolation(f'lemma !({cube}) excludes an initial state')
        transition = encode_transition(self.ts).clauses
        for i in range(0, self.k):
            clauses = transition + [[to_dimacs(lit) for lit in c] for c in self.frame_clauses(i)]
            with Solver(name=backend, bootstrap_with=clauses) as s:
                for cube in self.lemmas_at(i + 1):
                    if s.solve(assumptions=[to_dimacs(lit) for lit in self.ts.prime(cube)]):
                        raise FrameInvariantViolation(f'F_{i} & T does not imply lemma !({cube}) '
                                                      f'of F_{i + 1} in the next state')

    def summary(self) -> List[Tuple[int, int]]:
        return [(j, len(level)) for j, level in enumerate(self.levels)]

    def __str__(self):
        return ' '.join(f'F{j}:{n}' for j, n in self.summary()[1:])


class FrameException(Exception):
    """
    base exception for frame handling
    """
    def __init__(self, msg: str):
        super().__init__(f"{self.__class__.__name__}: {msg}")


class NotAtFixpoint(FrameException):

    def __init__(self):
        super().__init__('propagation has not found two equal adjacent frames')


class FrameInvariantViolation(FrameException):

    def __init__(self, msg: str):
        super().__init__(msg)
