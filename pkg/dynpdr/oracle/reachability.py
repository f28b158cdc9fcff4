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
Explicit-state reachability for small systems, used as ground truth.
"""
from typing import List, Optional

import numpy as np
from recordclass import recordclass

from dynpdr.logic.literals import Clause, Cube, LiteralSet
from dynpdr.logic.transition_system import TransitionSystem
from dynpdr.ic3.verdict import VerdictKind
from dynpdr.oracle.simulator import NetlistSimulator

MAX_BITS = 24

# reachable: StateSet, verdict: Safe or Unsafe, depth: steps to the first bad state
# (or BFS depth of the reachable set when Safe, the search stops at the first bad layer),
# layers: newly reached state indices per depth
ReachResult = recordclass('ReachResult', ['reachable', 'verdict', 'depth', 'layers'])


class StateSet:
    """
    Set of states over |X| bits, kept as a membership vector of 2^|X| entries
    """

    def __init__(self, ts: TransitionSystem, members: Optional[np.ndarray] = None):
        if ts.num_latches > MAX_BITS:
            raise TooLarge(bits=ts.num_latches)
        self.ts = ts
        self.universe_bits = ts.num_latches
        if members is None:
            members = np.zeros(1 << self.universe_bits, dtype=bool)
        assert members.shape == (1 << self.universe_bits,)
        self.members = members

    def __len__(self):
        return int(np.count_nonzero(self.members))

    def __contains__(self, state) -> bool:
        """
        state is an index or a full state cube
        """
        if isinstance(state, LiteralSet):
            state = self.ts.state_to_index(state)
        return bool(self.members[state])

    def indices(self) -> List[int]:
        return [int(x) for x in np.flatnonzero(self.members)]

    def cubes(self) -> List[Cube]:
        return [self.ts.index_to_state(i) for i in self.indices()]

    def satisfies(self, clauses: List[Clause]) -> 'StateSet':
        """
        States of the universe that satisfy a clause set
        """
        states = np.arange(1 << self.universe_bits, dtype=np.uint64)
        ok = np.ones(states.shape[0], dtype=bool)
        for clause in clauses:
            sat = np.zeros(states.shape[0], dtype=bool)
            for lit in clause:
                bit = ((states >> np.uint64(self.ts.state_index(lit >> 1))) & np.uint64(1)).astype(bool)
                sat |= ~bit if lit & 1 else bit
            ok &= sat
        return StateSet(self.ts, ok)

    def issubset(self, other: 'StateSet') -> bool:
        return not bool(np.any(self.members & ~other.members))

    def blocking_clauses(self) -> List[Clause]:
        """
        One clause per non-member excluding exactly that state; their conjunction
        holds in exactly the member states
        """
        return [self.ts.index_to_state(int(i)).negate() for i in np.flatnonzero(~self.members)]


def brute_force_reachable(ts: TransitionSystem) -> ReachResult:
    """
    Breadth-first search from all initial states. Unsafe iff a reachable state has an
    input valuation raising bad; depth is then the minimal number of steps to it.
    :param ts:
    :return: ReachResult
    """
    if ts.num_latches + ts.num_inputs > MAX_BITS:
        raise TooLarge(bits=ts.num_latches + ts.num_inputs)
    sim = NetlistSimulator(ts)
    succ, bad = sim.successor_table()
    bad_state = bad.any(axis=1)

    visited = sim.initial_mask()
    frontier = np.flatnonzero(visited)
    layers = [frontier]
    depth = 0
    while True:
        if np.any(bad_state[frontier]):
            return ReachResult(reachable=StateSet(ts, visited), verdict=VerdictKind.Unsafe, depth=depth,
                               layers=layers)
        nxt = np.unique(succ[frontier].ravel()).astype(np.int64)
        nxt = nxt[~visited[nxt]]
        if nxt.shape[0] == 0:
            return ReachResult(reachable=StateSet(ts, visited), verdict=VerdictKind.Safe, depth=depth,
                               layers=layers)
        visited[nxt] = True
        frontier = nxt
        layers.append(frontier)
        depth += 1


def reachable_within(result: ReachResult, ts: TransitionSystem, i: int) -> StateSet:
    """
    States reachable in at most i steps, from the BFS layers
    """
    members = np.zeros(1 << ts.num_latches, dtype=bool)
    for layer in result.layers[:i + 1]:
        members[layer] = True
    return StateSet(ts, members)


class OracleException(Exception):
    """
    base oracle exception
    """
    def __init__(self, msg: str):
        super().__init__(f"{self.__class__.__name__}: {msg}")


class TooLarge(OracleException):

    def __init__(self, *, bits: int):
        super().__init__(f'{bits} state and input bits exceed the explicit-state limit of {MAX_BITS}')
