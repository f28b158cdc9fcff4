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
Vectorized netlist simulation. Rows of a batch are (state, input) pairs encoded as
row = state + (input << |X|), with bit j of state being state_vars[j] and bit j of
input being input_vars[j]. Gates are evaluated in order over boolean numpy vectors,
one vector per variable.
"""
from typing import Dict, Tuple

import numpy as np

from dynpdr.logic.transition_system import TransitionSystem


class NetlistSimulator:
    """
    Evaluates next-state functions and the bad literal for whole batches of rows
    """
    CHUNK = 1 << 16

    def __init__(self, ts: TransitionSystem):
        self.ts = ts
        self.nx = ts.num_latches
        self.ny = ts.num_inputs

    def _eval(self, rows: np.ndarray) -> Dict[int, np.ndarray]:
        n = rows.shape[0]
        vals = {0: np.zeros(n, dtype=bool)}
        for j, v in enumerate(self.ts.state_vars):
            vals[v] = ((rows >> np.uint64(j)) & np.uint64(1)).astype(bool)
        for j, v in enumerate(self.ts.input_vars):
            vals[v] = ((rows >> np.uint64(self.nx + j)) & np.uint64(1)).astype(bool)
        for lhs, rhs0, rhs1 in self.ts.gates:
            vals[lhs >> 1] = self._lit(vals, rhs0) & self._lit(vals, rhs1)
        return vals

    @staticmethod
    def _lit(vals: Dict[int, np.ndarray], lit: int) -> np.ndarray:
        v = vals[lit >> 1]
        return ~v if lit & 1 else v

    def evaluate(self, states: np.ndarray, inputs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        Successor states and bad flags of a batch
        :param states: state indices
        :param inputs: input indices, same shape
        :return: (next state indices, bad flags)
        """
        rows = np.asarray(states, dtype=np.uint64) + (np.asarray(inputs, dtype=np.uint64) << np.uint64(self.nx))
        vals = self._eval(rows)
        nxt = np.zeros(rows.shape[0], dtype=np.uint64)
        for j, f in enumerate(self.ts.next_fns):
            nxt |= self._lit(vals, f).astype(np.uint64) << np.uint64(j)
        return nxt, self._lit(vals, self.ts.bad)

    def step(self, state: int, inputs: int) -> Tuple[int, bool]:
        nxt, bad = self.evaluate(np.array([state]), np.array([inputs]))
        return int(nxt[0]), bool(bad[0])

    def successor_table(self) -> Tuple[np.ndarray, np.ndarray]:
        """
        Full tables over all 2^(|X|+|Y|) rows, computed in chunks
        :return: (succ, bad) both shaped (2^|X|, 2^|Y|), indexed [state, input]
        """
        total = 1 << (self.nx + self.ny)
        succ = np.zeros(total, dtype=np.uint64)
        bad = np.zeros(total, dtype=bool)
        mask = np.uint64((1 << self.nx) - 1)
        for start in range(0, total, self.CHUNK):
            rows = np.arange(start, min(start + self.CHUNK, total), dtype=np.uint64)
            nxt, b = self.evaluate(rows & mask, rows >> np.uint64(self.nx))
            succ[start:start + rows.shape[0]] = nxt
            bad[start:start + rows.shape[0]] = b
        # row = state + (input << nx): input is the slow index
        shape = (1 << self.ny, 1 << self.nx)
        return succ.reshape(shape).T, bad.reshape(shape).T

    def initial_mask(self) -> np.ndarray:
        """
        Membership vector of the initial states over all 2^|X| states
        """
        states = np.arange(1 << self.nx, dtype=np.uint64)
        ok = np.ones(states.shape[0], dtype=bool)
        for lit in self.ts.init:
            j = self.ts.state_index(lit >> 1)
            bit = ((states >> np.uint64(j)) & np.uint64(1)).astype(bool)
            ok &= ~bit if lit & 1 else bit
        return ok
