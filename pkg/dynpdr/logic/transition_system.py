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
Transition system <X, Y, I, T> with a safety property, kept as a gate-level netlist.
"""
from typing import List, Tuple, Dict, Iterable, Optional

from dynpdr.logic.literals import Cube, LiteralSet, VarNotStateVar, make_lit


class TransitionSystem:
    """
    Verification problem built from a circuit. Variable ids are those of the circuit
    for inputs, latches and gates; next-state variables X' and auxiliary gates
    (e.g. for disjoining several bad literals) are allocated above them.
    gates are (lhs, rhs0, rhs1) literal triples in topological order; next_fns[i]
    is the next-state literal of state_vars[i]; bad is the literal of !P.
    """

    def __init__(self, *, state_vars: List[int], input_vars: List[int], next_vars: List[int],
                 init: Cube, gates: List[Tuple[int, int, int]], next_fns: List[int], bad: int,
                 num_vars: int, state_names: Optional[List[str]] = None,
                 input_names: Optional[List[str]] = None):
        assert len(state_vars) == len(next_vars) == len(next_fns)
        self.state_vars = list(state_vars)
        self.input_vars = list(input_vars)
        self.next_vars = list(next_vars)
        self.init = init
        self.gates = list(gates)
        self.next_fns = list(next_fns)
        self.bad = bad
        # variables are 0 .. num_vars-1
        self.num_vars = num_vars
        self.state_names = state_names or [f'l{i}' for i in range(len(state_vars))]
        self.input_names = input_names or [f'i{i}' for i in range(len(input_vars))]

        self._prime = dict(zip(self.state_vars, self.next_vars))
        self._unprime = dict(zip(self.next_vars, self.state_vars))
        if len(self._prime) != len(self.state_vars) or len(self._unprime) != len(self.next_vars):
            raise TransitionSystemException('State/next variable mapping is not a bijection')
        if set(self.state_vars) & set(self.input_vars):
            raise TransitionSystemException('State and input variables overlap')
        for lit in init:
            if lit >> 1 not in self._prime:
                raise VarNotStateVar(lit=lit)
        self._init_conflicts = frozenset(lit ^ 1 for lit in init)
        self._state_index = {v: i for i, v in enumerate(self.state_vars)}

    @property
    def num_latches(self) -> int:
        return len(self.state_vars)

    @property
    def num_inputs(self) -> int:
        return len(self.input_vars)

    def is_state_var(self, var: int) -> bool:
        return var in self._prime

    def state_index(self, var: int) -> int:
        return self._state_index[var]

    def prime(self, c: LiteralSet) -> Cube:
        """
        Map a cube over X to the same cube over X', signs preserved
        :param c:
        :return:
        """
        ret = list()
        for lit in c:
            nv = self._prime.get(lit >> 1)
            if nv is None:
                raise VarNotStateVar(lit=lit)
            ret.append((nv << 1) | (lit & 1))
        return Cube(ret)

    def unprime(self, c: LiteralSet) -> Cube:
        ret = list()
        for lit in c:
            v = self._unprime.get(lit >> 1)
            if v is None:
                raise VarNotStateVar(lit=lit)
            ret.append((v << 1) | (lit & 1))
        return Cube(ret)

    def intersects_initial(self, c: Iterable[int]) -> bool:
        """
        True iff some initial state satisfies c. I is a (possibly partial) cube, so this
        is the syntactic check that no literal of c contradicts a literal of I.
        """
        for lit in c:
            if lit in self._init_conflicts:
                return False
        return True

    def state_cube(self, bits: Dict[int, bool]) -> Cube:
        """
        Full cube over X from a var -> value dictionary
        """
        return Cube(make_lit(v, not bits[v]) for v in self.state_vars)

    def input_cube(self, bits: Dict[int, bool]) -> Cube:
        return Cube(make_lit(v, not bits[v]) for v in self.input_vars)

    def state_to_index(self, c: LiteralSet) -> int:
        """
        Encode a full state cube as an integer, bit i being state_vars[i]
        """
        idx = 0
        for lit in c:
            if not lit & 1:
                idx |= 1 << self._state_index[lit >> 1]
        return idx

    def index_to_state(self, idx: int) -> Cube:
        return Cube(make_lit(v, not (idx >> i) & 1) for i, v in enumerate(self.state_vars))

    def __repr__(self):
        return (f'TransitionSystem(latches={self.num_latches}, inputs={self.num_inputs}, '
                f'gates={len(self.gates)}, bad={self.bad})')


class TransitionSystemException(Exception):

    def __init__(self, msg: str):
        super().__init__(f"TransitionSystemException: {msg}")
