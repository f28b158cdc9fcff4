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
Tseitin encoding of the transition relation into CNF over DIMACS variables
(variable v of the transition system is DIMACS variable v + 1).
"""
from pysat.formula import CNF

from dynpdr.logic.literals import to_dimacs
from dynpdr.logic.transition_system import TransitionSystem


def encode_transition(ts: TransitionSystem) -> CNF:
    """
    Encode T: the constant, three clauses per AND gate and two clauses binding each
    next-state variable to its next-state function. Satisfying assignments restricted
    to (X, Y, X') are exactly the transitions of ts.
    :param ts:
    :return: pysat CNF
    """
    cnf = CNF()
    # variable 0 is constant false
    cnf.append([-1])
    for lhs, rhs0, rhs1 in ts.gates:
        x = to_dimacs(lhs)
        a = to_dimacs(rhs0)
        b = to_dimacs(rhs1)
        cnf.append([-x, a])
        cnf.append([-x, b])
        cnf.append([x, -a, -b])
    for nv, fn in zip(ts.next_vars, ts.next_fns):
        xp = nv + 1
        f = to_dimacs(fn)
        cnf.append([-xp, f])
        cnf.append([xp, -f])
    return cnf


def write_dimacs(ts: TransitionSystem, file_name: str) -> None:
    """
    Export the transition relation for cross-checking with external solvers
    :param ts:
    :param file_name:
    :return:
    """
    cnf = encode_transition(ts)
    comments = [f'c transition relation: {ts.num_latches} latches, {ts.num_inputs} inputs, '
                f'{len(ts.gates)} gates',
                f'c state vars {" ".join(str(v + 1) for v in ts.state_vars)}',
                f'c input vars {" ".join(str(v + 1) for v in ts.input_vars)}',
                f'c next vars {" ".join(str(v + 1) for v in ts.next_vars)}',
                f'c bad literal {to_dimacs(ts.bad)}']
    cnf.to_file(file_name, comments=comments)
