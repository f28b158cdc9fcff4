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
Exported evidence for verdicts: AIGER stimulus witnesses for counterexamples, and
inductive invariants either as plain text (one clause per line over latch names)
or as an AIGER circuit that extends the checked one with an output computing the
invariant.
"""
from typing import List

from dynpdr.aiger.aiger_circuit import AigerCircuit, AndGate, to_transition_system
from dynpdr.logic.literals import Clause, make_lit
from dynpdr.logic.transition_system import TransitionSystem
from dynpdr.ic3.verdict import TraceStep
from dynpdr.oracle.certify import input_index
from dynpdr.oracle.simulator import NetlistSimulator

INVARIANT_HEADER = 'c inductive invariant, one clause per line, ! negates a latch'


def _bits(ts: TransitionSystem, lits, variables) -> str:
    values = {lit >> 1: not lit & 1 for lit in lits}
    return ''.join('1' if values.get(v, False) else '0' for v in variables)


def witness_text(ts: TransitionSystem, trace: List[TraceStep], property_index: int = 0) -> str:
    """
    AIGER witness: status line, violated property, initial latch values,
    then one line of input values per step and a terminating dot
    :param ts:
    :param trace: counterexample from an initial state to a bad state
    :param property_index: index of the violated bad (or output) literal
    :return:
    """
    assert trace
    lines = ['1', f'b{property_index}', _bits(ts, trace[0].state, ts.state_vars)]
    for step in trace:
        lines.append(_bits(ts, step.inputs, ts.input_vars))
    lines.append('.')
    return '\n'.join(lines) + '\n'


def fired_property(circuit: AigerCircuit, trace: List[TraceStep]) -> int:
    """
    Index of the first property literal of circuit raised by the last step of a
    counterexample. Outputs standing in for bad literals are numbered the same way.
    """
    assert trace
    last = trace[-1]
    for j in range(len(circuit.properties())):
        ts = to_transition_system(circuit, property_index=j)
        _, bad = NetlistSimulator(ts).step(ts.state_to_index(last.state), input_index(ts, last.inputs))
        if bad:
            return j
    raise CertificateException(f'No property of {circuit} holds in the last state of the trace')


def write_witness(ts: TransitionSystem, trace: List[TraceStep], file_name: str, property_index: int = 0) -> None:
    with open(file_name, 'w') as f:
        f.write(witness_text(ts, trace, property_index))


def invariant_text(ts: TransitionSystem, invariant: List[Clause]) -> str:
    """
    Plain invariant listing; an empty invariant (true) is the header alone
    """
    lines = [INVARIANT_HEADER]
    for clause in invariant:
        lines.append(' | '.join(('!' if lit & 1 else '') + ts.state_names[ts.state_index(lit >> 1)]
                                for lit in clause))
    return '\n'.join(lines) + '\n'


def write_invariant(ts: TransitionSystem, invariant: List[Clause], file_name: str) -> None:
    with open(file_name, 'w') as f:
        f.write(invariant_text(ts, invariant))


def invariant_circuit(circuit: AigerCircuit, invariant: List[Clause]) -> AigerCircuit:
    """
    Copy of circuit with AND gates computing the invariant over its latches and
    one extra output carrying it. Clause literals are latch literals of circuit.
    :param circuit: the checked circuit
    :param invariant: clause set
    :return: certificate circuit
    """
    gates = [AndGate(lhs=g.lhs, rhs0=g.rhs0, rhs1=g.rhs1) for g in circuit.and_gates]
    next_var = circuit.max_var_index + 1

    def conj(a: int, b: int) -> int:
        nonlocal next_var
        lhs = make_lit(next_var)
        next_var += 1
        gates.append(AndGate(lhs=lhs, rhs0=max(a, b), rhs1=min(a, b)))
        return lhs

    def conj_all(lits: List[int]) -> int:
        if not lits:
            return 1
        acc = lits[0]
        for lit in lits[1:]:
            acc = conj(acc, lit)
        return acc

    clause_lits = list()
    for clause in invariant:
        # a | b | ... = !(!a & !b & ...)
        clause_lits.append(conj_all([lit ^ 1 for lit in clause]) ^ 1)
    inv = conj_all(clause_lits)

    symbols = dict(circuit.symbols)
    symbols[('o', len(circuit.outputs))] = 'invariant'
    return AigerCircuit(max_var_index=next_var - 1, inputs=circuit.inputs, latches=circuit.latches,
                        outputs=circuit.outputs + [inv], bad=circuit.bad, and_gates=gates,
                        symbols=symbols, comments=circuit.comments + ['invariant certificate'])


class CertificateException(Exception):

    def __init__(self, msg: str):
        super().__init__(f"CertificateException: {msg}")
