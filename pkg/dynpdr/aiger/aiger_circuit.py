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
In-memory AIGER circuit (and-inverter graph with latches) and its conversion into
a transition system.
"""
from typing import List, Dict, Tuple, Optional, Set

import networkx as nx
from recordclass import recordclass

from dynpdr.logic.literals import Cube, make_lit
from dynpdr.logic.transition_system import TransitionSystem
from dynpdr.logging.dynpdr_logger import get_logger

# reset is 0, 1 or None for an uninitialized latch
Latch = recordclass('Latch', ['current', 'next', 'reset'])
AndGate = recordclass('AndGate', ['lhs', 'rhs0', 'rhs1'])


class AigerCircuit:
    """
    AIGER circuit. Literals are AIGER literals (2*var + sign, 0 is false, 1 is true).
    symbols maps (kind, index) with kind in 'i', 'l', 'o', 'b' to a name.
    """

    def __init__(self, *, max_var_index: int, inputs: List[int] = None, latches: List[Latch] = None,
                 outputs: List[int] = None, bad: List[int] = None, and_gates: List[AndGate] = None,
                 symbols: Dict[Tuple[str, int], str] = None, comments: List[str] = None):
        self.max_var_index = max_var_index
        self.inputs = list(inputs or [])
        self.latches = list(latches or [])
        self.outputs = list(outputs or [])
        self.bad = list(bad or [])
        self.and_gates = list(and_gates or [])
        self.symbols = dict(symbols or {})
        self.comments = list(comments or [])

    def validate(self) -> None:
        """
        Check structural invariants: every variable defined at most once, gates
        in topological order, literals within range.
        """
        defined = dict()

        def define(lit: int, what: str, index: int):
            if lit & 1 or lit < 2:
                raise MalformedLine(line=None, msg=f'{what} {index} defines invalid literal {lit}')
            var = lit >> 1
            if var > self.max_var_index:
                raise MalformedLine(line=None, msg=f'{what} {index} literal {lit} exceeds maximum '
                                                   f'variable index {self.max_var_index}')
            if var in defined:
                raise DuplicateDefinition(var=var, line=None,
                                          msg=f'{what} {index} redefines variable {var} '
                                              f'already defined by {defined[var]}')
            defined[var] = f'{what} {index}'

        for i, lit in enumerate(self.inputs):
            define(lit, 'input', i)
        for i, latch in enumerate(self.latches):
            define(latch.current, 'latch', i)
        for i, gate in enumerate(self.and_gates):
            define(gate.lhs, 'and gate', i)
            if gate.lhs <= gate.rhs0 or gate.lhs <= gate.rhs1:
                raise NonMonotonicGate(lhs=gate.lhs, line=None)
        limit = 2 * self.max_var_index + 1
        used = [latch.next for latch in self.latches] + self.outputs + self.bad + \
            [g.rhs0 for g in self.and_gates] + [g.rhs1 for g in self.and_gates]
        for lit in used:
            if lit > limit:
                raise MalformedLine(line=None, msg=f'literal {lit} exceeds maximum variable '
                                                   f'index {self.max_var_index}')
            if lit > 1 and (lit >> 1) not in defined:
                raise MalformedLine(line=None, msg=f'literal {lit} uses undefined variable {lit >> 1}')

    def properties(self) -> List[int]:
        """
        Literals usable as !P: bad-state literals if present, else outputs
        """
        return list(self.bad) if self.bad else list(self.outputs)

    def dependency_graph(self) -> nx.DiGraph:
        """
        Combinational dependency graph: an edge from each operand variable to the
        gate variable it feeds. Latch feedback is not represented.
        """
        g = nx.DiGraph()
        g.add_nodes_from(lit >> 1 for lit in self.inputs)
        g.add_nodes_from(latch.current >> 1 for latch in self.latches)
        for gate in self.and_gates:
            g.add_node(gate.lhs >> 1)
            for rhs in (gate.rhs0, gate.rhs1):
                if rhs > 1:
                    g.add_edge(rhs >> 1, gate.lhs >> 1)
        return g

    def combinational_order(self) -> List[AndGate]:
        """
        AND gates in a deterministic topological order
        """
        gates = {g.lhs >> 1: g for g in self.and_gates}
        order = nx.lexicographical_topological_sort(self.dependency_graph())
        return [gates[v] for v in order if v in gates]

    def cone_of_influence(self, lits: List[int]) -> Set[int]:
        """
        Variables (inputs, latches, gates) the given literals depend on, following
        latch next-state functions to a fixpoint.
        """
        g = self.dependency_graph()
        next_of = {latch.current >> 1: latch.next for latch in self.latches}
        cone = set()
        todo = [lit >> 1 for lit in lits if lit > 1]
        while todo:
            v = todo.pop()
            if v in cone:
                continue
            support = {v} | nx.ancestors(g, v)
            for u in support - cone:
                cone.add(u)
                if u in next_of and next_of[u] > 1:
                    todo.append(next_of[u] >> 1)
        return cone

    def __eq__(self, other):
        if not isinstance(other, AigerCircuit):
            return False
        return (self.max_var_index == other.max_var_index and
                self.inputs == other.inputs and
                [tuple(x) for x in self.latches] == [tuple(x) for x in other.latches] and
                self.outputs == other.outputs and self.bad == other.bad and
                [tuple(x) for x in self.and_gates] == [tuple(x) for x in other.and_gates])

    def __repr__(self):
        return (f'AigerCircuit(M={self.max_var_index}, I={len(self.inputs)}, L={len(self.latches)}, '
                f'O={len(self.outputs)}, B={len(self.bad)}, A={len(self.and_gates)})')


def to_transition_system(circuit: AigerCircuit, property_index: Optional[int] = None) -> TransitionSystem:
    """
    Build the transition system of a circuit. X are latch variables, Y input variables,
    I the cube of reset literals (uninitialized latches unconstrained), P = !bad.
    Several bad literals are disjoined unless property_index selects one.
    :param circuit:
    :param property_index:
    :return:
    """
    props = circuit.properties()
    if len(props) == 0:
        raise NoProperty()
    if property_index is not None:
        if property_index < 0 or property_index >= len(props):
            raise NoProperty(msg=f'Property index {property_index} out of range, '
                                 f'circuit has {len(props)} properties')
        props = [props[property_index]]

    state_vars = [latch.current >> 1 for latch in circuit.latches]
    input_vars = [lit >> 1 for lit in circuit.inputs]
    next_base = circuit.max_var_index + 1
    next_vars = list(range(next_base, next_base + len(state_vars)))
    init = Cube(make_lit(latch.current >> 1, latch.reset == 0)
                for latch in circuit.latches if latch.reset is not None)
    gates = [(g.lhs, g.rhs0, g.rhs1) for g in circuit.combinational_order()]
    num_vars = next_base + len(state_vars)

    bad = props[0]
    if len(props) > 1:
        # bad = !(!b0 & !b1 & ...), one auxiliary gate per extra literal
        acc = props[0] ^ 1
        for b in props[1:]:
            lhs = make_lit(num_vars)
            num_vars += 1
            gates.append((lhs, acc, b ^ 1))
            acc = lhs
        bad = acc ^ 1

    state_names = [circuit.symbols.get(('l', i), f'l{i}') for i in range(len(state_vars))]
    input_names = [circuit.symbols.get(('i', i), f'i{i}') for i in range(len(input_vars))]
    ts = TransitionSystem(state_vars=state_vars, input_vars=input_vars, next_vars=next_vars,
                          init=init, gates=gates, next_fns=[latch.next for latch in circuit.latches],
                          bad=bad, num_vars=num_vars, state_names=state_names,
                          input_names=input_names)
    get_logger().debug(f'Built {ts} from {circuit}')
    return ts


class AigerException(Exception):
    """
    base exception for AIGER reading and conversion
    """
    def __init__(self, *, msg: str, line: Optional[int] = None, offset: Optional[int] = None):
        self.line = line
        self.offset = offset
        where = ''
        if line is not None:
            where = f' at line {line}'
        elif offset is not None:
            where = f' at byte offset {offset}'
        super().__init__(f"{self.__class__.__name__}: {msg}{where}")


class MalformedHeader(AigerException):

    def __init__(self, *, msg: str, line: Optional[int] = 1):
        super().__init__(msg=f'Malformed header: {msg}', line=line)


class MalformedLine(AigerException):

    def __init__(self, *, msg: str, line: Optional[int]):
        super().__init__(msg=msg, line=line)


class NonMonotonicGate(AigerException):

    def __init__(self, *, lhs: int, line: Optional[int]):
        super().__init__(msg=f'AND gate {lhs} is not greater than both of its operands', line=line)


class DuplicateDefinition(AigerException):

    def __init__(self, *, var: int, msg: str, line: Optional[int]):
        self.var = var
        super().__init__(msg=msg, line=line)


class TruncatedFile(AigerException):

    def __init__(self, *, msg: str, line: Optional[int] = None, offset: Optional[int] = None):
        super().__init__(msg=f'Truncated file: {msg}', line=line, offset=offset)


class UnsupportedFeature(AigerException):

    def __init__(self, *, msg: str):
        super().__init__(msg=msg, line=1)


class NoProperty(AigerException):

    def __init__(self, *, msg: str = 'Circuit declares neither outputs nor bad-state literals'):
        super().__init__(msg=msg)
