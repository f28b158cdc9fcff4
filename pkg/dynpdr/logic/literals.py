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
Literals, cubes and clauses over the variables of a transition system.
A literal is the integer 2*var + sign, sign 1 meaning negated, which is the same
convention AIGER uses, so circuit literals can be used directly. Variable 0 is the
constant false. Cubes and clauses keep their literals sorted, therefore by variable.
"""
from typing import Iterable, Tuple


def make_lit(var: int, negated: bool = False) -> int:
    assert var >= 0
    return (var << 1) | int(negated)


def lit_var(lit: int) -> int:
    return lit >> 1


def negate(lit: int) -> int:
    return lit ^ 1


def to_dimacs(lit: int) -> int:
    """
    DIMACS variable of var v is v + 1 (DIMACS has no variable 0)
    """
    return -((lit >> 1) + 1) if lit & 1 else (lit >> 1) + 1


def from_dimacs(dlit: int) -> int:
    assert dlit != 0
    return make_lit(abs(dlit) - 1, dlit < 0)


class LiteralSet:
    """
    Ordered duplicate-free set of literals. No variable may occur with both signs.
    Instances are immutable and hashable.
    """
    __slots__ = ('lits', '_set')

    def __init__(self, lits: Iterable[int] = ()):
        s = frozenset(lits)
        ordered = tuple(sorted(s))
        for a, b in zip(ordered, ordered[1:]):
            if a >> 1 == b >> 1:
                raise LogicException(f'Variable {a >> 1} occurs with both signs in {ordered}')
        self.lits = ordered
        self._set = s

    def vars(self) -> Tuple[int, ...]:
        return tuple(lit >> 1 for lit in self.lits)

    def subsumes(self, other: 'LiteralSet') -> bool:
        """
        True iff our literals are a subset of the other's. Linear merge over
        the sorted tuples.
        """
        mine = self.lits
        theirs = other.lits
        if len(mine) > len(theirs):
            return False
        j = 0
        n = len(theirs)
        for lit in mine:
            while j < n and theirs[j] < lit:
                j += 1
            if j == n or theirs[j] != lit:
                return False
            j += 1
        return True

    def __iter__(self):
        return iter(self.lits)

    def __len__(self):
        return len(self.lits)

    def __contains__(self, lit):
        return lit in self._set

    def __eq__(self, other):
        return type(self) is type(other) and self.lits == other.lits

    def __hash__(self):
        return hash((type(self).__name__, self.lits))

    def __lt__(self, other):
        return self.lits < other.lits

    def _lit_str(self, lit: int) -> str:
        return ('!' if lit & 1 else '') + 'v' + str(lit >> 1)

    def __repr__(self):
        return f'{type(self).__name__}({",".join(str(lit) for lit in self.lits)})'


class Cube(LiteralSet):
    """
    Conjunction of literals
    """
    __slots__ = ()

    def negate(self) -> 'Clause':
        return Clause(lit ^ 1 for lit in self.lits)

    def without(self, lit: int) -> 'Cube':
        return Cube(x for x in self.lits if x != lit)

    def intersect(self, other: LiteralSet) -> 'Cube':
        """
        Literals common to both (the 'c := c & p' step of literal dropping)
        """
        return Cube(x for x in self.lits if x in other)

    def __str__(self):
        return ' & '.join(self._lit_str(x) for x in self.lits) if self.lits else 'true'


class Clause(LiteralSet):
    """
    Disjunction of literals
    """
    __slots__ = ()

    def negate(self) -> Cube:
        return Cube(lit ^ 1 for lit in self.lits)

    def __str__(self):
        return ' | '.join(self._lit_str(x) for x in self.lits) if self.lits else 'false'


def subsumes(a: LiteralSet, b: LiteralSet) -> bool:
    """
    a subsumes b iff a is a subset of b as literal sets: for clauses a is the stronger
    clause, for blocked cubes a is the more general cube.
    :param a:
    :param b:
    :return:
    """
    assert type(a) is type(b)
    return a.subsumes(b)


class LogicException(Exception):
    """
    base exception for logic core errors
    """
    def __init__(self, msg: str):
        super().__init__(f"{self.__class__.__name__}: {msg}")


class VarNotStateVar(LogicException):
    """
    A literal expected over state variables is not
    """
    def __init__(self, *, lit: int):
        self.lit = lit
        super().__init__(f'Literal {lit} (variable {lit >> 1}) is not over a state variable')
