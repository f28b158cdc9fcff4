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
Abstract incremental SAT solver used by the solving contexts. Implementations
must support solving under assumptions and return total models over the variables
they have seen.
"""
from abc import ABC, abstractmethod
from typing import List, Optional


class ABCSatSolver(ABC):
    """
    Minimal incremental solver contract. Literals are DIMACS integers.
    """

    @abstractmethod
    def add_clause(self, clause: List[int]) -> None:
        """
        Add a clause permanently
        :param clause:
        :return:
        """

    @abstractmethod
    def solve(self, assumptions: List[int]) -> Optional[bool]:
        """
        Solve under assumptions. Returns True (SAT), False (UNSAT) or
        None when the solver gave up (resource limit)
        :param assumptions:
        :return:
        """

    @abstractmethod
    def get_model(self) -> List[int]:
        """
        Model of the last satisfiable call as a list of DIMACS literals
        where position v-1 holds +/-v
        :return:
        """

    def set_phases(self, literals: List[int]) -> None:
        """
        Preferred polarities for decision variables, ignored by default
        :param literals:
        :return:
        """

    @abstractmethod
    def delete(self) -> None:
        """
        Release solver resources
        :return:
        """


class SatException(Exception):
    """
    base exception for SAT backend errors
    """
    def __init__(self, msg: str):
        super().__init__(f"{self.__class__.__name__}: {msg}")


class SolverFailure(SatException):
    """
    Solver could not decide a query (resource exhaustion or backend error)
    """
    def __init__(self, *, frame: Optional[int], msg: str):
        self.frame = frame
        super().__init__(f'frame {frame}: {msg}' if frame is not None else msg)
