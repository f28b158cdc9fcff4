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
Incremental solver on top of python-sat
"""
from typing import List, Optional

from pysat.solvers import NoSuchSolverError, Solver, SolverNames

from dynpdr.sat.abc_sat_solver import ABCSatSolver, SolverFailure
from dynpdr.pluggable import PluggableRegistry, PluggableType, SatBackendPluggable


class PySatSolver(ABCSatSolver):
    """
    Wraps pysat.solvers.Solver. An optional per-query conflict budget turns
    solve() into solve_limited(), which may return None.
    """

    def __init__(self, *, name: str = 'minisat22', clauses: List[List[int]] = None,
                 conf_budget: Optional[int] = None):
        try:
            self.solver = Solver(name=name, bootstrap_with=clauses or [])
        except (NoSuchSolverError, NotImplementedError, ValueError) as e:
            raise SolverFailure(frame=None, msg=f'Unable to create python-sat solver {name}: {e}')
        self.name = name
        self.conf_budget = conf_budget

    def add_clause(self, clause: List[int]) -> None:
        self.solver.add_clause(clause)

    def solve(self, assumptions: List[int]) -> Optional[bool]:
        if self.conf_budget is None:
            return self.solver.solve(assumptions=assumptions)
        self.solver.conf_budget(self.conf_budget)
        return self.solver.solve_limited(assumptions=assumptions)

    def get_model(self) -> List[int]:
        return self.solver.get_model()

    def set_phases(self, literals: List[int]) -> None:
        try:
            self.solver.set_phases(literals=literals)
        except NotImplementedError:
            pass

    def delete(self) -> None:
        self.solver.delete()


def known_backend(name: str) -> bool:
    """
    True if python-sat knows this solver name
    """
    return any(name in names for _, names in vars(SolverNames).items() if isinstance(names, tuple))


def make_solver(*, name: str, clauses: List[List[int]], seed: int = 0,
                conf_budget: Optional[int] = None) -> ABCSatSolver:
    """
    Create a solver, honoring a registered SatBackend pluggable first
    :param name:
    :param clauses:
    :param seed:
    :param conf_budget:
    :return:
    """
    registry = PluggableRegistry()
    if registry.pluggable_registered(t=PluggableType.SatBackend):
        plug = registry.get_method_callable(t=PluggableType.SatBackend,
                                            method=SatBackendPluggable.PLUGGABLE_MAKE_SOLVER)
        return plug(name=name, clauses=clauses, seed=seed)
    return PySatSolver(name=name, clauses=clauses, conf_budget=conf_budget)
