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
Result of a check() run.
"""
import enum
from typing import List, Optional, Dict, Any

from recordclass import recordclass

from dynpdr.logic.literals import Clause

# one counterexample step: full state cube over X and the input cube over Y applied in it
TraceStep = recordclass('TraceStep', ['state', 'inputs'])


class UnknownReason(enum.Enum):
    """
    Why a run ended without a verdict
    """
    Timeout = enum.auto()
    MemOut = enum.auto()
    SolverFailure = enum.auto()
    FrameBound = enum.auto()

    def __repr__(self):
        return self.name

    def __str__(self):
        return self.name


class VerdictKind(enum.Enum):
    Safe = enum.auto()
    Unsafe = enum.auto()
    Unknown = enum.auto()

    def __repr__(self):
        return self.name

    def __str__(self):
        return self.name

    @property
    def exit_code(self) -> int:
        return {VerdictKind.Safe: 0, VerdictKind.Unsafe: 1, VerdictKind.Unknown: 2}[self]


class Verdict:
    """
    Safe carries an inductive invariant, Unsafe a counterexample trace starting in an
    initial state and ending in a bad state, Unknown a reason.
    """

    def __init__(self, *, kind: VerdictKind, invariant: Optional[List[Clause]] = None,
                 trace: Optional[List[TraceStep]] = None, stats: Optional[Dict[str, Any]] = None,
                 depth: int = 0, message: Optional[str] = None,
                 reason: Optional[UnknownReason] = None):
        if kind == VerdictKind.Safe:
            assert invariant is not None
        if kind == VerdictKind.Unsafe:
            assert trace
        self.kind = kind
        self.invariant = invariant
        self.trace = trace
        self.stats = stats if stats is not None else dict()
        self.depth = depth
        self.message = message
        self.reason = reason

    @property
    def safe(self) -> bool:
        return self.kind == VerdictKind.Safe

    @property
    def unsafe(self) -> bool:
        return self.kind == VerdictKind.Unsafe

    def __str__(self):
        if self.kind == VerdictKind.Safe:
            detail = f'invariant of {len(self.invariant)} clauses'
        elif self.kind == VerdictKind.Unsafe:
            detail = f'trace of {len(self.trace)} states'
        else:
            detail = self.message or 'resource limit'
        return f'{self.kind} at depth {self.depth}: {detail}'
