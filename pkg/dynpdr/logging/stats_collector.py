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
Collects run statistics of the checker and renders them as a structured text line
suitable for logging and for the benchmark records.
"""
from types import MappingProxyType
from typing import Dict, Any


class StatsCollector:
    """
    Counters maintained during a single check() run. The dictionary returned by
    attributes property has the following structure:
    'queries': all SAT queries issued (relative induction, bad-state, propagation)
    'relind_queries': relative induction queries only
    'bad_queries': sat(F_k & !P) queries
    'lemmas': lemmas inserted into the frames
    'lemmas_subsumed': existing lemmas deleted because a stronger one arrived
    'literals_dropped': literals removed by generalization
    'ctg_blocks': predecessors blocked while generalizing
    'exctg_budget_exhaustions': extended blocking attempts stopped by the budget
    'obligations': proof obligations created
    'pushes': lemmas pushed forward by propagation
    'rebuilds': solver contexts rebuilt to drop released activations
    'frames': highest frame index reached
    'dyn_branches': dictionary of branch name:count for adaptive generalization
    """
    COUNTERS = ['queries', 'relind_queries', 'bad_queries', 'lemmas', 'lemmas_subsumed',
                'literals_dropped', 'ctg_blocks', 'exctg_budget_exhaustions',
                'obligations', 'pushes', 'rebuilds', 'frames']
    BRANCHES = ['standard', 'ctg', 'exctg']

    def __init__(self):
        self._attributes = dict()
        for c in StatsCollector.COUNTERS:
            self._attributes[c] = 0
        self._attributes['dyn_branches'] = {b: 0 for b in StatsCollector.BRANCHES}

    @property
    def attributes(self):
        return MappingProxyType(self._attributes)

    def bump(self, name: str, amount: int = 1) -> None:
        """
        Increment a named counter
        :param name:
        :param amount:
        :return:
        """
        if name not in self._attributes or name == 'dyn_branches':
            raise StatsCollectorException(f'Unknown counter {name}')
        self._attributes[name] += amount

    def raise_to(self, name: str, value: int) -> None:
        """
        Keep the maximum of the counter and value
        """
        if name not in self._attributes or name == 'dyn_branches':
            raise StatsCollectorException(f'Unknown counter {name}')
        if value > self._attributes[name]:
            self._attributes[name] = value

    def record_branch(self, branch: str) -> None:
        if branch not in self._attributes['dyn_branches']:
            raise StatsCollectorException(f'Unknown generalization branch {branch}')
        self._attributes['dyn_branches'][branch] += 1

    def get(self, name: str) -> Any:
        return self._attributes[name]

    def to_dict(self) -> Dict[str, Any]:
        """
        Plain copy of all counters, branch histogram included
        """
        d = dict(self._attributes)
        d['dyn_branches'] = dict(self._attributes['dyn_branches'])
        return d

    def __str__(self):
        """
        produce a single 'key value;key value' line, branch histogram last
        """
        counters = ';'.join([f'{c} {self._attributes[c]}' for c in StatsCollector.COUNTERS])
        branches = ','.join([f'{b}:{n}' for b, n in self._attributes['dyn_branches'].items()])
        return counters + ';dyn ' + branches

    def __repr__(self):
        return str(self.to_dict())


class StatsCollectorException(Exception):

    def __init__(self, msg: str):
        super().__init__(f"StatsCollectorException: {msg}")
