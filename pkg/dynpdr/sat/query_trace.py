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
Text trace of SAT queries, one line per query: kind, frame, cube and result.
Used to compare strategies query by query and to check run determinism.
"""
import hashlib
from typing import List, Optional, Iterable


class QueryTrace:
    """
    Collects query lines in memory and optionally mirrors them into a file
    """

    def __init__(self, *, file_name: Optional[str] = None, keep_lines: bool = True):
        self.keep_lines = keep_lines
        self.lines = list()
        self._digest = hashlib.sha256()
        self._count = 0
        self._fp = open(file_name, 'w') if file_name is not None else None

    def record(self, *, kind: str, frame: int, cube: Iterable[int], result: str) -> None:
        line = f'{kind} {frame} [{" ".join(str(lit) for lit in cube)}] {result}'
        self._count += 1
        self._digest.update(line.encode('ascii') + b'\n')
        if self.keep_lines:
            self.lines.append(line)
        if self._fp is not None:
            self._fp.write(line + '\n')

    def __len__(self):
        return self._count

    def digest(self) -> str:
        return self._digest.hexdigest()

    def close(self) -> None:
        if self._fp is not None:
            self._fp.close()
            self._fp = None

    def filtered(self, kinds: List[str]) -> List[str]:
        return [line for line in self.lines if line.split(' ', 1)[0] in kinds]
