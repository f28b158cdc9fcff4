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
Scoring and comparison of benchmark records: solved counts, difference against a
baseline strategy, PAR-2, and CSV data for cactus and pairwise scatter plots.
"""
import csv
import io
from typing import List, Dict, Optional, Tuple

from recordclass import recordclass

from dynpdr.bench.runner import RunRecord, SOLVED

StrategySummary = recordclass('StrategySummary', ['strategy', 'solved', 'delta', 'par2', 'par2_sum'])


def _penalized(records: List[RunRecord], time_limit: Optional[float]) -> List[float]:
    if len(records) == 0:
        raise EmptyRecordSet()
    ret = list()
    for r in records:
        limit = time_limit if time_limit is not None else r.time_limit
        ret.append(r.wall_time if r.result in SOLVED else 2.0 * limit)
    return ret


def par2(records: List[RunRecord], time_limit: Optional[float] = None) -> float:
    """
    Penalized average runtime: mean over records of the wall time if solved, twice the
    time limit otherwise
    :param records:
    :param time_limit: overrides the limit stored in each record
    :return:
    """
    scores = _penalized(records, time_limit)
    return sum(sorted(scores)) / len(scores)


def par2_sum(records: List[RunRecord], time_limit: Optional[float] = None) -> float:
    return sum(sorted(_penalized(records, time_limit)))


def by_strategy(records: List[RunRecord]) -> Dict[str, List[RunRecord]]:
    ret = dict()
    for r in records:
        ret.setdefault(r.strategy, list()).append(r)
    return ret


def compare(record_sets: Dict[str, List[RunRecord]], baseline: str,
            time_limit: Optional[float] = None) -> List[StrategySummary]:
    """
    One summary row per strategy, sorted by name
    :param record_sets: strategy name -> records over the same cases
    :param baseline: strategy the delta column is relative to
    :param time_limit:
    :return:
    """
    if baseline not in record_sets:
        raise ReportException(f'Baseline {baseline} not among strategies {sorted(record_sets.keys())}')
    cases = {name: sorted(r.case for r in recs) for name, recs in record_sets.items()}
    reference = cases[baseline]
    for name, c in cases.items():
        if c != reference:
            raise MismatchedCaseSets(strategy=name, baseline=baseline)
    base_solved = sum(1 for r in record_sets[baseline] if r.result in SOLVED)
    ret = list()
    for name in sorted(record_sets.keys()):
        recs = record_sets[name]
        solved = sum(1 for r in recs if r.result in SOLVED)
        ret.append(StrategySummary(strategy=name, solved=solved, delta=solved - base_solved,
                                   par2=par2(recs, time_limit), par2_sum=par2_sum(recs, time_limit)))
    return ret


def format_table(rows: List[StrategySummary]) -> str:
    lines = [f'{"strategy":<16}{"solved":>8}{"delta":>8}{"PAR-2":>12}{"PAR-2 sum":>14}']
    for r in rows:
        lines.append(f'{r.strategy:<16}{r.solved:>8}{r.delta:>+8d}{r.par2:>12.3f}{r.par2_sum:>14.3f}')
    return '\n'.join(lines) + '\n'


def cactus_rows(record_sets: Dict[str, List[RunRecord]]) -> List[Tuple[str, int, float]]:
    """
    (strategy, number solved, time) with solved runs sorted by time, per strategy
    """
    ret = list()
    for name in sorted(record_sets.keys()):
        times = sorted(r.wall_time for r in record_sets[name] if r.result in SOLVED)
        ret.extend((name, k + 1, t) for k, t in enumerate(times))
    return ret


def scatter_rows(record_sets: Dict[str, List[RunRecord]], x: str, y: str,
                 time_limit: Optional[float] = None) -> List[Tuple[str, float, float]]:
    """
    (case, time under x, time under y), unsolved runs placed at twice the limit
    """
    if x not in record_sets or y not in record_sets:
        raise ReportException(f'Unknown strategy in scatter pair {x}, {y}')
    xs = {r.case: r for r in record_sets[x]}
    ys = {r.case: r for r in record_sets[y]}
    if sorted(xs.keys()) != sorted(ys.keys()):
        raise MismatchedCaseSets(strategy=y, baseline=x)
    ret = list()
    for case in sorted(xs.keys()):
        px = _penalized([xs[case]], time_limit)[0]
        py = _penalized([ys[case]], time_limit)[0]
        ret.append((case, px, py))
    return ret


def rows_to_csv(header: List[str], rows: List[tuple]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([f'{v:.6f}' if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def write_plot_data(record_sets: Dict[str, List[RunRecord]], baseline: str, prefix: str,
                    time_limit: Optional[float] = None) -> List[str]:
    """
    Write <prefix>_cactus.csv and one <prefix>_scatter_<baseline>_<other>.csv per other strategy
    :return: file names written
    """
    written = list()
    name = f'{prefix}_cactus.csv'
    with open(name, 'w') as f:
        f.write(rows_to_csv(['strategy', 'solved', 'time'], cactus_rows(record_sets)))
    written.append(name)
    for other in sorted(record_sets.keys()):
        if other == baseline:
            continue
        name = f'{prefix}_scatter_{baseline}_{other}.csv'
        with open(name, 'w') as f:
            f.write(rows_to_csv(['case', baseline, other],
                                scatter_rows(record_sets, baseline, other, time_limit)))
        written.append(name)
    return written


class ReportException(Exception):
    """
    base exception for benchmark reporting
    """
    def __init__(self, msg: str):
        super().__init__(f"{self.__class__.__name__}: {msg}")


class EmptyRecordSet(ReportException):

    def __init__(self):
        super().__init__('no records to score')


class MismatchedCaseSets(ReportException):

    def __init__(self, *, strategy: str, baseline: str):
        super().__init__(f'strategy {strategy} was run on different cases than {baseline}')
