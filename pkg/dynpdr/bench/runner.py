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
Benchmark harness: every case runs in its own process under a wall-clock and an
address-space limit, verdicts are certified in that process before they are reported,
and records are exchanged as CSV.
"""
import csv
import multiprocessing
import os
import queue
import resource
import time
from concurrent.futures import ThreadPoolExecutor
from typing import List, Dict, Optional

from recordclass import recordclass

from dynpdr.aiger.aiger_io import read_aiger_file
from dynpdr.aiger.aiger_circuit import to_transition_system
from dynpdr.ic3.engine import check
from dynpdr.ic3.strategy import StrategyConfig
from dynpdr.ic3.verdict import VerdictKind, UnknownReason
from dynpdr.oracle.certify import check_invariant, replay_trace
from dynpdr.logging.dynpdr_logger import get_logger

RunRecord = recordclass('RunRecord', ['case', 'strategy', 'result', 'wall_time', 'queries', 'lemmas',
                                      'time_limit', 'message'])

CSV_COLUMNS = ['case', 'strategy', 'result', 'wall_time', 'queries', 'lemmas', 'time_limit', 'message']

SOLVED = ('Safe', 'Unsafe')
RESULTS = ('Safe', 'Unsafe', 'Timeout', 'MemOut', 'Error')

# seconds allowed past the limit for the worker to report before it is killed
GRACE = 5.0


def _worker(file_name: str, cfg: StrategyConfig, time_limit: float, mem_limit_mb: Optional[int],
            seed: int, backend: str, out: multiprocessing.Queue) -> None:
    res = {'result': 'Error', 'wall_time': 0.0, 'queries': 0, 'lemmas': 0, 'message': ''}
    try:
        if mem_limit_mb is not None:
            limit = mem_limit_mb * 1024 * 1024
            resource.setrlimit(resource.RLIMIT_AS, (limit, limit))
        ts = to_transition_system(read_aiger_file(file_name))
        start = time.monotonic()
        verdict = check(ts, cfg, time_limit=time_limit, seed=seed, backend=backend)
        res['wall_time'] = time.monotonic() - start
        res['queries'] = verdict.stats.get('queries', 0)
        res['lemmas'] = verdict.stats.get('lemmas', 0)
        if verdict.kind == VerdictKind.Safe:
            certified = check_invariant(ts, verdict.invariant, backend=backend)
        elif verdict.kind == VerdictKind.Unsafe:
            certified = replay_trace(ts, verdict.trace)
        else:
            certified = False
        if verdict.kind == VerdictKind.Unknown:
            res['result'] = {UnknownReason.Timeout: 'Timeout', UnknownReason.MemOut: 'MemOut'}.get(
                verdict.reason, 'Error')
            res['message'] = verdict.message
        elif certified:
            res['result'] = str(verdict.kind)
        else:
            res['result'] = 'Error'
            res['message'] = f'{verdict.kind} verdict failed certification'
    except MemoryError:
        res['result'] = 'MemOut'
    except Exception as e:
        res['result'] = 'Error'
        res['message'] = str(e)
    out.put(res)


def run_single(file_name: str, cfg: StrategyConfig, *, strategy: Optional[str] = None,
               time_limit: float = 60.0, mem_limit_mb: Optional[int] = 2048, seed: int = 0,
               backend: str = 'minisat22', logger=None) -> RunRecord:
    """
    Check one circuit in a subprocess. Failures of any kind end up in the record.
    :param file_name: AIGER file
    :param cfg: strategy
    :param strategy: name for the record, defaults to the strategy kind
    :param time_limit: seconds
    :param mem_limit_mb: address-space limit, None for none
    :param seed: solver seed
    :param backend: pysat solver name
    :param logger:
    :return: RunRecord
    """
    log = logger if logger is not None else get_logger()
    case = os.path.splitext(os.path.basename(file_name))[0]
    rec = RunRecord(case=case, strategy=strategy or cfg.kind.name.lower(), result='Error',
                    wall_time=0.0, queries=0, lemmas=0, time_limit=time_limit, message='')
    ctx = multiprocessing.get_context('spawn')
    out = ctx.Queue()
    proc = ctx.Process(target=_worker, args=(file_name, cfg, time_limit, mem_limit_mb, seed, backend, out),
                       daemon=True)
    start = time.monotonic()
    proc.start()
    try:
        res = out.get(timeout=time_limit + GRACE)
    except queue.Empty:
        res = None
    elapsed = time.monotonic() - start
    proc.join(GRACE)
    if proc.is_alive():
        proc.kill()
        proc.join()

    if res is None:
        if elapsed >= time_limit:
            rec.result = 'Timeout'
            rec.wall_time = time_limit
        else:
            rec.message = f'worker exited with code {proc.exitcode}'
            rec.wall_time = elapsed
    else:
        rec.result = res['result']
        rec.wall_time = min(res['wall_time'], time_limit) if res['result'] in SOLVED else res['wall_time']
        rec.queries = res['queries']
        rec.lemmas = res['lemmas']
        rec.message = res['message']
        if rec.result == 'Timeout':
            rec.wall_time = time_limit
    log.info(f'{rec.case} {rec.strategy}: {rec.result} in {rec.wall_time:.3f}s')
    return rec


def bench(file_names: List[str], strategies: Dict[str, StrategyConfig], *, time_limit: float = 60.0,
          mem_limit_mb: Optional[int] = 2048, jobs: int = 1, seed: int = 0, backend: str = 'minisat22',
          logger=None) -> List[RunRecord]:
    """
    Run every strategy on every file, at most jobs cases at a time
    :return: records ordered by file, then strategy, as given
    """
    assert jobs >= 1
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(run_single, f, cfg, strategy=name, time_limit=time_limit,
                               mem_limit_mb=mem_limit_mb, seed=seed, backend=backend, logger=logger)
                   for f in file_names for name, cfg in strategies.items()]
        return [f.result() for f in futures]


def write_records(records: List[RunRecord], file_name: str) -> None:
    with open(file_name, 'w', newline='') as f:
        writer = csv.DictWriter(f, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for r in records:
            writer.writerow({c: getattr(r, c) for c in CSV_COLUMNS})


def read_records(file_name: str) -> List[RunRecord]:
    ret = list()
    with open(file_name, newline='') as f:
        for row in csv.DictReader(f):
            if row['result'] not in RESULTS:
                raise RunnerException(f'Unknown result {row["result"]} for case {row["case"]}')
            ret.append(RunRecord(case=row['case'], strategy=row['strategy'], result=row['result'],
                                 wall_time=float(row['wall_time']), queries=int(row['queries']),
                                 lemmas=int(row['lemmas']), time_limit=float(row['time_limit']),
                                 message=row['message']))
    return ret


class RunnerException(Exception):

    def __init__(self, msg: str):
        super().__init__(f"RunnerException: {msg}")
