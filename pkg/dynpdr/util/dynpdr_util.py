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
Command-line front end.

  dynpdr check <file> [--strategy standard|ctg|exctg|dynamic] [--ctg-max N] [--ctg-lv N]
                      [--exctg-limit N] [--ctg-th N] [--exctg-th N] [--certify] [--witness out]
                      [--seed N] ...
  dynpdr bench <dir> --strategies standard,ctg,exctg,dynamic --time-limit S --jobs N --out results.csv
  dynpdr report results.csv --baseline <name> [--plot-prefix prefix]
  dynpdr generate <dir> [--count N] [--seed S]
  dynpdr info <file>

Defaults come from the packaged default_config.yaml, a file given with -c/--config
overrides any of its keys, flags override both, and DYNPDR_SEED overrides the seed.

Exit codes of check: 0 safe, 1 unsafe, 2 unknown (or failed certification),
3 unusable input (bad file, bad options). Other commands exit 0 or 3.
"""

import argparse
import glob
import logging
import os
import sys

from dynpdr.aiger.aiger_circuit import AigerException, to_transition_system
from dynpdr.aiger.aiger_io import read_aiger_file, write_aiger_file
from dynpdr.bench.families import write_corpus
from dynpdr.bench.report import compare, by_strategy, format_table, write_plot_data, ReportException
from dynpdr.bench.runner import bench, write_records, read_records, RunnerException
from dynpdr.config import load_config, strategy_from_config, backend_from_config, ConfigException
from dynpdr.ic3.certificate import witness_text, write_witness, write_invariant, invariant_circuit, \
    fired_property
from dynpdr.ic3.engine import check
from dynpdr.ic3.strategy import StrategyConfigException, StrategyKind
from dynpdr.ic3.verdict import VerdictKind
from dynpdr.logic.cnf import write_dimacs
from dynpdr.oracle.certify import check_invariant, replay_trace
from dynpdr.sat.query_trace import QueryTrace

EXIT_INPUT_ERROR = 3

INPUT_ERRORS = (AigerException, ConfigException, StrategyConfigException, ReportException,
                RunnerException, IOError)


class DynpdrArgumentParser(argparse.ArgumentParser):
    """
    Usage errors exit with the input error code instead of 2
    """

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT_ERROR, f'{self.prog}: error: {message}\n')


def _override(section: dict, key: str, value) -> None:
    if value is not None:
        section[key] = value


def apply_args(config: dict, args: argparse.Namespace) -> dict:
    """
    Fold command-line flags into the configuration dictionary
    """
    s = config['strategy']
    _override(s, 'kind', getattr(args, 'strategy', None))
    _override(s, 'ctg_lv', getattr(args, 'ctg_lv', None))
    _override(s, 'ctg_max', getattr(args, 'ctg_max', None))
    _override(s, 'exctg_limit', getattr(args, 'exctg_limit', None))
    _override(s, 'ctg_th', getattr(args, 'ctg_th', None))
    _override(s, 'exctg_th', getattr(args, 'exctg_th', None))
    _override(s, 'literal_order', getattr(args, 'literal_order', None))
    if getattr(args, 'unified', False):
        s['unified'] = True
    solver = config['solver']
    _override(solver, 'backend', getattr(args, 'backend', None))
    if getattr(args, 'seed', None) is not None and os.environ.get('DYNPDR_SEED') is None:
        solver['seed'] = args.seed
    _override(solver, 'conf_budget', getattr(args, 'conf_budget', None))
    backend_from_config(solver)
    return config


def run_check(args: argparse.Namespace, config: dict) -> int:
    cfg = strategy_from_config(config['strategy'])
    solver = config['solver']
    opts = config['check']
    circuit = read_aiger_file(args.file)
    ts = to_transition_system(circuit, property_index=args.property)
    logging.info(f'Checking {args.file}: {ts} with {cfg}')
    if args.dimacs:
        write_dimacs(ts, args.dimacs)

    trace = QueryTrace(file_name=args.trace, keep_lines=False) if args.trace else None
    try:
        verdict = check(ts, cfg, backend=solver['backend'], seed=solver['seed'],
                        conf_budget=solver['conf_budget'], rebuild_threshold=solver['rebuild_threshold'],
                        time_limit=args.time_limit if args.time_limit is not None else opts['time_limit'],
                        max_frames=opts['max_frames'], trace=trace,
                        check_frames=args.check_frames or opts['check_frames'],
                        debug=bool(args.debug))
    finally:
        if trace is not None:
            trace.close()
    logging.info(f'Verdict {verdict}')
    logging.info(f'Statistics {verdict.stats}')

    if args.certify or opts['certify']:
        if verdict.kind == VerdictKind.Safe:
            certified = check_invariant(ts, verdict.invariant, backend=solver['backend'])
        elif verdict.kind == VerdictKind.Unsafe:
            certified = replay_trace(ts, verdict.trace)
        else:
            certified = True
        if not certified:
            logging.error(f'{verdict.kind} verdict failed certification')
            print('unknown')
            return VerdictKind.Unknown.exit_code

    print(str(verdict.kind).lower())
    if verdict.kind == VerdictKind.Unsafe:
        index = args.property if args.property is not None else fired_property(circuit, verdict.trace)
        if args.witness:
            write_witness(ts, verdict.trace, args.witness, property_index=index)
        else:
            sys.stdout.write(witness_text(ts, verdict.trace, property_index=index))
    elif verdict.kind == VerdictKind.Safe:
        if args.invariant:
            write_invariant(ts, verdict.invariant, args.invariant)
        if args.certificate:
            write_aiger_file(invariant_circuit(circuit, verdict.invariant), args.certificate, binary=False)
    return verdict.kind.exit_code


def run_bench(args: argparse.Namespace, config: dict) -> int:
    limits = config['bench']
    files = sorted(glob.glob(os.path.join(args.dir, '*.aag')) + glob.glob(os.path.join(args.dir, '*.aig')))
    if len(files) == 0:
        logging.error(f'No AIGER files in {args.dir}')
        return EXIT_INPUT_ERROR
    strategies = dict()
    for name in args.strategies.split(','):
        section = dict(config['strategy'])
        section['kind'] = name.strip()
        strategies[name.strip()] = strategy_from_config(section)
    records = bench(files, strategies,
                    time_limit=args.time_limit if args.time_limit is not None else limits['time_limit'],
                    mem_limit_mb=args.mem_limit if args.mem_limit is not None else limits['mem_limit_mb'],
                    jobs=args.jobs if args.jobs is not None else limits['jobs'],
                    seed=config['solver']['seed'], backend=config['solver']['backend'])
    write_records(records, args.out)
    logging.info(f'Wrote {len(records)} records to {args.out}')
    return 0


def run_report(args: argparse.Namespace, config: dict) -> int:
    record_sets = by_strategy(read_records(args.records))
    baseline = args.baseline or config['bench']['baseline']
    rows = compare(record_sets, baseline, time_limit=args.time_limit)
    sys.stdout.write(format_table(rows))
    if args.plot_prefix:
        for name in write_plot_data(record_sets, baseline, args.plot_prefix, time_limit=args.time_limit):
            logging.info(f'Wrote {name}')
    return 0


def run_generate(args: argparse.Namespace, config: dict) -> int:
    files = write_corpus(args.dir, count=args.count, seed=args.seed, binary=args.binary)
    logging.info(f'Wrote {len(files)} circuits into {args.dir}')
    return 0


def run_info(args: argparse.Namespace, config: dict) -> int:
    circuit = read_aiger_file(args.file)
    print(circuit)
    cone = circuit.cone_of_influence(circuit.properties())
    latches = sum(1 for latch in circuit.latches if latch.current >> 1 in cone)
    inputs = sum(1 for lit in circuit.inputs if lit >> 1 in cone)
    print(f'cone of influence: {latches} latches, {inputs} inputs, {len(cone)} variables')
    for k, v in sorted(circuit.symbols.items()):
        print(f'{k[0]}{k[1]} {v}')
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = DynpdrArgumentParser(prog='dynpdr')
    parser.add_argument("-c", "--config", action="store",
                        help="provide a YAML configuration file overriding the defaults")
    parser.add_argument("-d", "--debug", action="count",
                        help="turn on debugging (also checks every generalization)")
    sub = parser.add_subparsers(dest='command')

    strategies = [k.name.lower() for k in StrategyKind]
    c = sub.add_parser('check', help='check the safety property of an AIGER circuit')
    c.add_argument('file', help='AIGER file (.aag or .aig)')
    c.add_argument('--strategy', choices=strategies, help='generalization strategy')
    c.add_argument('--ctg-max', type=int, help='consecutive counterexamples blocked per literal')
    c.add_argument('--ctg-lv', type=int, help='nesting level of counterexample generalization')
    c.add_argument('--exctg-limit', type=int, help='blocking budget of the extended strategy')
    c.add_argument('--ctg-th', type=int, help='activity threshold for the ctg branch')
    c.add_argument('--exctg-th', type=int, help='activity threshold for the extended branch')
    c.add_argument('--literal-order', choices=['ascending', 'reverse', 'activity'],
                   help='order in which literals are dropped')
    c.add_argument('--unified', action='store_true',
                   help='run standard and ctg through the extended generalization')
    c.add_argument('--seed', type=int, help='solver phase seed')
    c.add_argument('--backend', help='python-sat solver name')
    c.add_argument('--conf-budget', type=int, help='conflicts allowed per SAT query')
    c.add_argument('--time-limit', type=float, help='seconds before giving up')
    c.add_argument('--property', type=int, help='index of the single property to check')
    c.add_argument('--certify', action='store_true', help='certify the verdict before reporting it')
    c.add_argument('--witness', help='write the counterexample witness here instead of stdout')
    c.add_argument('--invariant', help='write the invariant as text')
    c.add_argument('--certificate', help='write the invariant as an AIGER circuit')
    c.add_argument('--dimacs', help='write the transition relation in DIMACS')
    c.add_argument('--trace', help='write the SAT query trace')
    c.add_argument('--check-frames', action='store_true', help='verify frame invariants after propagation')
    c.set_defaults(func=run_check)

    b = sub.add_parser('bench', help='run strategies over a directory of circuits')
    b.add_argument('dir')
    b.add_argument('--strategies', default=','.join(strategies))
    b.add_argument('--time-limit', type=float)
    b.add_argument('--mem-limit', type=int, help='megabytes of address space per case')
    b.add_argument('--jobs', type=int)
    b.add_argument('--seed', type=int)
    b.add_argument('--out', default='results.csv')
    b.set_defaults(func=run_bench)

    r = sub.add_parser('report', help='score and compare benchmark records')
    r.add_argument('records', help='CSV written by bench')
    r.add_argument('--baseline')
    r.add_argument('--time-limit', type=float, help='override the per-record limit for scoring')
    r.add_argument('--plot-prefix', help='write cactus and scatter CSV files with this prefix')
    r.set_defaults(func=run_report)

    g = sub.add_parser('generate', help='write the small benchmark corpus')
    g.add_argument('dir')
    g.add_argument('--count', type=int, default=200)
    g.add_argument('--seed', type=int, default=1)
    g.add_argument('--binary', action='store_true')
    g.set_defaults(func=run_generate)

    i = sub.add_parser('info', help='print circuit statistics')
    i.add_argument('file')
    i.set_defaults(func=run_info)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = load_config(args.config)
    except ConfigException as e:
        logging.basicConfig(level=logging.INFO)
        logging.error(str(e))
        sys.exit(EXIT_INPUT_ERROR)

    if args.debug is None:
        logging.basicConfig(level=getattr(logging, str(config['logging']['level']).upper(), logging.INFO))
    elif args.debug >= 1:
        logging.basicConfig(level=logging.DEBUG)

    if args.command is None:
        parser.print_help()
        sys.exit(EXIT_INPUT_ERROR)

    try:
        code = args.func(args, apply_args(config, args))
    except INPUT_ERRORS as e:
        logging.error(f'{e}')
        code = EXIT_INPUT_ERROR
    sys.exit(code)


if __name__ == "__main__":
    main()
