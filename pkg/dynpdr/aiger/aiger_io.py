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
AIGER readers and writers for the ASCII ("aag") and binary ("aig") formats
(AIGER 1.9 without constraints, justice or fairness sections).
"""
from typing import List, Tuple, Optional

from dynpdr.aiger.aiger_circuit import AigerCircuit, Latch, AndGate, MalformedHeader, MalformedLine, \
    NonMonotonicGate, DuplicateDefinition, TruncatedFile, UnsupportedFeature

SYMBOL_KINDS = ('i', 'l', 'o', 'b')


class _ByteReader:
    """
    Cursor over the file image that knows line numbers and byte offsets
    """
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0
        self.line = 0

    def at_end(self) -> bool:
        return self.pos >= len(self.data)

    def read_line(self, what: str) -> Tuple[str, int]:
        if self.at_end():
            raise TruncatedFile(msg=f'expected {what}', line=self.line + 1, offset=self.pos)
        end = self.data.find(b'\n', self.pos)
        if end < 0:
            end = len(self.data)
        raw = self.data[self.pos:end]
        self.pos = end + 1
        self.line += 1
        try:
            return raw.decode('ascii').rstrip('\r'), self.line
        except UnicodeDecodeError:
            raise MalformedLine(msg=f'non-ASCII content where {what} was expected', line=self.line)

    def read_varint(self, what: str) -> int:
        """
        7-bit little-endian variable length unsigned integer of the binary format
        """
        shift = 0
        res = 0
        while True:
            if self.at_end():
                raise TruncatedFile(msg=f'expected {what}', offset=self.pos)
            ch = self.data[self.pos]
            self.pos += 1
            res |= (ch & 0x7f) << shift
            if ch & 0x80 == 0:
                return res
            shift += 7


def _ints(text: str, count: Optional[int], line: int, what: str) -> List[int]:
    tokens = text.split()
    if count is not None and len(tokens) != count:
        raise MalformedLine(msg=f'{what} expects {count} numbers, got "{text}"', line=line)
    try:
        vals = [int(t) for t in tokens]
    except ValueError:
        raise MalformedLine(msg=f'{what} contains a non-numeric token: "{text}"', line=line)
    if any(v < 0 for v in vals):
        raise MalformedLine(msg=f'{what} contains a negative number: "{text}"', line=line)
    return vals


def _parse_header(reader: _ByteReader) -> Tuple[bool, List[int]]:
    try:
        text, line = reader.read_line('header')
    except (TruncatedFile, MalformedLine):
        raise MalformedHeader(msg='missing or unreadable header line')
    tokens = text.split()
    if len(tokens) < 6 or tokens[0] not in ('aag', 'aig'):
        raise MalformedHeader(msg=f'expected "aag|aig M I L O A [B C J F]", got "{text}"')
    if len(tokens) > 10:
        raise MalformedHeader(msg=f'too many header fields in "{text}"')
    try:
        nums = [int(t) for t in tokens[1:]]
    except ValueError:
        raise MalformedHeader(msg=f'non-numeric header field in "{text}"')
    if any(n < 0 for n in nums):
        raise MalformedHeader(msg=f'negative header field in "{text}"')
    nums = nums + [0] * (9 - len(nums))
    m, i, l, o, a, b, c, j, f = nums
    if c or j or f:
        raise UnsupportedFeature(msg=f'constraints, justice and fairness sections are not supported '
                                     f'(C={c} J={j} F={f})')
    if i + l + a > m:
        raise MalformedHeader(msg=f'M={m} is smaller than I+L+A={i + l + a}')
    binary = tokens[0] == 'aig'
    if binary and m != i + l + a:
        raise MalformedHeader(msg=f'binary format requires M=I+L+A, got M={m}, I+L+A={i + l + a}')
    return binary, nums


def _parse_reset(tokens: List[int], current: int, line: int) -> Optional[int]:
    if len(tokens) == 0:
        return 0
    r = tokens[0]
    if r in (0, 1):
        return r
    if r == current:
        return None
    raise MalformedLine(msg=f'latch reset must be 0, 1 or the latch literal {current}, got {r}', line=line)


def parse_aiger(data: bytes) -> AigerCircuit:
    """
    Parse a complete AIGER file image, ASCII or binary.
    :param data: file contents
    :return: AigerCircuit
    """
    reader = _ByteReader(data)
    binary, (m, ni, nl, no, na, nb, _, _, _) = _parse_header(reader)
    defined = dict()

    def define(lit: int, line: int, what: str):
        if lit & 1 or lit < 2:
            raise MalformedLine(msg=f'{what} defines invalid literal {lit}', line=line)
        if lit >> 1 > m:
            raise MalformedLine(msg=f'{what} literal {lit} exceeds maximum variable index {m}', line=line)
        if lit >> 1 in defined:
            raise DuplicateDefinition(var=lit >> 1, line=line,
                                      msg=f'{what} redefines variable {lit >> 1} first defined '
                                          f'at line {defined[lit >> 1]}')
        defined[lit >> 1] = line

    inputs = list()
    for k in range(ni):
        if binary:
            lit = 2 * (k + 1)
            define(lit, reader.line, f'input {k}')
        else:
            text, line = reader.read_line(f'input {k}')
            lit = _ints(text, 1, line, f'input {k}')[0]
            define(lit, line, f'input {k}')
        inputs.append(lit)

    latches = list()
    for k in range(nl):
        text, line = reader.read_line(f'latch {k}')
        if binary:
            current = 2 * (ni + k + 1)
            toks = _ints(text, None, line, f'latch {k}')
            if len(toks) not in (1, 2):
                raise MalformedLine(msg=f'latch {k} expects "next [reset]", got "{text}"', line=line)
            nxt, rest = toks[0], toks[1:]
        else:
            toks = _ints(text, None, line, f'latch {k}')
            if len(toks) not in (2, 3):
                raise MalformedLine(msg=f'latch {k} expects "current next [reset]", got "{text}"',
                                    line=line)
            current, nxt, rest = toks[0], toks[1], toks[2:]
        define(current, line, f'latch {k}')
        latches.append(Latch(current, nxt, _parse_reset(rest, current, line)))

    outputs = list()
    for k in range(no):
        text, line = reader.read_line(f'output {k}')
        outputs.append(_ints(text, 1, line, f'output {k}')[0])

    bad = list()
    for k in range(nb):
        text, line = reader.read_line(f'bad-state property {k}')
        bad.append(_ints(text, 1, line, f'bad-state property {k}')[0])

    gates = list()
    for k in range(na):
        if binary:
            lhs = 2 * (ni + nl + k + 1)
            offset = reader.pos
            delta0 = reader.read_varint(f'and gate {k}')
            delta1 = reader.read_varint(f'and gate {k}')
            rhs0 = lhs - delta0
            rhs1 = rhs0 - delta1
            if delta0 == 0 or rhs1 < 0:
                raise MalformedLine(msg=f'and gate {k} at byte offset {offset} has invalid deltas '
                                        f'{delta0}, {delta1}', line=None)
            defined[lhs >> 1] = None
        else:
            text, line = reader.read_line(f'and gate {k}')
            lhs, rhs0, rhs1 = _ints(text, 3, line, f'and gate {k}')
            define(lhs, line, f'and gate {k}')
            if lhs <= rhs0 or lhs <= rhs1:
                raise NonMonotonicGate(lhs=lhs, line=line)
            rhs0, rhs1 = max(rhs0, rhs1), min(rhs0, rhs1)
        gates.append(AndGate(lhs, rhs0, rhs1))

    symbols = dict()
    comments = list()
    counts = {'i': ni, 'l': nl, 'o': no, 'b': nb}
    while not reader.at_end():
        text, line = reader.read_line('symbol table')
        if text == 'c':
            rest = reader.data[reader.pos:].decode('utf-8', errors='replace')
            comments = rest.splitlines()
            break
        if text == '':
            continue
        kind = text[0]
        pos, _, name = text[1:].partition(' ')
        if kind not in SYMBOL_KINDS + ('c', 'j', 'f') or not pos.isdigit():
            raise MalformedLine(msg=f'invalid symbol table entry "{text}"', line=line)
        if kind in SYMBOL_KINDS:
            if int(pos) >= counts[kind]:
                raise MalformedLine(msg=f'symbol index {pos} out of range in "{text}"', line=line)
            symbols[(kind, int(pos))] = name

    circuit = AigerCircuit(max_var_index=m, inputs=inputs, latches=latches, outputs=outputs,
                           bad=bad, and_gates=gates, symbols=symbols, comments=comments)
    circuit.validate()
    return circuit


def read_aiger_file(file_name: str) -> AigerCircuit:
    with open(file_name, 'rb') as f:
        return parse_aiger(f.read())


def _encode_varint(x: int) -> bytes:
    out = bytearray()
    while x & ~0x7f:
        out.append((x & 0x7f) | 0x80)
        x >>= 7
    out.append(x)
    return bytes(out)


def is_binary_canonical(circuit: AigerCircuit) -> bool:
    """
    The binary format numbers inputs, then latches, then gates consecutively
    """
    ni, nl = len(circuit.inputs), len(circuit.latches)
    if circuit.max_var_index != ni + nl + len(circuit.and_gates):
        return False
    if any(lit != 2 * (k + 1) for k, lit in enumerate(circuit.inputs)):
        return False
    if any(latch.current != 2 * (ni + k + 1) for k, latch in enumerate(circuit.latches)):
        return False
    return all(g.lhs == 2 * (ni + nl + k + 1) and g.lhs > max(g.rhs0, g.rhs1)
               for k, g in enumerate(circuit.and_gates))


def print_aiger(circuit: AigerCircuit, binary: bool = False) -> bytes:
    """
    Serialize a circuit. Binary output requires canonical numbering
    (see is_binary_canonical).
    :param circuit:
    :param binary:
    :return: file image
    """
    if binary and not is_binary_canonical(circuit):
        raise MalformedHeader(msg='circuit numbering is not canonical, cannot write binary AIGER',
                              line=None)
    out = bytearray()
    header = [circuit.max_var_index, len(circuit.inputs), len(circuit.latches),
              len(circuit.outputs), len(circuit.and_gates)]
    if circuit.bad:
        header.append(len(circuit.bad))
    out += (('aig ' if binary else 'aag ') + ' '.join(str(n) for n in header) + '\n').encode('ascii')

    if not binary:
        for lit in circuit.inputs:
            out += f'{lit}\n'.encode('ascii')
    for latch in circuit.latches:
        fields = [] if binary else [latch.current]
        fields.append(latch.next)
        if latch.reset is None:
            fields.append(latch.current)
        elif latch.reset == 1:
            fields.append(1)
        out += (' '.join(str(x) for x in fields) + '\n').encode('ascii')
    for lit in circuit.outputs + circuit.bad:
        out += f'{lit}\n'.encode('ascii')
    for g in circuit.and_gates:
        if binary:
            hi, lo = max(g.rhs0, g.rhs1), min(g.rhs0, g.rhs1)
            out += _encode_varint(g.lhs - hi) + _encode_varint(hi - lo)
        else:
            out += f'{g.lhs} {g.rhs0} {g.rhs1}\n'.encode('ascii')
    for kind in SYMBOL_KINDS:
        for (k, idx), name in sorted(circuit.symbols.items()):
            if k == kind:
                out += f'{kind}{idx} {name}\n'.encode('utf-8')
    if circuit.comments:
        out += b'c\n'
        for c in circuit.comments:
            out += (c + '\n').encode('utf-8')
    return bytes(out)


def write_aiger_file(circuit: AigerCircuit, file_name: str, binary: Optional[bool] = None) -> None:
    """
    Write a circuit, binary if the file name ends in .aig unless told otherwise
    """
    if binary is None:
        binary = file_name.endswith('.aig')
    with open(file_name, 'wb') as f:
        f.write(print_aiger(circuit, binary=binary))
