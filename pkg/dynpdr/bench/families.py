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
Generators of small benchmark circuits: toggles, wrapping counters, shift chains, ladders,
token rings and random netlists. Circuits are numbered canonically (inputs, latches,
then gates with each gate above its operands), so they can be written as binary AIGER.
"""
import os
import random
from typing import List, Optional, Tuple, Dict

from dynpdr.aiger.aiger_circuit import AigerCircuit, Latch, AndGate
from dynpdr.aiger.aiger_io import write_aiger_file


class CircuitBuilder:
    """
    Structurally hashed and-inverter graph builder over fixed inputs and latches
    """

    def __init__(self, *, num_inputs: int, num_latches: int):
        self.inputs = [2 * (k + 1) for k in range(num_inputs)]
        self.latches = [2 * (num_inputs + k + 1) for k in range(num_latches)]
        self.next_var = num_inputs + num_latches + 1
        self.gates: List[AndGate] = list()
        self._strash: Dict[Tuple[int, int], int] = dict()

    def and_(self, a: int, b: int) -> int:
        if a == 0 or b == 0 or a == b ^ 1:
            return 0
        if a == 1:
            return b
        if b == 1 or a == b:
            return a
        key = (max(a, b), min(a, b))
        if key in self._strash:
            return self._strash[key]
        lhs = 2 * self.next_var
        self.next_var += 1
        self.gates.append(AndGate(lhs=lhs, rhs0=key[0], rhs1=key[1]))
        self._strash[key] = lhs
        return lhs

    def or_(self, a: int, b: int) -> int:
        return self.and_(a ^ 1, b ^ 1) ^ 1

    def xor(self, a: int, b: int) -> int:
        return self.or_(self.and_(a, b ^ 1), self.and_(a ^ 1, b))

    def mux(self, sel: int, a: int, b: int) -> int:
        """
        sel ? a : b
        """
        return self.or_(self.and_(sel, a), self.and_(sel ^ 1, b))

    def all_of(self, lits: List[int]) -> int:
        acc = 1
        for lit in lits:
            acc = self.and_(acc, lit)
        return acc

    def any_of(self, lits: List[int]) -> int:
        acc = 0
        for lit in lits:
            acc = self.or_(acc, lit)
        return acc

    def equals(self, bits: List[int], value: int) -> int:
        return self.all_of([b if (value >> j) & 1 else b ^ 1 for j, b in enumerate(bits)])

    def build(self, *, next_fns: List[int], resets: List[Optional[int]], bad: List[int],
              outputs: List[int] = None, name: str = None) -> AigerCircuit:
        assert len(next_fns) == len(resets) == len(self.latches)
        latches = [Latch(current=cur, next=nxt, reset=r) for cur, nxt, r in zip(self.latches, next_fns, resets)]
        return AigerCircuit(max_var_index=self.next_var - 1, inputs=self.inputs, latches=latches,
                            outputs=outputs or [], bad=bad, and_gates=self.gates,
                            comments=[name] if name else [])


def toggle(*, reset: int = 0) -> AigerCircuit:
    """
    One latch flipping every step, the bad state is the latch being 1
    """
    b = CircuitBuilder(num_inputs=0, num_latches=1)
    x = b.latches[0]
    return b.build(next_fns=[x ^ 1], resets=[reset], bad=[x], name=f'toggle reset {reset}')


def counter(*, bits: int, wrap: int, bad_value: int, enable: bool = False) -> AigerCircuit:
    """
    Counter from 0 that returns to 0 after wrap-1; bad when it holds bad_value.
    Safe iff bad_value >= wrap. With enable an input gates every increment.
    """
    assert 1 <= wrap <= 1 << bits
    b = CircuitBuilder(num_inputs=1 if enable else 0, num_latches=bits)
    xs = b.latches
    at_top = b.equals(xs, wrap - 1)
    # ripple-carry increment
    carry = b.inputs[0] if enable else 1
    inc = list()
    for x in xs:
        inc.append(b.xor(x, carry))
        carry = b.and_(x, carry)
    step = b.and_(at_top, b.inputs[0]) if enable else at_top
    next_fns = [b.and_(step ^ 1, s) for s in inc]
    return b.build(next_fns=next_fns, resets=[0] * bits, bad=[b.equals(xs, bad_value)],
                   name=f'counter {bits} bits wrap {wrap} bad {bad_value}')


def shift_chain(*, length: int, safe: bool) -> AigerCircuit:
    """
    Input-fed shift register. The unsafe variant flags a 1 reaching the last stage;
    the safe variant runs two copies off the same input and flags any difference
    at the last stage, which needs stage-wise equivalence lemmas to prove.
    """
    if not safe:
        b = CircuitBuilder(num_inputs=1, num_latches=length)
        xs = b.latches
        return b.build(next_fns=[b.inputs[0]] + xs[:-1], resets=[0] * length, bad=[xs[-1]],
                       name=f'shift chain {length} unsafe')
    b = CircuitBuilder(num_inputs=1, num_latches=2 * length)
    xs, ys = b.latches[:length], b.latches[length:]
    i = b.inputs[0]
    return b.build(next_fns=[i] + xs[:-1] + [i] + ys[:-1], resets=[0] * (2 * length),
                   bad=[b.xor(xs[-1], ys[-1])], name=f'shift chain {length} safe')


def token_ring(*, length: int, safe: bool = True) -> AigerCircuit:
    """
    One token circulating over length latches, advanced when the input is high.
    Bad is two stations holding the token at once. The unsafe variant lets a second
    input inject a token.
    """
    assert length >= 3
    b = CircuitBuilder(num_inputs=1 if safe else 2, num_latches=length)
    xs = b.latches
    adv = b.inputs[0]
    next_fns = [b.mux(adv, xs[j - 1], xs[j]) for j in range(length)]
    if not safe:
        next_fns[0] = b.or_(next_fns[0], b.inputs[1])
    far = length // 2
    bad = b.any_of([b.and_(xs[0], xs[far]), b.and_(xs[1], xs[far + 1 if far + 1 < length else 0])])
    return b.build(next_fns=next_fns, resets=[1] + [0] * (length - 1), bad=[bad],
                   name=f'token ring {length} {"safe" if safe else "unsafe"}')


def ladder(*, latches: int, safe: bool = True) -> AigerCircuit:
    """
    Saturating fill: x0 becomes 1 once any latch is 1 and every other latch copies
    its left neighbour, so ones climb towards the all-ones bad state. From the all-zero
    reset nothing moves. A nonzero state with x0 = 0 has no predecessor, which makes
    every bad state the end of predecessor chains rooted in unreachable states.
    The unsafe variant lets an input set x0.
    """
    assert latches >= 2
    b = CircuitBuilder(num_inputs=0 if safe else 1, num_latches=latches)
    xs = b.latches
    head = b.any_of(xs) if safe else b.or_(b.any_of(xs), b.inputs[0])
    return b.build(next_fns=[head] + xs[:-1], resets=[0] * latches, bad=[b.all_of(xs)],
                   name=f'ladder {latches} {"safe" if safe else "unsafe"}')


def random_netlist(*, seed: int, num_inputs: int, num_latches: int, num_gates: int,
                   uninitialized: float = 0.0) -> AigerCircuit:
    """
    Random gates over earlier literals, random next-state functions and resets
    """
    rng = random.Random(seed)
    b = CircuitBuilder(num_inputs=num_inputs, num_latches=num_latches)
    pool = b.inputs + b.latches
    for _ in range(num_gates):
        a = rng.choice(pool) ^ rng.randint(0, 1)
        c = rng.choice(pool) ^ rng.randint(0, 1)
        g = b.and_(a, c)
        if g > 1 and g not in pool:
            pool.append(g)
    next_fns = [rng.choice(pool) ^ rng.randint(0, 1) for _ in b.latches]
    resets = [None if rng.random() < uninitialized else rng.randint(0, 1) for _ in b.latches]
    bad = b.and_(rng.choice(pool) ^ rng.randint(0, 1), rng.choice(pool) ^ rng.randint(0, 1))
    return b.build(next_fns=next_fns, resets=resets, bad=[bad],
                   name=f'random seed {seed} {num_inputs}i {num_latches}l {num_gates}g')


def structured_family() -> List[Tuple[str, AigerCircuit]]:
    """
    Fixed sweep over the structured generators
    """
    cases = [('toggle_r0', toggle(reset=0)), ('toggle_r1', toggle(reset=1))]
    for bits, wrap, bad_value in [(2, 3, 3), (3, 4, 5), (3, 4, 3), (3, 6, 7), (4, 10, 12), (4, 10, 9)]:
        for enable in (False, True):
            cases.append((f'counter_{bits}_{wrap}_{bad_value}{"_en" if enable else ""}',
                          counter(bits=bits, wrap=wrap, bad_value=bad_value, enable=enable)))
    for length in (2, 3, 4, 6):
        cases.append((f'shift_{length}_unsafe', shift_chain(length=length, safe=False)))
        cases.append((f'shift_{length}_safe', shift_chain(length=length, safe=True)))
    for length in (3, 4, 6, 8, 12):
        cases.append((f'ring_{length}_safe', token_ring(length=length, safe=True)))
        cases.append((f'ring_{length}_unsafe', token_ring(length=length, safe=False)))
    for length in (2, 3, 5, 8, 12, 16):
        cases.append((f'ladder_{length}_safe', ladder(latches=length, safe=True)))
        cases.append((f'ladder_{length}_unsafe', ladder(latches=length, safe=False)))
    return cases


def corpus(*, count: int, seed: int = 1, max_bits: int = 16) -> List[Tuple[str, AigerCircuit]]:
    """
    Structured family plus random netlists up to count circuits, each with at most
    max_bits latch and input bits
    """
    cases = [(n, c) for n, c in structured_family() if len(c.inputs) + len(c.latches) <= max_bits]
    rng = random.Random(seed)
    k = 0
    while len(cases) < count:
        ni = rng.randint(0, 3)
        nl = rng.randint(1, min(8, max_bits - ni))
        circuit = random_netlist(seed=seed * 100003 + k, num_inputs=ni, num_latches=nl,
                                 num_gates=rng.randint(nl, 4 * nl + 4), uninitialized=0.1)
        cases.append((f'random_{k:03d}', circuit))
        k += 1
    return cases[:count]


def write_corpus(out_dir: str, *, count: int, seed: int = 1, binary: bool = False) -> List[str]:
    """
    Write corpus circuits into out_dir
    :return: file names written
    """
    os.makedirs(out_dir, exist_ok=True)
    ret = list()
    for name, circuit in corpus(count=count, seed=seed):
        file_name = os.path.join(out_dir, name + ('.aig' if binary else '.aag'))
        write_aiger_file(circuit, file_name, binary=binary)
        ret.append(file_name)
    return ret


def ladder_family(*, sizes: List[int]) -> List[Tuple[str, AigerCircuit]]:
    """
    Safe and unsafe ladders of the given latch counts for comparing strategies at scale
    """
    cases = list()
    for n in sizes:
        cases.append((f'ladder_{n}_safe', ladder(latches=n, safe=True)))
        cases.append((f'ladder_{n}_unsafe', ladder(latches=n, safe=False)))
    return cases
