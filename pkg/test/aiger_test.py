import unittest

from dynpdr.aiger.aiger_io import parse_aiger, read_aiger_file, print_aiger, is_binary_canonical
from dynpdr.aiger.aiger_circuit import AigerCircuit, Latch, AndGate, to_transition_system, \
    MalformedHeader, NonMonotonicGate, DuplicateDefinition, TruncatedFile, UnsupportedFeature, \
    NoProperty, AigerException
from dynpdr.bench.families import counter, token_ring


class AigerTest(unittest.TestCase):

    def testConstantFalse(self):
        c = parse_aiger(b'aag 0 0 0 1 0\n0\n')
        assert c.max_var_index == 0
        assert c.outputs == [0]
        assert c.properties() == [0]
        ts = to_transition_system(c)
        assert ts.num_latches == 0
        assert ts.bad == 0

    def testToggleAscii(self):
        c = read_aiger_file("test/models/toggle.aag")
        assert len(c.latches) == 1
        latch = c.latches[0]
        assert latch.current == 2
        assert latch.next == 3
        assert latch.reset == 0
        assert c.outputs == [2]

    def testToggleBinaryMatchesAscii(self):
        a = read_aiger_file("test/models/toggle.aag")
        b = read_aiger_file("test/models/toggle.aig")
        assert a == b
        assert print_aiger(a, binary=True) == b'aig 1 0 1 1 0\n3\n2\n'
        assert print_aiger(b) == b'aag 1 0 1 1 0\n2 3\n2\n'

    def testGateOperandOrderMatchesBinary(self):
        a = parse_aiger(b'aag 3 2 0 1 1\n2\n4\n6\n6 2 4\n')
        assert a.and_gates[0] == AndGate(6, 4, 2)
        b = parse_aiger(print_aiger(a, binary=True))
        assert a == b
        h = read_aiger_file("test/models/handshake.aag")
        assert parse_aiger(print_aiger(h, binary=True)) == h

    def testSymbolsAndComments(self):
        c = read_aiger_file("test/models/handshake.aag")
        assert c.symbols[('i', 0)] == 'enable'
        assert c.symbols[('l', 1)] == 'ack'
        assert c.symbols[('o', 0)] == 'both'
        assert c.comments == ['two latches that are never high together']
        again = parse_aiger(print_aiger(c))
        assert again == c
        assert again.symbols == c.symbols
        assert again.comments == c.comments
        binary = parse_aiger(print_aiger(c, binary=True))
        assert binary == c
        ts = to_transition_system(c)
        assert ts.state_names == ['req', 'ack']
        assert ts.input_names == ['enable']

    def testUninitializedAndResetOne(self):
        c = read_aiger_file("test/models/uninit.aag")
        assert c.latches[0].reset is None
        assert c.latches[1].reset == 1
        assert c.bad == [7]
        ts = to_transition_system(c)
        # only the reset-1 latch constrains I
        assert list(ts.init) == [6]

    def testGeneratedCircuitsAreBinaryCanonical(self):
        for c in [counter(bits=3, wrap=4, bad_value=5), token_ring(length=5, safe=False)]:
            assert is_binary_canonical(c)
            assert parse_aiger(print_aiger(c, binary=True)) == c
            assert parse_aiger(print_aiger(c)) == c

    def testErrors(self):
        with self.assertRaises(MalformedHeader):
            parse_aiger(b'aig 1 0\n')
        with self.assertRaises(MalformedHeader):
            parse_aiger(b'')
        with self.assertRaises(NonMonotonicGate):
            read_aiger_file("test/models/nonmonotonic.aag")
        with self.assertRaises(DuplicateDefinition):
            read_aiger_file("test/models/duplicate.aag")
        with self.assertRaises(TruncatedFile) as cm:
            read_aiger_file("test/models/truncated.aag")
        assert cm.exception.line == 4
        with self.assertRaises(UnsupportedFeature):
            read_aiger_file("test/models/constraint.aag")
        with self.assertRaises(NoProperty):
            to_transition_system(parse_aiger(b'aag 1 0 1 0 0\n2 3\n'))

    def testBinaryTruncatedGate(self):
        with self.assertRaises(TruncatedFile) as cm:
            parse_aiger(b'aig 2 1 0 1 1\n4\n')
        assert cm.exception.offset is not None

    def testMessagesNameTheException(self):
        try:
            read_aiger_file("test/models/duplicate.aag")
        except AigerException as e:
            assert str(e).startswith('DuplicateDefinition')

    def testMultipleBadLiteralsAreDisjoined(self):
        c = AigerCircuit(max_var_index=2, latches=[Latch(current=2, next=3, reset=0),
                                                   Latch(current=4, next=2, reset=0)],
                         bad=[2, 4])
        ts = to_transition_system(c)
        # one auxiliary gate above the next-state variables
        assert len(ts.gates) == 1
        assert ts.gates[0][0] >> 1 >= ts.num_vars - 1
        single = to_transition_system(c, property_index=1)
        assert single.bad == 4
        with self.assertRaises(NoProperty):
            to_transition_system(c, property_index=2)

    def testGraphHelpers(self):
        c = read_aiger_file("test/models/handshake.aag")
        order = c.combinational_order()
        assert [g.lhs for g in order] == [8, 10]
        cone = c.cone_of_influence(c.properties())
        assert cone == {1, 2, 3, 4, 5}
        shuffled = AigerCircuit(max_var_index=c.max_var_index, inputs=c.inputs, latches=c.latches,
                                outputs=c.outputs, and_gates=[AndGate(10, 6, 4), AndGate(8, 5, 2)])
        assert [g.lhs for g in shuffled.combinational_order()] == [8, 10]


if __name__ == "__main__":
    unittest.main()
