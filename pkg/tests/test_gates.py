from itertools import product
from pathlib import Path

import pytest

from grpcompress.gates import (ARITY, BitEncoding, CircuitError, GateError, boolean_gate, encoding,
                               eval_boolean, eval_circuit, f_in, gate_eval, parse_circuit, truth_table)
from grpcompress.groupfn import ConditionError, GroupFunction

CIRCUITS = Path(__file__).parent / "circuits"
EXPECTED = {
    "OR": {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1},
    "AND": {(0, 0): 0, (0, 1): 0, (1, 0): 0, (1, 1): 1},
    "NAND": {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 0},
    "XOR": {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0},
    "NOT": {(0,): 1, (1,): 0},
}


@pytest.fixture(scope="module", params=["a5", "s5"])
def enc(request):
    return encoding(request.param)


def test_input_words(enc):
    s, s2 = enc.sigma, enc.sigma2
    assert f_in("OR", s, s, enc) == s2
    assert f_in("XOR", s, s, enc) == 0
    assert f_in("NAND", 0, 0, enc) == s2
    assert f_in("NAND", s, s, enc) == 0
    with pytest.raises(GateError):
        f_in("NOT", s, s, enc)


def test_truth_tables(enc):
    for gate, table in EXPECTED.items():
        assert dict(truth_table(gate, enc)) == table


def test_gate_outputs_are_canonical(enc):
    for gate in ARITY:
        for ins in product((0, enc.sigma), repeat=ARITY[gate]):
            r = gate_eval(gate, ins[0], ins[1] if len(ins) > 1 else None, enc)
            assert r in (0, enc.sigma)


def test_or_of_ones_is_adjusted(enc):
    assert gate_eval("OR", enc.sigma, enc.sigma, enc) == enc.sigma
    assert gate_eval("not", 0, None, enc) == enc.sigma


def test_non_canonical_inputs_rejected(enc):
    with pytest.raises(GateError):
        gate_eval("OR", enc.sigma2, 0, enc)
    with pytest.raises(GateError):
        enc.decode(enc.sigma2)
    with pytest.raises(GateError):
        gate_eval("XOR", 0, None, enc)
    with pytest.raises(GateError):
        gate_eval("NOR", 0, 0, enc)
    with pytest.raises(GateError):
        enc.encode(2)


def test_encoding_requires_compressing_adjuster():
    good = encoding("a5")
    with pytest.raises(ConditionError):
        BitEncoding(good.group, good.sigma, GroupFunction(good.group, (0, 0), (1,)))
    with pytest.raises(GateError):
        encoding("q8")


def test_parse_nand():
    c = parse_circuit((CIRCUITS / "nand.txt").read_text())
    assert c.inputs == ("a", "b") and len(c.assignments) == 1 and c.output == "y"
    assert c.assignments[0].gate == "NAND"


def test_full_adder_parses_and_adds(enc):
    c = parse_circuit((CIRCUITS / "full_adder.txt").read_text())
    s = parse_circuit((CIRCUITS / "full_adder_sum.txt").read_text())
    assert len(c.assignments) == 5
    for bits in product((0, 1), repeat=3):
        total = sum(bits)
        assert eval_circuit(s, bits, enc)[0] == total % 2
        assert eval_circuit(c, bits, enc)[0] == total // 2


@pytest.mark.parametrize("name", sorted(p.name for p in CIRCUITS.glob("*.txt")))
def test_corpus_matches_boolean_evaluation(name, enc):
    c = parse_circuit((CIRCUITS / name).read_text())
    for bits in product((0, 1), repeat=len(c.inputs)):
        out, trace = eval_circuit(c, bits, enc)
        assert out == eval_boolean(c, bits)
        assert set(trace.values()) <= {0, enc.sigma}


def test_topological_reordering():
    c = parse_circuit((CIRCUITS / "full_adder_carry.txt").read_text())
    assert [a.wire for a in c.assignments][-1] == "c"


@pytest.mark.parametrize("text, msg", [
    ("INPUT a\nb := NOT(c)\nOUTPUT b", "never defined"),
    ("INPUT a\nb := NOT(a)\nb := NOT(a)\nOUTPUT b", "twice"),
    ("INPUT a\nb := AND(a)\nOUTPUT b", "takes 2"),
    ("INPUT a\nb := NOT(a, a)\nOUTPUT b", "takes 1"),
    ("INPUT a\nb := AND(a, c)\nc := OR(b, a)\nOUTPUT c", "cycle"),
    ("b := NOT(b)\nOUTPUT b", "no inputs"),
    ("INPUT a\nb := NOT(a)", "no OUTPUT"),
    ("INPUT a\nb := FOO(a)\nOUTPUT b", "unknown gate"),
    ("INPUT a\nb = NOT(a)\nOUTPUT b", "cannot parse"),
    ("INPUT a\nOUTPUT z", "never defined"),
])
def test_parse_errors(text, msg):
    with pytest.raises(CircuitError, match=msg):
        parse_circuit(text)


def test_input_assignment_errors(enc):
    c = parse_circuit((CIRCUITS / "nand.txt").read_text())
    with pytest.raises(CircuitError):
        eval_circuit(c, "1", enc)
    with pytest.raises(CircuitError):
        eval_circuit(c, {"a": 1}, enc)
    with pytest.raises(CircuitError):
        eval_circuit(c, [1, 2], enc)
    assert eval_circuit(c, {"a": 1, "b": 1}, enc)[0] == 0


def test_boolean_gate_reference():
    for gate, table in EXPECTED.items():
        for ins, out in table.items():
            assert boolean_gate(gate, *ins) == out
