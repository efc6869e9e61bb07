"""Boolean gates over group-encoded bits and a small netlist language.

Bit 0 is encoded as the identity and bit 1 as an order-3 element sigma.
A two-input gate first applies a group word ``f_in`` whose value lies in
{1, sigma, sigma^2}, then an adjuster ``F_out`` (a compression function for
sigma) folds sigma^2 back onto sigma. Everything here works on plaintext
group elements; there is no encryption layer.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence

from .constructions import a5_adjuster, s5_adjuster
from .group import FiniteGroup
from .groupfn import ConditionError, GroupFunction, check_condition_star

__all__ = [
    "GateError",
    "CircuitError",
    "GATES",
    "ARITY",
    "BitEncoding",
    "encoding",
    "f_in",
    "gate_eval",
    "boolean_gate",
    "Assignment",
    "Circuit",
    "parse_circuit",
    "eval_circuit",
    "eval_boolean",
    "truth_table",
]

ARITY = {"OR": 2, "NAND": 2, "XOR": 2, "AND": 2, "NOT": 1}
GATES = tuple(ARITY)


class GateError(ValueError):
    pass


class CircuitError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class BitEncoding:
    group: FiniteGroup
    sigma: int
    adjuster: GroupFunction
    name: str = ""

    def __post_init__(self):
        if self.adjuster.group is not self.group:
            raise ConditionError("adjuster is over a different group")
        if not check_condition_star(self.adjuster, self.sigma):
            raise ConditionError("adjuster does not compress sigma^2 onto sigma")

    @property
    def sigma2(self) -> int:
        return self.group.mul(self.sigma, self.sigma)

    def encode(self, bit: int) -> int:
        if bit not in (0, 1):
            raise GateError(f"not a bit: {bit!r}")
        return self.sigma if bit else 0

    def decode(self, h: int) -> int:
        if h == 0:
            return 0
        if h == self.sigma:
            return 1
        raise GateError(f"{self.group.label(h)} does not encode a bit")


def encoding(name: str) -> BitEncoding:
    """The size-4 A5 adjuster ("a5") or the size-6 S5 adjuster ("s5")."""
    key = name.lower()
    if key == "a5":
        kf = a5_adjuster()
    elif key == "s5":
        kf = s5_adjuster()
    else:
        raise GateError(f"unknown encoding {name!r}; use a5 or s5")
    return BitEncoding(kf.group, kf.sigma, kf.function, key)


def f_in(gate: str, a: int, b: int, enc: BitEncoding) -> int:
    """The pre-adjustment word of a two-input gate, evaluated in the group."""
    G = enc.group
    gate = gate.upper()
    if gate == "OR":
        return G.mul(a, b)
    if gate == "NAND":
        return G.product([G.inverse(a), G.inverse(b), enc.sigma2])
    if gate == "XOR":
        return G.mul(G.inverse(a), b)
    raise GateError(f"no input word for gate {gate!r}")


def _canonical(enc: BitEncoding, *xs: int) -> None:
    for x in xs:
        if x not in (0, enc.sigma):
            raise GateError(f"gate input {enc.group.label(x)} is not 1 or sigma")


def gate_eval(gate: str, a: int, b: int | None, enc: BitEncoding) -> int:
    gate = gate.upper()
    if gate not in ARITY:
        raise GateError(f"unknown gate {gate!r}")
    G = enc.group
    if gate == "NOT":
        _canonical(enc, a)
        return G.mul(G.mul(a, a), enc.sigma)
    if b is None:
        raise GateError(f"{gate} takes two inputs")
    _canonical(enc, a, b)
    if gate == "AND":
        return gate_eval("NOT", gate_eval("NAND", a, b, enc), None, enc)
    return enc.adjuster(f_in(gate, a, b, enc))


def boolean_gate(gate: str, a: int, b: int | None = None) -> int:
    gate = gate.upper()
    if gate == "NOT":
        return 1 - a
    ops = {"OR": a | b, "AND": a & b, "NAND": 1 - (a & b), "XOR": a ^ b}
    if gate not in ops:
        raise GateError(f"unknown gate {gate!r}")
    return ops[gate]


@dataclass(frozen=True)
class Assignment:
    wire: str
    gate: str
    args: tuple[str, ...]


@dataclass(frozen=True)
class Circuit:
    inputs: tuple[str, ...]
    assignments: tuple[Assignment, ...]
    output: str


_WIRE = r"[A-Za-z_][A-Za-z0-9_]*"
_INPUT_RE = re.compile(rf"^INPUT\s+({_WIRE}(?:\s*,?\s*{_WIRE})*)$", re.I)
_OUTPUT_RE = re.compile(rf"^OUTPUT\s+({_WIRE})$", re.I)
_ASSIGN_RE = re.compile(rf"^({_WIRE})\s*:=\s*([A-Za-z]+)\s*\(\s*({_WIRE})\s*(?:,\s*({_WIRE})\s*)?\)$")


def parse_circuit(text: str) -> Circuit:
    """Parse INPUT / ``w := GATE(a, b)`` / OUTPUT lines; ``#`` starts a comment.

    Assignments may appear in any order; they are returned topologically sorted.
    """
    inputs: list[str] = []
    defs: dict[str, Assignment] = {}
    order: list[str] = []
    output = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"line {lineno}"
        if m := _INPUT_RE.match(line):
            for w in re.split(r"[\s,]+", m.group(1)):
                if w in inputs or w in defs:
                    raise CircuitError(f"{where}: wire {w!r} defined twice")
                inputs.append(w)
        elif m := _OUTPUT_RE.match(line):
            if output is not None:
                raise CircuitError(f"{where}: more than one OUTPUT")
            output = m.group(1)
        elif m := _ASSIGN_RE.match(line):
            w, gate = m.group(1), m.group(2).upper()
            args = tuple(a for a in m.group(3, 4) if a)
            if gate not in ARITY:
                raise CircuitError(f"{where}: unknown gate {m.group(2)!r}")
            if len(args) != ARITY[gate]:
                raise CircuitError(f"{where}: {gate} takes {ARITY[gate]} input(s), got {len(args)}")
            if w in defs or w in inputs:
                raise CircuitError(f"{where}: wire {w!r} defined twice")
            defs[w] = Assignment(w, gate, args)
            order.append(w)
        else:
            raise CircuitError(f"{where}: cannot parse {line!r}")
    if not inputs:
        raise CircuitError("circuit has no inputs")
    if output is None:
        raise CircuitError("circuit has no OUTPUT")
    known = set(inputs) | set(defs)
    for a in defs.values():
        for x in a.args:
            if x not in known:
                raise CircuitError(f"wire {x!r} used by {a.wire!r} is never defined")
    if output not in known:
        raise CircuitError(f"output wire {output!r} is never defined")

    # depth-first topological sort, reporting the first cycle found
    state: dict[str, int] = {}
    sorted_defs: list[Assignment] = []

    def visit(w: str, stack: list[str]) -> None:
        if w in inputs or state.get(w) == 2:
            return
        if state.get(w) == 1:
            cyc = stack[stack.index(w):] + [w]
            raise CircuitError("cycle: " + " -> ".join(cyc))
        state[w] = 1
        for x in defs[w].args:
            visit(x, stack + [w])
        state[w] = 2
        sorted_defs.append(defs[w])

    for w in order:
        visit(w, [])
    return Circuit(tuple(inputs), tuple(sorted_defs), output)


def _bits(circuit: Circuit, bits: Mapping[str, int] | Sequence[int] | str) -> dict[str, int]:
    if isinstance(bits, str):
        bits = [int(c) for c in bits if not c.isspace()]
    if not isinstance(bits, Mapping):
        bits = list(bits)
        if len(bits) != len(circuit.inputs):
            raise CircuitError(f"expected {len(circuit.inputs)} input bits, got {len(bits)}")
        bits = dict(zip(circuit.inputs, bits))
    missing = [w for w in circuit.inputs if w not in bits]
    if missing:
        raise CircuitError(f"unassigned inputs: {', '.join(missing)}")
    out = {}
    for w in circuit.inputs:
        if bits[w] not in (0, 1):
            raise CircuitError(f"input {w} is not a bit")
        out[w] = int(bits[w])
    return out


def eval_circuit(circuit: Circuit, bits, enc: BitEncoding) -> tuple[int, dict[str, int]]:
    """Evaluate gate by gate over group elements; returns (output bit, wire trace)."""
    vals = {w: enc.encode(b) for w, b in _bits(circuit, bits).items()}
    for a in circuit.assignments:
        x = vals[a.args[0]]
        y = vals[a.args[1]] if len(a.args) > 1 else None
        vals[a.wire] = gate_eval(a.gate, x, y, enc)
    return enc.decode(vals[circuit.output]), vals


def eval_boolean(circuit: Circuit, bits) -> int:
    vals = _bits(circuit, bits)
    for a in circuit.assignments:
        vals[a.wire] = boolean_gate(a.gate, *(vals[x] for x in a.args))
    return vals[circuit.output]


def truth_table(gate: str, enc: BitEncoding) -> list[tuple[tuple[int, ...], int]]:
    """Decoded group evaluation of one gate on every input combination."""
    gate = gate.upper()
    rows = []
    for ins in product((0, 1), repeat=ARITY[gate]):
        els = [enc.encode(b) for b in ins]
        r = gate_eval(gate, els[0], els[1] if len(els) > 1 else None, enc)
        rows.append((ins, enc.decode(r)))
    return rows
