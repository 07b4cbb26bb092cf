"""Monotone circuits and their translation into colored graphs.

Each gate owns a vertex pair.  AND gates become a CFI gadget, OR gates two
implication gadgets into the same pair, and the output feeds a final pair
Q.  The primed variant adds implications from Q back to every input; the
double-primed variant links fresh input pairs to several copies.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from ..graph import ColoredGraph
from .builder import GraphBuilder, ReductionError, cfi_gadget, imp_gadget

OPS = ("AND", "OR")


@dataclass(frozen=True)
class MonotoneCircuit:
    n_inputs: int
    gates: tuple          # (op, ref, ref); refs are "x<i>" or "g<j>"
    output: str

    def __post_init__(self):
        check_circuit(self)


def _ref_ok(ref: str, n_inputs: int, before: int) -> bool:
    if len(ref) < 2 or ref[0] not in "xg" or not ref[1:].isdigit():
        return False
    i = int(ref[1:])
    return i < n_inputs if ref[0] == "x" else i < before


def check_circuit(c: MonotoneCircuit) -> None:
    if c.n_inputs < 0:
        raise ReductionError("negative input count")
    for j, gate in enumerate(c.gates):
        if len(gate) != 3:
            raise ReductionError(f"gate g{j} needs exactly two inputs")
        op, a, b = gate
        if op not in OPS:
            raise ReductionError(f"gate g{j}: unknown operation {op!r}")
        for ref in (a, b):
            if not _ref_ok(ref, c.n_inputs, j):
                raise ReductionError(f"gate g{j}: bad or forward reference {ref!r}")
    if not _ref_ok(c.output, c.n_inputs, len(c.gates)):
        raise ReductionError(f"bad output reference {c.output!r}")


def eval_circuit(c: MonotoneCircuit, x) -> int:
    x = list(x)
    if len(x) != c.n_inputs:
        raise ValueError(f"expected {c.n_inputs} inputs, got {len(x)}")
    vals = []

    def val(ref):
        i = int(ref[1:])
        return x[i] if ref[0] == "x" else vals[i]

    for op, a, b in c.gates:
        if op == "AND":
            vals.append(val(a) & val(b))
        else:
            vals.append(val(a) | val(b))
    return int(val(c.output))


def weighted_sat_brute(c: MonotoneCircuit, k: int) -> tuple | None:
    """First weight-k satisfying assignment, taking supports in lexicographic order."""
    if k < 0 or k > c.n_inputs:
        return None
    for ones in itertools.combinations(range(c.n_inputs), k):
        x = [0] * c.n_inputs
        for i in ones:
            x[i] = 1
        if eval_circuit(c, x):
            return tuple(x)
    return None


def random_circuit(rng: random.Random, n_inputs: int, n_gates: int) -> MonotoneCircuit:
    gates = []
    for j in range(n_gates):
        refs = [f"x{i}" for i in range(n_inputs)] + [f"g{i}" for i in range(j)]
        gates.append((rng.choice(OPS), rng.choice(refs), rng.choice(refs)))
    output = f"g{n_gates - 1}" if n_gates else "x0"
    return MonotoneCircuit(n_inputs, tuple(gates), output)


@dataclass
class CircuitGraph:
    graph: ColoredGraph
    variant: str
    inputs: list          # input pairs a weight-k assignment individualizes
    gate_pairs: list      # per copy, the list of gate pairs
    outputs: list         # per copy, the pair Q
    manifest: list = field(default_factory=list)

    def assignment_vertices(self, x) -> list[int]:
        return [self.inputs[i][0] for i, b in enumerate(x) if b]


def _add_circuit(b: GraphBuilder, c: MonotoneCircuit, inputs=None):
    """Gate pairs and gadgets of one copy; returns (input pairs, gate pairs, Q)."""
    ins = inputs if inputs is not None else [b.pair() for _ in range(c.n_inputs)]
    pairs: list = []

    def pair_of(ref):
        i = int(ref[1:])
        return ins[i] if ref[0] == "x" else pairs[i]

    for op, x, y in c.gates:
        pk = b.pair()
        pi, pj = pair_of(x), pair_of(y)
        if op == "AND":
            if pi == pj:
                # both inputs are the same wire: the gate copies it
                imp_gadget(b, pi, pk)
            else:
                cfi_gadget(b, pi, pj, pk)
        else:
            imp_gadget(b, pi, pk)
            imp_gadget(b, pj, pk)
        pairs.append(pk)
    q = b.pair()
    imp_gadget(b, pair_of(c.output), q)
    return ins, pairs, q


VARIANTS = ("XC", "XC_prime", "XC_dprime")


def circuit_to_graph(c: MonotoneCircuit, variant: str = "XC_dprime") -> CircuitGraph:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    b = GraphBuilder()
    if variant in ("XC", "XC_prime"):
        ins, pairs, q = _add_circuit(b, c)
        if variant == "XC_prime":
            for p in ins:
                imp_gadget(b, q, p)
        return CircuitGraph(b.build(), variant, ins, [pairs], [q], b.manifest)
    top = [b.pair() for _ in range(c.n_inputs)]
    gate_pairs, outputs = [], []
    for _copy in range(c.n_inputs):
        ins, pairs, q = _add_circuit(b, c)
        for i, p in enumerate(ins):
            imp_gadget(b, top[i], p)
        gate_pairs.append(pairs)
        outputs.append(q)
    for i, q in enumerate(outputs):
        imp_gadget(b, q, top[i])
    return CircuitGraph(b.build(), variant, top, gate_pairs, outputs, b.manifest)


def max_class_size(graph: ColoredGraph) -> int:
    sizes: dict = {}
    for c in graph.colors:
        sizes[c] = sizes.get(c, 0) + 1
    return max(sizes.values(), default=0)
