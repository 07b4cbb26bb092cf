"""Line-based text formats for graphs, groups, circuits and CNF formulas.

Every format accepts ``#`` comments and an optional ``label <text>`` line
carrying a ground-truth answer.  Vertices and points are 0-based.

graph     header ``graph <n> <m>``, lines ``c <v> <color>`` and ``e <u> <v>``
group     header ``group <n>``, one generator per line, either in cycle
          notation ``(0 1)(2 3)`` or as ``img <images...>``
circuit   optional header ``circuit <inputs>``, lines ``g<i> = AND|OR a b``
          and ``out <ref>``
cnf       DIMACS: ``p cnf <vars> <clauses>`` then clauses ending in ``0``
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .graph import ColoredGraph, GraphError, validate
from .perm import PermError, PermGroup, Permutation
from .reductions.builder import ReductionError
from .reductions.circuits import MonotoneCircuit
from .reductions.sat import CnfFormula


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class InstanceFile:
    kind: str                 # graph, group, circuit or cnf
    payload: object
    label: str | None = None


def _lines(text: str, comment: str = "#"):
    """(line number, tokens) of non-blank lines with comments removed."""
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(comment, 1)[0].strip()
        if line:
            yield no, line


def _int(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"expected an integer, got {tok!r}", no) from None


def _label_line(line: str):
    if line.startswith("label"):
        parts = line.split(None, 1)
        if parts[0] == "label":
            return parts[1] if len(parts) > 1 else ""
    return None


# graphs --------------------------------------------------------------

def parse_graph(text: str) -> InstanceFile:
    n = m = None
    colors: list = []
    edges: list = []
    seen: set = set()
    label = None
    for no, line in _lines(text):
        lab = _label_line(line)
        if lab is not None:
            label = lab
            continue
        tok = line.split()
        if n is None:
            if tok[0] != "graph" or len(tok) != 3:
                raise FormatError("expected header 'graph <n> <m>'", no)
            n, m = _int(tok[1], no), _int(tok[2], no)
            if n < 0 or m < 0:
                raise FormatError("negative size in header", no)
            colors = [0] * n
            continue
        if tok[0] == "c" and len(tok) == 3:
            v, c = _int(tok[1], no), _int(tok[2], no)
            if not 0 <= v < n:
                raise FormatError(f"vertex {v} out of range", no)
            colors[v] = c
        elif tok[0] == "e" and len(tok) == 3:
            u, v = _int(tok[1], no), _int(tok[2], no)
            if u == v:
                raise FormatError(f"self-loop at {u}", no)
            if not (0 <= u < n and 0 <= v < n):
                raise FormatError(f"edge {u} {v} out of range", no)
            e = (min(u, v), max(u, v))
            if e in seen:
                raise FormatError(f"duplicate edge {u} {v}", no)
            seen.add(e)
            edges.append(e)
        else:
            raise FormatError(f"unrecognized line {line!r}", no)
    if n is None:
        raise FormatError("missing 'graph' header")
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    g = ColoredGraph(n, frozenset(edges), tuple(colors))
    try:
        validate(g)
    except GraphError as exc:
        raise FormatError(str(exc)) from exc
    return InstanceFile("graph", g, label)


def write_graph(graph: ColoredGraph, label: str | None = None) -> str:
    out = [f"graph {graph.n} {graph.m}"]
    if label is not None:
        out.append(f"label {label}")
    out += [f"c {v} {c}" for v, c in enumerate(graph.colors) if c != 0]
    out += [f"e {u} {v}" for u, v in sorted(graph.edges)]
    return "\n".join(out) + "\n"


# groups --------------------------------------------------------------

_CYCLE = re.compile(r"\(([^()]*)\)")


def _parse_generator(line: str, n: int, no: int) -> Permutation:
    if line.startswith("img"):
        imgs = [_int(t, no) for t in line.split()[1:]]
        if len(imgs) != n:
            raise FormatError(f"image list has {len(imgs)} entries, expected {n}", no)
        try:
            return Permutation(imgs)
        except PermError as exc:
            raise FormatError(str(exc), no) from exc
    if _CYCLE.sub("", line).strip():
        raise FormatError(f"bad generator {line!r}", no)
    cycles = [[_int(t, no) for t in body.split()] for body in _CYCLE.findall(line)]
    try:
        return Permutation.from_cycles(n, [c for c in cycles if c])
    except PermError as exc:
        raise FormatError(str(exc), no) from exc


def parse_group(text: str) -> InstanceFile:
    n = None
    gens = []
    label = None
    for no, line in _lines(text):
        lab = _label_line(line)
        if lab is not None:
            label = lab
            continue
        if n is None:
            tok = line.split()
            if tok[0] != "group" or len(tok) != 2:
                raise FormatError("expected header 'group <n>'", no)
            n = _int(tok[1], no)
            if n < 0:
                raise FormatError("negative degree", no)
            continue
        gens.append(_parse_generator(line, n, no))
    if n is None:
        raise FormatError("missing 'group' header")
    return InstanceFile("group", PermGroup(n, gens), label)


def write_group(group: PermGroup, label: str | None = None) -> str:
    out = [f"group {group.n}"]
    if label is not None:
        out.append(f"label {label}")
    out += [g.cycle_string() for g in group.generators]
    return "\n".join(out) + "\n"


# circuits ------------------------------------------------------------

_GATE = re.compile(r"^g(\d+)\s*=\s*(AND|OR)\s+(\S+)\s+(\S+)$")


def parse_circuit(text: str) -> InstanceFile:
    n_inputs = None
    gates = []
    output = None
    label = None
    max_input = -1
    for no, line in _lines(text):
        lab = _label_line(line)
        if lab is not None:
            label = lab
            continue
        tok = line.split()
        if tok[0] == "circuit":
            if len(tok) != 2 or gates or n_inputs is not None:
                raise FormatError("'circuit <inputs>' must be a single leading header", no)
            n_inputs = _int(tok[1], no)
            continue
        if tok[0] == "out":
            if len(tok) != 2 or output is not None:
                raise FormatError("expected a single 'out <ref>' line", no)
            output = tok[1]
            continue
        m = _GATE.match(line)
        if not m:
            raise FormatError(f"unrecognized line {line!r}", no)
        idx = int(m.group(1))
        if idx != len(gates):
            raise FormatError(f"gate g{idx} out of order; expected g{len(gates)}", no)
        op, a, b = m.group(2), m.group(3), m.group(4)
        for ref in (a, b):
            if not re.fullmatch(r"[xg]\d+", ref):
                raise FormatError(f"bad reference {ref!r}", no)
            if ref[0] == "g" and int(ref[1:]) >= idx:
                raise FormatError(f"reference {ref} is not an earlier gate (cycle or forward use)", no)
            if ref[0] == "x":
                max_input = max(max_input, int(ref[1:]))
        gates.append((op, a, b))
    if output is None:
        raise FormatError("missing 'out' line")
    if re.fullmatch(r"x\d+", output):
        max_input = max(max_input, int(output[1:]))
    if n_inputs is None:
        n_inputs = max_input + 1
    try:
        circuit = MonotoneCircuit(n_inputs, tuple(gates), output)
    except ReductionError as exc:
        raise FormatError(str(exc)) from exc
    return InstanceFile("circuit", circuit, label)


def write_circuit(c: MonotoneCircuit, label: str | None = None) -> str:
    out = [f"circuit {c.n_inputs}"]
    if label is not None:
        out.append(f"label {label}")
    out += [f"g{i} = {op} {a} {b}" for i, (op, a, b) in enumerate(c.gates)]
    out.append(f"out {c.output}")
    return "\n".join(out) + "\n"


# CNF -----------------------------------------------------------------

def parse_cnf(text: str) -> InstanceFile:
    header = None
    clauses = []
    current: list = []
    label = None
    for no, line in _lines(text, comment="%"):
        lab = _label_line(line)
        if lab is not None:
            label = lab
            continue
        if line.startswith("c ") or line == "c" or line.startswith("#"):
            continue
        tok = line.split()
        if tok[0] == "p":
            if len(tok) != 4 or tok[1] != "cnf" or header is not None:
                raise FormatError("expected a single header 'p cnf <vars> <clauses>'", no)
            header = (_int(tok[2], no), _int(tok[3], no))
            continue
        if header is None:
            raise FormatError("clause before 'p cnf' header", no)
        for t in tok:
            lit = _int(t, no)
            if lit == 0:
                if not current:
                    raise FormatError("empty clause", no)
                clauses.append(tuple(current))
                current = []
                continue
            if abs(lit) > header[0]:
                raise FormatError(f"literal {lit} exceeds {header[0]} variables", no)
            current.append(lit)
            if len(current) > 3:
                raise FormatError("clause has more than 3 literals", no)
    if header is None:
        raise FormatError("missing 'p cnf' header")
    if current:
        raise FormatError("last clause is not terminated by 0")
    if len(clauses) != header[1]:
        raise FormatError(f"header announces {header[1]} clauses, found {len(clauses)}")
    return InstanceFile("cnf", CnfFormula(header[0], tuple(clauses)), label)


def write_cnf(f: CnfFormula, label: str | None = None) -> str:
    out = []
    if label is not None:
        out.append(f"label {label}")
    out.append(f"p cnf {f.num_vars} {len(f.clauses)}")
    out += [" ".join(map(str, c)) + " 0" for c in f.clauses]
    return "\n".join(out) + "\n"


PARSERS = {"graph": parse_graph, "group": parse_group, "circuit": parse_circuit, "cnf": parse_cnf}
WRITERS = {"graph": write_graph, "group": write_group, "circuit": write_circuit, "cnf": write_cnf}


def detect_kind(text: str) -> str:
    for _no, line in _lines(text, comment="%"):
        if line.startswith("#") or _label_line(line) is not None:
            continue
        word = line.split()[0]
        if word in ("graph", "group", "circuit"):
            return word
        if word in ("p", "c"):
            return "cnf"
        if re.match(r"g\d+", word) or word == "out":
            return "circuit"
        break
    raise FormatError("cannot tell the instance kind from the first line")


def parse_instance(text: str, kind: str | None = None) -> InstanceFile:
    return PARSERS[kind or detect_kind(text)](text)


def write_instance(inst: InstanceFile) -> str:
    return WRITERS[inst.kind](inst.payload, inst.label)
