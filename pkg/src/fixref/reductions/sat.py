"""Small 3-CNF formulas as set cover instances, elementary abelian 2-groups
and rigid colored graphs.

Variables are split into k blocks.  Each block assignment a gives a set
S_{i,a}: the clauses a satisfies plus a private element for block i.  The
group F_2^U acts on one copy of F_2^S per set by flipping coordinates, so a
point set is a base exactly when the sets of the copies it touches cover U.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..graph import ColoredGraph
from ..perm import PermGroup, Permutation
from .builder import ReductionError


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple      # tuples of non-zero ints; -v is the negation of v

    def __post_init__(self):
        for j, clause in enumerate(self.clauses):
            if not 1 <= len(clause) <= 3:
                raise ReductionError(f"clause {j} has {len(clause)} literals; need 1 to 3")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ReductionError(f"clause {j}: literal {lit} out of range")

    def occurrences(self) -> dict:
        out: dict = {}
        for clause in self.clauses:
            for lit in clause:
                out[abs(lit)] = out.get(abs(lit), 0) + 1
        return out

    def satisfied_by(self, values) -> bool:
        """``values[v]`` is the truth value of variable v (1-based)."""
        return all(any(values[abs(l)] == (l > 0) for l in c) for c in self.clauses)

    def satisfiable(self) -> bool:
        for bits in itertools.product((False, True), repeat=self.num_vars):
            if self.satisfied_by((None,) + bits):
                return True
        return False


def normalize_occurrences(f: CnfFormula) -> CnfFormula:
    """Equisatisfiable formula in which every variable occurs at most 3 times.

    Repeated literals inside a clause are merged.  A variable with t > 3
    occurrences is replaced by fresh copies x_1..x_t tied together by the
    implication cycle x_1 -> x_2 -> ... -> x_t -> x_1.
    """
    clauses = [tuple(dict.fromkeys(c)) for c in f.clauses]
    num = f.num_vars
    extra = []
    for v in range(1, f.num_vars + 1):
        spots = [(j, q) for j, c in enumerate(clauses) for q, l in enumerate(c) if abs(l) == v]
        if len(spots) <= 3:
            continue
        fresh = list(range(num + 1, num + len(spots) + 1))
        num += len(spots)
        for (j, q), x in zip(spots, fresh):
            c = list(clauses[j])
            c[q] = x if c[q] > 0 else -x
            clauses[j] = tuple(c)
        for a, b in zip(fresh, fresh[1:] + fresh[:1]):
            extra.append((-a, b))
    return CnfFormula(num, tuple(clauses) + tuple(extra))


@dataclass
class SetCoverInstance:
    m: int                       # number of clauses
    k: int                       # number of blocks
    blocks: tuple                # variables of each block
    labels: tuple                # (block i, assignment bits) per set, i is 1-based
    sets: tuple                  # frozensets over U = {1..m+k}

    @property
    def universe(self) -> frozenset:
        return frozenset(range(1, self.m + self.k + 1))

    def covers(self, chosen) -> bool:
        got = set()
        for s in chosen:
            got |= self.sets[s]
        return got == self.universe


@dataclass
class GroupInstance:
    cover: SetCoverInstance
    group: PermGroup
    # per point of omega: (set index, bit vector over the sorted set)
    points: tuple
    # per set index: its points, in bit-vector order
    copies: tuple = field(default_factory=tuple)

    def touched_sets(self, pts) -> set:
        return {self.points[p][0] for p in pts}


def block_partition(num_vars: int, k: int, n_unary: int) -> tuple:
    """Greedy blocks of floor(log2 n) variables in variable order, padded to k."""
    if n_unary < 2:
        raise ReductionError("n must be at least 2")
    size = n_unary.bit_length() - 1
    blocks = [tuple(range(s, min(s + size, num_vars + 1))) for s in range(1, num_vars + 1, size)]
    if len(blocks) > k:
        raise ReductionError(f"size bound violated: {num_vars} variables need "
                             f"{len(blocks)} blocks of {size}, only k = {k} allowed")
    return tuple(blocks) + ((),) * (k - len(blocks))


def build_set_cover(f: CnfFormula, k: int, n_unary: int) -> SetCoverInstance:
    if k < 1:
        raise ReductionError("k must be positive")
    if any(c > 3 for c in f.occurrences().values()):
        raise ReductionError("a variable occurs more than 3 times; normalize first")
    blocks = block_partition(f.num_vars, k, n_unary)
    m = len(f.clauses)
    labels, sets = [], []
    for i, block in enumerate(blocks, start=1):
        for bits in itertools.product((0, 1), repeat=len(block)):
            value = dict(zip(block, bits))
            s = {m + i}
            for j, clause in enumerate(f.clauses, start=1):
                if any(abs(l) in value and value[abs(l)] == (l > 0) for l in clause):
                    s.add(j)
            labels.append((i, bits))
            sets.append(frozenset(s))
    return SetCoverInstance(m, k, blocks, tuple(labels), tuple(sets))


def mini3sat_to_group(f: CnfFormula, k: int, n_unary: int) -> GroupInstance:
    cover = build_set_cover(f, k, n_unary)
    points, copies = [], []
    for s_idx, s in enumerate(cover.sets):
        start = len(points)
        for bits in itertools.product((0, 1), repeat=len(s)):
            points.append((s_idx, bits))
        copies.append(tuple(range(start, len(points))))
    index = {pt: p for p, pt in enumerate(points)}
    gens = []
    for e in sorted(cover.universe):
        img = list(range(len(points)))
        for s_idx, s in enumerate(cover.sets):
            if e not in s:
                continue
            q = sorted(s).index(e)
            for p in copies[s_idx]:
                bits = list(points[p][1])
                bits[q] ^= 1
                img[p] = index[(s_idx, tuple(bits))]
        gens.append(Permutation._raw(tuple(img)))
    return GroupInstance(cover, PermGroup(len(points), gens), tuple(points), tuple(copies))


def min_set_cover(cover: SetCoverInstance) -> tuple:
    """Smallest cover, first in lexicographic order of set indices (oracle)."""
    n = len(cover.sets)
    for size in range(0, n + 1):
        for chosen in itertools.combinations(range(n), size):
            if cover.covers(chosen):
                return chosen
    raise ReductionError("the sets do not cover the universe")


@dataclass
class RigidGraph:
    graph: ColoredGraph
    instance: GroupInstance
    # I_j for j = 1..m+k: (vertex for bit 0, vertex for bit 1)
    pairs: tuple

    def base_of(self, vertices) -> tuple:
        """Points of omega among a vertex set; omega points keep their ids."""
        n = len(self.instance.points)
        return tuple(sorted(v for v in vertices if v < n))


def group_to_rigid_graph(inst: GroupInstance) -> RigidGraph:
    """Omega plus one two-vertex class per universe element.

    Each omega vertex is joined, for every element of its set, to the
    vertex of that element's class matching its bit.  Omega vertices are
    colored by their copy, so vertices of different copies with the same
    set can never be exchanged.
    """
    cover = inst.cover
    n_omega = len(inst.points)
    size = len(cover.universe)
    colors = [s_idx for s_idx, _ in inst.points]
    first_pair_color = len(cover.sets)
    pairs = []
    for j in range(size):
        base = n_omega + 2 * j
        pairs.append((base, base + 1))
        colors.extend([first_pair_color + j] * 2)
    edges = []
    for p, (s_idx, bits) in enumerate(inst.points):
        for e, b in zip(sorted(cover.sets[s_idx]), bits):
            edges.append((p, pairs[e - 1][b]))
    g = ColoredGraph.from_edges(n_omega + 2 * size, edges, colors)
    return RigidGraph(g, inst, tuple(pairs))
