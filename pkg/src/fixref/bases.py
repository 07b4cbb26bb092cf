"""Bases of permutation groups: verification, exact minimum, greedy, and
the parameterized co-base search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .perm import (BlockSystem, PermGroup, Permutation, block_kernel,
                   is_primitive, maximal_block_system, recognize_sym_alt)


@dataclass(frozen=True)
class BaseResult:
    base: tuple
    b: int | None = None
    # (point, size of its orbit under the stabilizer of the earlier points)
    certificate: tuple = ()


def is_base(group: PermGroup, s) -> bool:
    return group.pointwise_stabilizer(s).order() == 1


def has_element_supported_in(group: PermGroup, points) -> bool:
    """Is there a nontrivial element whose support lies inside ``points``?

    Tries every permutation of the (small) point set by membership sifting.
    """
    pts = sorted(set(points))
    n = group.n
    for perm in itertools.permutations(pts):
        if list(perm) == pts:
            continue
        img = list(range(n))
        for a, b in zip(pts, perm):
            img[a] = b
        if group.contains(Permutation._raw(tuple(img))):
            return True
    return False


def _certificate(group: PermGroup, base) -> tuple:
    out = []
    h = group
    for p in base:
        out.append((p, len(h.orbit(p))))
        h = h.pointwise_stabilizer([p])
    return tuple(out)


def _fixed_points(h: PermGroup) -> frozenset:
    moved = set()
    for g in h.generators:
        moved |= g.support()
    return frozenset(range(h.n)) - moved


def min_base_exact(group: PermGroup) -> BaseResult:
    """Minimum base by iterative deepening.

    Each level tries one point per nontrivial orbit of the current
    stabilizer: points of one orbit have conjugate stabilizers, so they
    lead to bases of equal size.  Among those, a point whose stabilizer
    fixes another point can stand in for it, so only points whose
    stabilizers fix a maximal set are expanded.  Sets already explored are
    skipped, and a branch is cut when the stabilizer is larger than its
    largest orbit raised to the remaining depth.
    """
    if group.order() == 1:
        return BaseResult((), 0, ())

    def dfs(h: PermGroup, depth: int, chosen: list, seen: set):
        if h.order() == 1:
            return list(chosen)
        if depth == 0:
            return None
        orbits = [o for o in h.orbits() if len(o) > 1]
        if h.order() > max(len(o) for o in orbits) ** depth:
            return None
        options = []
        for orbit in orbits:
            p = min(orbit)
            st = h.pointwise_stabilizer([p])
            options.append((p, st, _fixed_points(st)))
        keep = []
        for p, st, fix in options:
            if any(fix < other or (fix == other and q < p) for q, _, other in options):
                continue
            keep.append((p, st))
        for p, st in keep:
            key = frozenset(chosen + [p])
            if key in seen:
                continue
            seen.add(key)
            chosen.append(p)
            found = dfs(st, depth - 1, chosen, seen)
            chosen.pop()
            if found is not None:
                return found
        return None

    for size in range(1, group.n + 1):
        found = dfs(group, size, [], set())
        if found is not None:
            return BaseResult(tuple(found), size, _certificate(group, found))
    raise AssertionError("the whole domain is always a base")


def greedy_base(group: PermGroup) -> list[int]:
    """Pick a point of a largest orbit of the current stabilizer until trivial."""
    base = []
    h = group
    while h.order() > 1:
        orbs = [o for o in h.orbits() if len(o) > 1]
        best = max(orbs, key=lambda o: (len(o), -o[0]))
        p = best[0]
        base.append(p)
        h = h.pointwise_stabilizer([p])
    return base


@dataclass
class CobaseResult:
    cobase: tuple | None
    k: int
    steps: list = field(default_factory=list)
    block_restarts: int = 0
    mandatory: tuple = ()
    verified: bool | None = None
    # reduced instance reached at the brute-force step: (group, free points)
    kernel: tuple | None = None

    @property
    def answer(self) -> bool:
        return self.cobase is not None


def cobase_fpt(group: PermGroup, k: int) -> CobaseResult:
    """Find k points whose complement is a base, or report that none exist.

    Orbits larger than k^(2k) are reduced: many blocks or a primitive
    non-symmetric action settle the answer at once, a few blocks pass to
    the block kernel, and a symmetric or alternating action lets all but
    k of its points be fixed.  Fixed points become mandatory base points.
    The remainder is bounded by a function of k and solved exhaustively.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    n = group.n
    res = CobaseResult(None, k)
    if k > n:
        res.steps.append("k exceeds domain")
        return res
    if k == 0:
        # the complement of the empty set is the whole domain, always a base
        res.steps.append("k = 0")
        res.cobase = ()
        res.verified = True
        return res
    threshold = k ** (2 * k)
    current = group
    mandatory: list[int] = []

    def finish(points):
        res.cobase = tuple(sorted(points))
        res.mandatory = tuple(mandatory)
        complement = [p for p in range(n) if p not in set(points)]
        res.verified = is_base(group, complement)
        return res

    while True:
        fixed = set(mandatory)
        orbs = [o for o in current.orbits() if not (len(o) == 1 and o[0] in fixed)]
        # step 1: enough orbits, one point from each of the first k
        if len(orbs) >= k:
            res.steps.append("orbits")
            return finish([o[0] for o in orbs[:k]])
        large = [o for o in orbs if len(o) > threshold]
        imprimitive = [o for o in large if not is_primitive(current, o)]
        if imprimitive:
            orbit = imprimitive[0]
            system = maximal_block_system(current, orbit)
            if len(system.blocks) > k:
                res.steps.append("blocks")
                return finish([b[0] for b in system.blocks[:k]])
            res.steps.append("block kernel")
            res.block_restarts += 1
            current = block_kernel(current, system)
            continue
        kinds = [(o, recognize_sym_alt(current, o)) for o in large]
        other = [o for o, kind in kinds if kind == "other"]
        if other:
            res.steps.append("primitive")
            return finish(other[0][:k])
        if kinds:
            orbit = kinds[0][0]
            pin = orbit[:len(orbit) - k]
            res.steps.append("symmetric")
            mandatory.extend(pin)
            current = current.pointwise_stabilizer(pin)
            continue
        break

    # step 5: every orbit is small; exhaust k-subsets of the free points
    res.steps.append("exhaustive")
    fixed = set(mandatory)
    free = [p for p in range(n) if p not in fixed]
    res.kernel = (current, tuple(free))
    res.mandatory = tuple(mandatory)
    for subset in itertools.combinations(free, k):
        if not has_element_supported_in(current, subset):
            return finish(subset)
    return res


def cobase_brute(group: PermGroup, k: int) -> tuple | None:
    """Lexicographically first k-set whose complement is a base (oracle)."""
    n = group.n
    if k > n:
        return None
    for subset in itertools.combinations(range(n), k):
        rest = [p for p in range(n) if p not in subset]
        if is_base(group, rest):
            return subset
    return None
