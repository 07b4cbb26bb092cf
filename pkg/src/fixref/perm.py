"""Permutations and permutation groups given by generators.

Points are ``0..n-1`` and groups act on the right: ``i^(gh) = (i^g)^h``.
Group structure comes from a deterministic Schreier-Sims run whose base
points are taken in the order requested, then the smallest moved point.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence


class PermError(ValueError):
    pass


class Permutation:
    __slots__ = ("images", "_hash")

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise PermError(f"not a bijection on 0..{len(images) - 1}: {images}")
        self.images = images
        self._hash = None

    @classmethod
    def _raw(cls, images: tuple) -> "Permutation":
        p = object.__new__(cls)
        p.images = images
        p._hash = None
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._raw(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        img = list(range(n))
        seen = set()
        for cyc in cycles:
            cyc = list(cyc)
            for p in cyc:
                if not 0 <= p < n:
                    raise PermError(f"point {p} outside 0..{n - 1}")
                if p in seen:
                    raise PermError(f"point {p} appears in two cycles")
                seen.add(p)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls._raw(tuple(img))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()})"

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation._raw(tuple(inv))

    def support(self) -> frozenset:
        return frozenset(i for i, x in enumerate(self.images) if i != x)

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def restricted(self, points: Sequence[int]) -> "Permutation":
        """Action on an invariant set, reindexed by position in ``points``."""
        index = {p: i for i, p in enumerate(points)}
        try:
            return Permutation._raw(tuple(index[self.images[p]] for p in points))
        except KeyError:
            raise PermError("point set is not invariant") from None


def apply(g: Permutation, i: int) -> int:
    return g.images[i]


def compose(g: Permutation, h: Permutation) -> Permutation:
    """First g, then h."""
    if len(g.images) != len(h.images):
        raise PermError(f"domain mismatch: {len(g.images)} vs {len(h.images)}")
    return Permutation._raw(tuple(map(h.images.__getitem__, g.images)))


def inverse(g: Permutation) -> Permutation:
    return g.inverse()


def support(g: Permutation) -> frozenset:
    return g.support()


def _mul(a: tuple, b: tuple) -> tuple:
    return tuple(map(b.__getitem__, a))


def _inv(a: tuple) -> tuple:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def _first_moved(a: tuple) -> int:
    for i, x in enumerate(a):
        if i != x:
            return i
    return -1


class _Chain:
    """Base, strong generators and per-level transversals (tuples)."""

    def __init__(self, n: int, base: list, strong: list):
        self.n = n
        self.base = base
        self.strong = strong
        self.transversals: list[dict] = []
        self.inverses: list[dict] = []

    def level_gens(self, i: int) -> list:
        pts = self.base[:i]
        return [s for s in self.strong if all(s[b] == b for b in pts)]

    def compute_level(self, i: int) -> None:
        gens = self.level_gens(i)
        b = self.base[i]
        ident = tuple(range(self.n))
        trans = {b: ident}
        queue = deque([b])
        while queue:
            p = queue.popleft()
            u = trans[p]
            for s in gens:
                q = s[p]
                if q not in trans:
                    trans[q] = _mul(u, s)
                    queue.append(q)
        while len(self.transversals) <= i:
            self.transversals.append({})
            self.inverses.append({})
        self.transversals[i] = trans
        self.inverses[i] = {}

    def inv_rep(self, i: int, p: int) -> tuple:
        cache = self.inverses[i]
        r = cache.get(p)
        if r is None:
            r = cache[p] = _inv(self.transversals[i][p])
        return r

    def sift(self, h: tuple, start: int = 0) -> tuple[tuple, int]:
        for l in range(start, len(self.base)):
            b = self.base[l]
            img = h[b]
            if img == b:
                continue
            if img not in self.transversals[l]:
                return h, l
            h = _mul(h, self.inv_rep(l, img))
        return h, len(self.base)

    def order(self) -> int:
        return math.prod(len(t) for t in self.transversals)


_IDENTITIES: dict = {}


def _is_identity(a: tuple) -> bool:
    n = len(a)
    ident = _IDENTITIES.get(n)
    if ident is None:
        ident = _IDENTITIES[n] = tuple(range(n))
    return a == ident


def schreier_sims(n: int, gens: Sequence[tuple], prefix: Sequence[int] = ()) -> _Chain:
    """Deterministic Schreier-Sims.  ``prefix`` seeds the base."""
    base: list[int] = []
    for b in prefix:
        if b not in base:
            base.append(b)
    strong = []
    for g in gens:
        if not _is_identity(g) and g not in strong:
            strong.append(g)
    for g in strong:
        if all(g[b] == b for b in base):
            base.append(_first_moved(g))
    chain = _Chain(n, base, strong)
    for i in range(len(base)):
        chain.compute_level(i)
    # checked[i] holds (point, generator) pairs already sifted at level i
    checked: list[set] = [set() for _ in base]
    i = len(base) - 1
    while i >= 0:
        trans = chain.transversals[i]
        gens_i = chain.level_gens(i)
        found = None
        done = checked[i]
        for beta, u in list(trans.items()):
            for s in gens_i:
                key = (beta, s)
                if key in done:
                    continue
                done.add(key)
                img = s[beta]
                us = _mul(u, s)
                if us == trans[img]:
                    continue
                h = _mul(us, chain.inv_rep(i, img))
                res, j = chain.sift(h, i + 1)
                if not _is_identity(res):
                    found = (res, j)
                    break
            if found:
                break
        if found is None:
            i -= 1
            continue
        res, j = found
        chain.strong.append(res)
        if j == len(chain.base):
            chain.base.append(_first_moved(res))
            checked.append(set())
        for l in range(i + 1, j + 1):
            chain.compute_level(l)
            checked[l] = set()
        i = j
    # levels with trivial orbit carry no information; drop trailing ones only
    return chain


class PermGroup:
    """Group generated by permutations of ``0..n-1`` with a lazy BSGS."""

    def __init__(self, n: int, generators: Iterable[Permutation] = (),
                 domain_map: Sequence[int] | None = None):
        gens = []
        seen = set()
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.n != n:
                raise PermError(f"generator on {g.n} points, group on {n}")
            if g.is_identity() or g in seen:
                continue
            seen.add(g)
            gens.append(g)
        self.n = n
        self.generators = tuple(gens)
        self.domain_map = tuple(domain_map) if domain_map is not None else None
        self._chain: _Chain | None = None

    def __repr__(self) -> str:
        gens = ", ".join(g.cycle_string() for g in self.generators)
        return f"PermGroup({self.n}, [{gens}])"

    @classmethod
    def symmetric(cls, n: int) -> "PermGroup":
        if n < 2:
            return cls(n)
        return cls(n, [Permutation.from_cycles(n, [(0, 1)]),
                       Permutation.from_cycles(n, [tuple(range(n))])])

    @classmethod
    def alternating(cls, n: int) -> "PermGroup":
        if n < 3:
            return cls(n)
        return cls(n, [Permutation.from_cycles(n, [(0, 1, i)]) for i in range(2, n)])

    def identity(self) -> Permutation:
        return Permutation.identity(self.n)

    def is_trivial(self) -> bool:
        return not self.generators

    # orbits -----------------------------------------------------------

    def orbit(self, i: int) -> list[int]:
        seen = {i}
        out = [i]
        queue = deque([i])
        while queue:
            p = queue.popleft()
            for g in self.generators:
                q = g.images[p]
                if q not in seen:
                    seen.add(q)
                    out.append(q)
                    queue.append(q)
        return sorted(out)

    def orbits(self) -> list[list[int]]:
        """Orbit partition, orbits sorted by smallest point."""
        cached = getattr(self, "_orbits", None)
        if cached is not None:
            return [list(o) for o in cached]
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.generators:
            for i, x in enumerate(g.images):
                if i == x:
                    continue
                a, b = find(i), find(x)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = {}
        for i in range(self.n):
            groups.setdefault(find(i), []).append(i)
        self._orbits = tuple(tuple(groups[r]) for r in sorted(groups))
        return [list(o) for o in self._orbits]

    def is_transitive_on(self, points: Iterable[int]) -> bool:
        pts = sorted(set(points))
        return bool(pts) and self.orbit(pts[0]) == pts

    # BSGS -------------------------------------------------------------

    def build_bsgs(self) -> None:
        if self._chain is None:
            self._chain = schreier_sims(self.n, [g.images for g in self.generators])

    @property
    def base(self) -> list[int]:
        self.build_bsgs()
        return list(self._chain.base)

    @property
    def strong_generators(self) -> list[Permutation]:
        self.build_bsgs()
        return [Permutation._raw(s) for s in self._chain.strong]

    def order(self) -> int:
        if not self.generators:
            return 1
        self.build_bsgs()
        return self._chain.order()

    def contains(self, g: Permutation) -> bool:
        if g.n != self.n:
            raise PermError("domain mismatch")
        if g.is_identity():
            return True
        self.build_bsgs()
        res, _ = self._chain.sift(g.images)
        return _is_identity(res)

    __contains__ = contains

    def pointwise_stabilizer(self, points: Iterable[int]) -> "PermGroup":
        """Subgroup fixing every point of ``points``.

        Runs Schreier-Sims with the points at the front of the base and keeps
        the strong generators of the residual level.
        """
        pts = []
        for p in points:
            if p not in pts:
                pts.append(p)
        if not self.generators:
            return PermGroup(self.n)
        moved = set()
        for g in self.generators:
            moved |= g.support()
        pts = [p for p in pts if p in moved]
        if not pts:
            return PermGroup(self.n, self.generators)
        chain = schreier_sims(self.n, [g.images for g in self.generators], pts)
        k = len(pts)
        fixed = [s for s in chain.strong if all(s[p] == p for p in pts)]
        sub = PermGroup(self.n, [Permutation._raw(s) for s in fixed])
        # the residual chain is already a BSGS for the stabilizer
        if len(chain.base) > k:
            residual = _Chain(self.n, chain.base[k:], [s for s in fixed])
            residual.transversals = chain.transversals[k:]
            residual.inverses = chain.inverses[k:]
            sub._chain = residual
        else:
            sub._chain = _Chain(self.n, [], [])
        return sub

    def stabilizer_order(self, points: Iterable[int]) -> int:
        return self.pointwise_stabilizer(points).order()

    def is_base(self, points: Iterable[int]) -> bool:
        return self.pointwise_stabilizer(points).order() == 1

    def elements(self) -> list[Permutation]:
        """All elements, by closure.  Only for small groups."""
        ident = tuple(range(self.n))
        seen = {ident}
        queue = deque([ident])
        gens = [g.images for g in self.generators]
        while queue:
            a = queue.popleft()
            for s in gens:
                b = _mul(a, s)
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return [Permutation._raw(a) for a in seen]

    # blocks -----------------------------------------------------------

    def minimal_block(self, points: Sequence[int]) -> list[int]:
        """Smallest block containing ``points`` (Atkinson's union-find)."""
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        queue = deque()
        a = points[0]
        for b in points[1:]:
            ra, rb = find(a), find(b)
            if ra != rb:
                lo, hi = min(ra, rb), max(ra, rb)
                parent[hi] = lo
                queue.append(hi)
        while queue:
            c = queue.popleft()
            rc = find(c)
            for g in self.generators:
                x, y = find(g.images[c]), find(g.images[rc])
                if x != y:
                    lo, hi = min(x, y), max(x, y)
                    parent[hi] = lo
                    queue.append(hi)
        r = find(a)
        return [i for i in range(self.n) if find(i) == r]

    def restrict(self, points: Iterable[int]) -> "PermGroup":
        """Action on an invariant set, reindexed to ``0..len-1`` in sorted order."""
        pts = sorted(set(points))
        gens = [g.restricted(pts) for g in self.generators]
        return PermGroup(len(pts), gens, domain_map=pts)


@dataclass(frozen=True)
class BlockSystem:
    orbit: tuple
    blocks: tuple
    primitive: bool = False

    @property
    def block_size(self) -> int:
        return len(self.blocks[0]) if self.blocks else 0

    def block_of(self, point: int) -> int:
        for i, b in enumerate(self.blocks):
            if point in b:
                return i
        raise KeyError(point)


def _check_transitive(group: PermGroup, orbit: Iterable[int]) -> list[int]:
    pts = sorted(set(orbit))
    if not pts or not group.is_transitive_on(pts):
        raise PermError(f"group is not transitive on {pts}")
    return pts


def _block_action(group: PermGroup, blocks: Sequence[Sequence[int]]) -> PermGroup:
    where = {}
    for i, b in enumerate(blocks):
        for p in b:
            where[p] = i
    gens = []
    for g in group.generators:
        gens.append(Permutation([where[g.images[b[0]]] for b in blocks]))
    return PermGroup(len(blocks), gens)


def _nontrivial_block(action: PermGroup) -> list[int] | None:
    """A nontrivial block of a transitive action containing 0, if any."""
    m = action.n
    for j in range(1, m):
        blk = action.minimal_block([0, j])
        if len(blk) < m:
            return blk
    return None


def maximal_block_system(group: PermGroup, orbit: Iterable[int]) -> BlockSystem:
    """Block system of maximal nontrivial blocks on a transitive orbit.

    Minimal blocks are merged upward until the action on blocks is
    primitive.  A primitive action returns the singleton system flagged
    ``primitive=True``.
    """
    pts = _check_transitive(group, orbit)
    if len(pts) < 2:
        raise PermError("orbit needs at least two points")
    sub = group.restrict(pts)
    blocks = [[i] for i in range(sub.n)]
    while True:
        action = _block_action(sub, blocks)
        blk = _nontrivial_block(action)
        if blk is None:
            break
        # lift the block of blocks and translate it around
        merged = sorted(p for b in blk for p in blocks[b])
        seen = set()
        new_blocks = []
        for b0 in range(sub.n):
            if b0 in seen:
                continue
            image = _translate_block(sub, merged, b0)
            seen.update(image)
            new_blocks.append(image)
        blocks = sorted(new_blocks)
    primitive = len(blocks) == sub.n
    out = tuple(tuple(pts[i] for i in b) for b in blocks)
    return BlockSystem(tuple(pts), out, primitive)


def _translate_block(group: PermGroup, block: list[int], target: int) -> list[int]:
    """The image of ``block`` containing ``target`` (BFS over the block orbit)."""
    start = tuple(block)
    if target in start:
        return list(start)
    seen = {start}
    queue = deque([start])
    while queue:
        b = queue.popleft()
        for g in group.generators:
            img = tuple(sorted(g.images[p] for p in b))
            if img not in seen:
                if target in img:
                    return list(img)
                seen.add(img)
                queue.append(img)
    raise PermError("block images do not cover the orbit")


def is_primitive(group: PermGroup, orbit: Iterable[int]) -> bool:
    pts = _check_transitive(group, orbit)
    if len(pts) <= 2:
        return True
    return _nontrivial_block(group.restrict(pts)) is None


def is_block_system(group: PermGroup, system: BlockSystem) -> bool:
    blocks = {frozenset(b) for b in system.blocks}
    sizes = {len(b) for b in blocks}
    if len(sizes) != 1 or set().union(*blocks) != set(system.orbit):
        return False
    return all(frozenset(g.images[p] for p in b) in blocks
               for g in group.generators for b in blocks)


def block_kernel(group: PermGroup, system: BlockSystem) -> PermGroup:
    """Subgroup mapping every block of ``system`` to itself.

    The group is extended to act on points plus one extra point per block;
    the kernel is the pointwise stabilizer of the block points.
    """
    if not is_block_system(group, system):
        raise PermError("not a block system for this group")
    n, r = group.n, len(system.blocks)
    where = {}
    for i, b in enumerate(system.blocks):
        for p in b:
            where[p] = i
    ext = []
    for g in group.generators:
        on_blocks = [n + where[g.images[b[0]]] for b in system.blocks]
        ext.append(Permutation(g.images + tuple(on_blocks)))
    big = PermGroup(n + r, ext)
    stab = big.pointwise_stabilizer(range(n, n + r))
    return PermGroup(n, [Permutation._raw(s.images[:n]) for s in stab.generators])


def recognize_sym_alt(group: PermGroup, orbit: Iterable[int]) -> str:
    """'sym', 'alt' or 'other' for the action on a transitive orbit."""
    pts = _check_transitive(group, orbit)
    order = group.restrict(pts).order()
    full = math.factorial(len(pts))
    if order == full:
        return "sym"
    if 2 * order == full:
        return "alt"
    return "other"


def restrict(group: PermGroup, orbit: Iterable[int]) -> PermGroup:
    return group.restrict(orbit)


def orbits(group: PermGroup) -> list[list[int]]:
    return group.orbits()


def pointwise_stabilizer(group: PermGroup, points: Iterable[int]) -> PermGroup:
    return group.pointwise_stabilizer(points)
