"""Permutation group queries for verifying constructed actions.

Permutations are integer arrays ``p`` with ``p[i]`` the image of ``i``; the
product ``a * b`` applies ``a`` first.  Group orders come from a deterministic
Schreier-Sims stabilizer chain whose base points are always the least point
moved by the element that forces a new level, with a linear-time shortcut for
regular actions such as Cayley graphs.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from .action_graph import ActionGraph
from .errors import BudgetExceeded


@dataclass(frozen=True)
class PermutationPair:
    perm_x: tuple[int, ...]
    perm_y: tuple[int, ...]

    @classmethod
    def from_graph(cls, g: ActionGraph) -> PermutationPair:
        return cls(tuple(int(v) for v in g.perm_x), tuple(int(v) for v in g.perm_y))

    @property
    def degree(self) -> int:
        return len(self.perm_x)


def is_permutation(p: Sequence[int]) -> bool:
    n = len(p)
    return all(isinstance(v, (int, np.integer)) for v in p) and sorted(p) == list(range(n))


def cycle_lengths(p: Sequence[int]) -> list[int]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        k, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            k += 1
        out.append(k)
    return out


def element_order(p: Sequence[int]) -> int:
    """Least common multiple of the cycle lengths."""
    return reduce(math.lcm, cycle_lengths(p), 1)


def is_transitive(g: PermutationPair) -> bool:
    n = g.degree
    if n == 0:
        return False
    seen = {0}
    stack = [0]
    inverses = [_inverse_list(g.perm_x), _inverse_list(g.perm_y)]
    while stack:
        v = stack.pop()
        for p in (g.perm_x, g.perm_y, *inverses):
            w = p[v]
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def _inverse_list(p: Sequence[int]) -> list[int]:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return inv


def factorize(n: int) -> dict[int, int]:
    out: Counter[int] = Counter()
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] += 1
            n //= f
        f += 1
    if n > 1:
        out[n] += 1
    return dict(sorted(out.items()))


class _Level:
    """One level of the chain: base point, strong generators, transversal."""

    def __init__(self, point: int, identity: np.ndarray):
        self.point = point
        self.gens: list[np.ndarray] = []
        self.orbit = [point]
        self.slot = np.full(len(identity), -1, dtype=np.int64)  # point -> row in reps
        self.slot[point] = 0
        self.reps = [identity]
        self.inv_reps = [identity]
        self.pending: deque[tuple[int, int]] = deque()  # unsifted (point, generator) pairs
        self._stack = None

    def inv_stack(self) -> np.ndarray:
        if self._stack is None or len(self._stack) != len(self.inv_reps):
            self._stack = np.stack(self.inv_reps)
        return self._stack

    def add_generator(self, s: np.ndarray, identity: np.ndarray) -> None:
        k = len(self.gens)
        self.gens.append(s)
        self.pending.extend((pt, k) for pt in self.orbit)
        i = 0
        while i < len(self.orbit):
            pt = self.orbit[i]
            rep = self.reps[self.slot[pt]]
            for s in self.gens:
                img = int(s[pt])
                if self.slot[img] < 0:
                    new = s[rep]
                    inv = np.empty_like(new)
                    inv[new] = identity
                    self.slot[img] = len(self.reps)
                    self.reps.append(new)
                    self.inv_reps.append(inv)
                    self.orbit.append(img)
                    self.pending.extend((img, j) for j in range(len(self.gens)))
            i += 1


class StabilizerChain:
    """Base, strong generating set and explicit transversals for a permutation group.

    Every (orbit point, strong generator) pair of every level is turned into a
    Schreier generator and sifted once; an element that sifted to the
    identity keeps doing so as the chain grows, because transversals only
    ever gain points.  Pending pairs are sifted in numpy batches whose size
    adapts to how often they fail.
    """

    def __init__(self, gens: Sequence[Sequence[int]], degree: int):
        self.degree = degree
        self.identity = np.arange(degree, dtype=np.int32)
        self.levels: list[_Level] = []
        for g in gens:
            a = np.asarray(g, dtype=np.int32)
            residue, drop = self.sift(a)
            self._insert(residue, 0, drop)
        self._complete()

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    def _insert(self, h: np.ndarray, first: int, drop: int) -> None:
        """Add ``h`` (which fixes the base points before ``drop``) to levels ``first..drop``."""
        if drop == len(self.levels):
            if np.array_equal(h, self.identity):
                return
            self.levels.append(_Level(int(np.flatnonzero(h != self.identity)[0]), self.identity))
        for lv in self.levels[first:drop + 1]:
            lv.add_generator(h, self.identity)

    def sift(self, h: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        """Strip ``h`` through levels ``start..``; return the residue and the drop-out level."""
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            row = lv.slot[h[lv.point]]
            if row < 0:
                return h, i
            h = lv.inv_reps[row][h]
        return h, len(self.levels)

    def _sift_many(self, hs: np.ndarray, start: int) -> np.ndarray:
        """Batch sift; boolean mask of rows that do not reduce to the identity."""
        failed = np.zeros(len(hs), dtype=bool)
        active = np.arange(len(hs))
        for lv in self.levels[start:]:
            rows = lv.slot[hs[active, lv.point]]
            miss = rows < 0
            failed[active[miss]] = True
            active, rows = active[~miss], rows[~miss]
            if not len(active):
                return failed
            hs[active] = np.take_along_axis(lv.inv_stack()[rows], hs[active], axis=1)
        failed[active] |= np.any(hs[active] != self.identity, axis=1)
        return failed

    def _schreier(self, lv: _Level, pairs: list[tuple[int, int]]) -> np.ndarray:
        pts = np.array([pt for pt, _ in pairs])
        gens = np.stack([lv.gens[k] for _, k in pairs])
        reps = np.stack([lv.reps[lv.slot[pt]] for pt in pts])
        moved = np.take_along_axis(gens, reps, axis=1)  # rep_pt then s
        inv_img = lv.inv_stack()[lv.slot[gens[np.arange(len(pairs)), pts]]]
        return np.take_along_axis(inv_img, moved, axis=1)

    def _complete(self) -> None:
        i = len(self.levels) - 1
        chunk = 4
        while i >= 0:
            lv = self.levels[i]
            if not lv.pending:
                i -= 1
                continue
            pairs = [lv.pending.popleft() for _ in range(min(chunk, len(lv.pending)))]
            schreier = self._schreier(lv, pairs)
            failed = np.flatnonzero(self._sift_many(schreier.copy(), i + 1))
            if not len(failed):
                chunk = min(chunk * 2, 128)
                continue
            first = int(failed[0])
            lv.pending.extendleft(reversed(pairs[first + 1:]))
            chunk = 4
            residue, drop = self.sift(schreier[first], i + 1)
            self._insert(residue, i + 1, drop)
            i = min(drop, len(self.levels) - 1)

    def orbit_sizes(self) -> list[int]:
        return [len(lv.orbit) for lv in self.levels]

    def order(self) -> int:
        return math.prod(self.orbit_sizes())

    def contains(self, h: Sequence[int]) -> bool:
        residue, drop = self.sift(np.asarray(h, dtype=np.int32))
        return drop == len(self.levels) and np.array_equal(residue, self.identity)


def _bfs_tree(g: PermutationPair) -> tuple[list[int], list[tuple[int, int]]] | None:
    """Breadth-first order from 0 and, per vertex, (parent, move); None if not transitive.

    Moves 0, 1 are x, y and 2, 3 their inverses.
    """
    n = g.degree
    moves = [g.perm_x, g.perm_y, _inverse_list(g.perm_x), _inverse_list(g.perm_y)]
    parent: list[tuple[int, int] | None] = [None] * n
    parent[0] = (0, -1)
    order = [0]
    for v in order:
        for k, m in enumerate(moves):
            w = m[v]
            if parent[w] is None:
                parent[w] = (v, k)
                order.append(w)
    if len(order) != n:
        return None
    return order, parent  # type: ignore[return-value]


def is_regular(g: PermutationPair) -> bool:
    """True iff the group acts transitively with trivial point stabilizers.

    A transitive group is regular exactly when its centralizer in the
    symmetric group is transitive.  The centralizer element sending 0 to
    ``v`` must map ``0 * w`` to ``v * w`` for every word ``w``; it suffices
    that this map is well defined for ``v = 0 * x`` and ``v = 0 * y``, since
    those two elements already move 0 to every vertex.
    """
    tree = _bfs_tree(g)
    if tree is None:
        return False
    order, parent = tree
    px, py = np.asarray(g.perm_x), np.asarray(g.perm_y)
    moves = [g.perm_x, g.perm_y, _inverse_list(g.perm_x), _inverse_list(g.perm_y)]
    for v in (g.perm_x[0], g.perm_y[0]):
        c = [0] * g.degree
        c[0] = v
        for a in order[1:]:
            pa, k = parent[a]
            c[a] = moves[k][c[pa]]
        ca = np.asarray(c)
        if not (np.array_equal(ca[px], px[ca]) and np.array_equal(ca[py], py[ca])):
            return False
    return True


def group_order(g: PermutationPair, max_degree: int | None = None) -> tuple[int, dict[int, int]]:
    """Exact order of the group generated by the pair, with its prime factorization.

    Regular actions are recognised directly (the order is the degree);
    otherwise a stabilizer chain is built, which is refused with
    ``BudgetExceeded`` above ``max_degree``.
    """
    if g.degree and is_regular(g):
        return g.degree, factorize(g.degree)
    if max_degree is not None and g.degree > max_degree:
        raise BudgetExceeded(f"degree {g.degree} above the group-order limit {max_degree}")
    chain = StabilizerChain([g.perm_x, g.perm_y], g.degree)
    factors: Counter[int] = Counter()
    for size in chain.orbit_sizes():
        factors.update(factorize(size))
    return chain.order(), dict(sorted(factors.items()))


def is_prime_power(n: int, p: int) -> bool:
    while n > 1 and n % p == 0:
        n //= p
    return n == 1


def is_p_group(g: PermutationPair, p: int, max_degree: int | None = None) -> bool:
    return is_prime_power(group_order(g, max_degree)[0], p)
