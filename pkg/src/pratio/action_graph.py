"""Action graphs of F(x, y): one permutation of the vertex set per generator.

Vertices are the integers ``0..N-1``.  The x-edge out of ``v`` ends at
``perm_x[v]``; reading a word from ``v`` applies the letters left to right, so
the action is a right action.  Inverse letters walk edges backwards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, reduce

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .words import GENERATORS, Letter, Word


class ActionGraph:
    def __init__(self, perm_x, perm_y, base_vertex: int | None = None):
        self.perm_x = np.asarray(perm_x, dtype=np.int64)
        self.perm_y = np.asarray(perm_y, dtype=np.int64)
        if self.perm_x.shape != self.perm_y.shape or self.perm_x.ndim != 1:
            raise ValueError("perm_x and perm_y must be 1-d arrays of equal length")
        self.base_vertex = base_vertex

    @property
    def vertex_count(self) -> int:
        return len(self.perm_x)

    def __len__(self) -> int:
        return len(self.perm_x)

    def __repr__(self) -> str:
        return f"ActionGraph(N={len(self)})"

    def perm(self, base: int) -> np.ndarray:
        return self.perm_x if base == 0 else self.perm_y

    @cached_property
    def _inverses(self) -> tuple[np.ndarray, np.ndarray]:
        out = []
        for p in (self.perm_x, self.perm_y):
            inv = np.empty_like(p)
            inv[p] = np.arange(len(p))
            out.append(inv)
        return out[0], out[1]

    def letter_map(self, letter: Letter) -> np.ndarray:
        """Image array of every vertex under one letter."""
        base, sign = letter
        return self.perm(base) if sign > 0 else self._inverses[base]

    def act(self, v: int, letter: Letter) -> int:
        return int(self.letter_map(letter)[v])

    def word_permutation(self, w: Word) -> np.ndarray:
        """Array whose entry ``v`` is the endpoint of the path from ``v`` spelling ``w``."""
        out = np.arange(len(self))
        for l in w:
            out = self.letter_map(l)[out]
        return out


@dataclass(frozen=True)
class PathTrace:
    start: int
    letters: Word
    visited: tuple[int, ...]

    @property
    def end(self) -> int:
        return self.visited[-1]

    def __len__(self) -> int:
        return len(self.letters)

    def edges(self) -> list[tuple[int, int, int]]:
        """Edges as ``(tail, generator, head)`` in their positive orientation."""
        return [_edge(a, l, b) for a, l, b in zip(self.visited, self.letters, self.visited[1:])]


@dataclass(frozen=True)
class CycleReport:
    base: int
    length: int
    trace: tuple[int, ...]
    simple: bool
    word: Word

    def edges(self) -> list[tuple[int, int, int]]:
        letters = (self.word ** self.length).letters
        return [_edge(a, l, b) for a, l, b in zip(self.trace, letters, self.trace[1:])]


def _edge(a: int, l: Letter, b: int) -> tuple[int, int, int]:
    return (a, l.base, b) if l.sign > 0 else (b, l.base, a)


def validate(g: ActionGraph) -> bool:
    """True iff both generator arrays are permutations of ``0..N-1``."""
    n = len(g)
    if n == 0:
        return False
    for p in (g.perm_x, g.perm_y):
        if p.min() < 0 or p.max() >= n:
            return False
        if len(np.unique(p)) != n:
            return False
    return True


def is_connected(g: ActionGraph) -> bool:
    n = len(g)
    rows = np.concatenate([np.arange(n), np.arange(n)])
    cols = np.concatenate([g.perm_x, g.perm_y])
    adj = coo_matrix((np.ones(2 * n, dtype=np.int8), (rows, cols)), shape=(n, n))
    count, _ = connected_components(adj, directed=True, connection="weak")
    return count == 1


def trace(g: ActionGraph, start: int, w: Word) -> PathTrace:
    if not 0 <= start < len(g):
        raise IndexError(f"vertex {start} out of range for N={len(g)}")
    visited = [start]
    v = start
    for l in w:
        v = g.act(v, l)
        visited.append(v)
    return PathTrace(start, w, tuple(visited))


def u_cycle(g: ActionGraph, base: int, u: Word) -> CycleReport:
    """The u-cycle at ``base``: the closed path spelling ``u**k`` with ``k`` minimal."""
    if not len(u):
        raise ValueError("u-cycles need a nonempty word")
    v, k = base, 0
    while True:
        v = trace(g, v, u).end
        k += 1
        if v == base:
            break
    path = trace(g, base, u ** k)
    inner = path.visited[:-1]
    return CycleReport(base, k, path.visited, len(set(inner)) == len(inner), u)


def all_u_cycles(g: ActionGraph, u: Word) -> list[CycleReport]:
    """One report per orbit of the u-action, based at the orbit's least vertex."""
    seen = np.zeros(len(g), dtype=bool)
    pu = g.word_permutation(u)
    reports = []
    for v in range(len(g)):
        if seen[v]:
            continue
        w = v
        while not seen[w]:
            seen[w] = True
            w = pu[w]
        reports.append(u_cycle(g, v, u))
    return reports


def order_of_word(g: ActionGraph, u: Word) -> int:
    """Order of the permutation induced by ``u``: lcm of its u-cycle lengths."""
    sizes = np.unique(orbit_sizes(g.word_permutation(u)))
    return reduce(math.lcm, (int(s) for s in sizes), 1)


def contains_subpath(c: CycleReport, s: PathTrace) -> bool:
    """True iff the edges of ``s`` occur consecutively in the closed cycle, in either direction."""
    if not len(s):
        return s.start in c.trace
    ce, se = c.edges(), s.edges()
    if len(se) > len(ce):
        return False
    L, m = len(ce), len(se)
    for target in (se, se[::-1]):
        for off in range(L):
            if all(ce[(off + j) % L] == target[j] for j in range(m)):
                return True
    return False


# Vectorised helpers used on large graphs.

def orbit_labels(perm: np.ndarray) -> np.ndarray:
    """Least vertex of each vertex's orbit under ``perm`` (pointer doubling)."""
    labels = np.arange(len(perm))
    jump = perm.copy()
    span = 1
    while span < len(perm):
        labels = np.minimum(labels, labels[jump])
        jump = jump[jump]
        span *= 2
    return labels


def orbit_sizes(perm: np.ndarray) -> np.ndarray:
    """Size of the orbit containing each vertex."""
    labels = orbit_labels(perm)
    return np.bincount(labels, minlength=len(perm))[labels]


def cycles_all_simple(g: ActionGraph, u: Word) -> bool:
    """True iff every u-cycle of ``g`` visits no vertex twice."""
    n = len(g)
    labels = orbit_labels(g.word_permutation(u))
    keys = []
    pos = np.arange(n)
    for l in u:
        keys.append(labels * n + pos)
        pos = g.letter_map(l)[pos]
    keys = np.concatenate(keys)
    return len(np.unique(keys)) == len(keys)


def orbits_containing_path(g: ActionGraph, u: Word, s: PathTrace) -> set[int]:
    """Orbit labels (as in ``orbit_labels``) of the u-cycles containing ``s``.

    A u-cycle contains ``s`` read forwards exactly when the label of ``s``
    matches ``u`` repeated from some offset ``t`` and the cycle passes through
    ``alpha(s)`` at that offset; the backwards case uses the reversed path.
    """
    if not len(u):
        raise ValueError("u-cycles need a nonempty word")
    labels = orbit_labels(g.word_permutation(u))
    sizes = np.bincount(labels, minlength=len(g))
    found = set()
    reversed_s = PathTrace(s.end, s.letters.inverse(), s.visited[::-1])
    k = len(u)
    for path in (s, reversed_s):
        for t in range(k):
            if any(path.letters[j] != u[(t + j) % k] for j in range(len(path))):
                continue
            base = trace(g, path.start, u[:t].inverse()).end
            if len(path) <= sizes[labels[base]] * k:
                found.add(int(labels[base]))
    return found


def to_dot(g: ActionGraph, name: str = "action_graph") -> str:
    lines = [f"digraph {name} {{"]
    for v in range(len(g)):
        attrs = ' shape=doublecircle' if v == g.base_vertex else ""
        lines.append(f"  {v} [label=\"{v}\"{attrs}];")
    for base, gen in enumerate(GENERATORS):
        for v, w in enumerate(g.perm(base)):
            lines.append(f"  {v} -> {int(w)} [label=\"{gen}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"
