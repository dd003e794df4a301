"""Brute-force ground truth: word orders over every generator pair of small p-groups.

Each catalog group is a concrete permutation group whose full element list
is enumerated by closure; for every assignment ``x -> a``, ``y -> b`` the two
words are evaluated and their orders recorded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .permgroup import element_order
from .words import Word

Perm = tuple[int, ...]


@dataclass(frozen=True)
class CatalogGroup:
    name: str
    order: int
    generators: tuple[Perm, ...]


def _cycle(n: int, offset: int = 0, degree: int | None = None) -> Perm:
    degree = offset + n if degree is None else degree
    out = list(range(degree))
    for i in range(n):
        out[offset + i] = offset + (i + 1) % n
    return tuple(out)


def _mul(a: Perm, b: Perm) -> Perm:
    """Apply ``a`` then ``b``."""
    return tuple(b[i] for i in a)


def _inv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def elements(gens: tuple[Perm, ...]) -> list[Perm]:
    """All elements of the group generated by ``gens``, identity first."""
    e = tuple(range(len(gens[0])))
    seen = {e}
    out = [e]
    for g in out:
        for s in gens:
            h = _mul(g, s)
            if h not in seen:
                seen.add(h)
                out.append(h)
    return out


def _cyclic(p: int, k: int) -> CatalogGroup:
    return CatalogGroup(f"C{p ** k}", p ** k, (_cycle(p ** k),))


def _cyclic_product(p: int, a: int, b: int) -> CatalogGroup:
    n1, n2 = p ** a, p ** b
    return CatalogGroup(f"C{n1}xC{n2}", n1 * n2,
                        (_cycle(n1, 0, n1 + n2), _cycle(n2, n1, n1 + n2)))


def _unitriangular(p: int) -> CatalogGroup:
    # acting on row vectors (u, v, w) of F_p^3 by right multiplication
    pts = list(itertools.product(range(p), repeat=3))
    index = {v: i for i, v in enumerate(pts)}
    e12 = tuple(index[(u, (v + u) % p, w)] for u, v, w in pts)
    e23 = tuple(index[(u, v, (w + v) % p)] for u, v, w in pts)
    return CatalogGroup(f"UT3(F{p})", p ** 3, (e12, e23))


def _wreath(p: int) -> CatalogGroup:
    # points (block, i) -> block * p + i; the top group rotates the blocks
    top = tuple(((b + 1) % p) * p + i for b in range(p) for i in range(p))
    bottom = tuple(b * p + ((i + 1) % p if b == 0 else i) for b in range(p) for i in range(p))
    return CatalogGroup(f"C{p} wr C{p}", p ** (p + 1), (top, bottom))


def catalog(p: int, max_order: int) -> list[CatalogGroup]:
    out = []
    k = 1
    while p ** k <= max_order:
        out.append(_cyclic(p, k))
        k += 1
    for a in range(1, k):
        for b in range(a, k):
            if p ** (a + b) <= max_order:
                out.append(_cyclic_product(p, a, b))
    out.append(_unitriangular(p))
    out.append(_wreath(p))
    return [g for g in out if g.order <= max_order]


def _evaluate(w: Word, a: Perm, b: Perm, a_inv: Perm, b_inv: Perm) -> Perm:
    table = {(0, 1): a, (0, -1): a_inv, (1, 1): b, (1, -1): b_inv}
    out = tuple(range(len(a)))
    for l in w:
        out = _mul(out, table[(l.base, l.sign)])
    return out


def achievable_pairs(u1: str, u2: str, p: int, max_order: int) -> set[tuple[int, int]]:
    """Every ``(ord(u1), ord(u2))`` realised by some ``x -> a, y -> b`` in a catalog group."""
    w1, w2 = Word.parse(u1), Word.parse(u2)
    found: set[tuple[int, int]] = set()
    for group in catalog(p, max_order):
        elems = elements(group.generators)
        if len(elems) != group.order:
            raise AssertionError(f"{group.name} has {len(elems)} elements, expected {group.order}")
        inverses = {g: _inv(g) for g in elems}
        for a in elems:
            for b in elems:
                o1 = element_order(_evaluate(w1, a, b, inverses[a], inverses[b]))
                o2 = element_order(_evaluate(w2, a, b, inverses[a], inverses[b]))
                found.add((o1, o2))
    return found
