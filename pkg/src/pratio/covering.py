"""Cyclic n-fold covers of action graphs rewired along a single edge.

Copies are numbered ``1..n`` and vertex ``v`` of copy ``i`` gets the flat id
``(i - 1) * N + v``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .action_graph import ActionGraph, PathTrace, trace, validate
from .words import Letter


@dataclass(frozen=True)
class CoveringSpec:
    base_vertex: int
    letter: Letter
    fold: int


def lift_vertex(v: int, i: int, n_vertices: int, fold: int | None = None) -> int:
    if not 0 <= v < n_vertices:
        raise IndexError(f"vertex {v} out of range for N={n_vertices}")
    if i < 1 or (fold is not None and i > fold):
        raise IndexError(f"copy index {i} out of range")
    return (i - 1) * n_vertices + v


def unflatten(vid: int, n_vertices: int) -> tuple[int, int]:
    """Inverse of ``lift_vertex``: flat id -> (vertex, copy index)."""
    return vid % n_vertices, vid // n_vertices + 1


def project(vid, n_vertices: int):
    return vid % n_vertices


def gamma(g: ActionGraph, spec: CoveringSpec) -> ActionGraph:
    """Build ``n`` copies of ``g`` and rewire the ``spec.letter`` edge at ``spec.base_vertex``.

    For a positive letter the edge ``q -> q'`` becomes ``(q, i) -> (q', i+1)``;
    for a negative letter the edge ``q' -> q`` (with ``q' = q * letter``)
    becomes ``(q', i+1) -> (q, i)``.  Copy indices wrap modulo ``n``.
    """
    N, n = len(g), spec.fold
    if n < 2:
        raise ValueError("fold must be at least 2")
    if not 0 <= spec.base_vertex < N:
        raise IndexError(f"base vertex {spec.base_vertex} out of range for N={N}")
    if not validate(g):
        raise ValueError("input is not an action graph")

    offsets = np.repeat(np.arange(n) * N, N)
    perms = [np.tile(p, n) + offsets for p in (g.perm_x, g.perm_y)]

    base, sign = spec.letter
    q = spec.base_vertex
    copies = np.arange(n)
    if sign > 0:
        tail, head = q, int(g.perm(base)[q])
        perms[base][copies * N + tail] = ((copies + 1) % n) * N + head
    else:
        tail = g.act(q, spec.letter)
        head = q
        perms[base][((copies + 1) % n) * N + tail] = copies * N + head
    return ActionGraph(perms[0], perms[1])


def lift_path(s: PathTrace, i: int, cover: ActionGraph, n_base: int) -> PathTrace:
    """The path in ``cover`` starting at copy ``i`` of ``alpha(s)`` with the same label."""
    return trace(cover, lift_vertex(s.start, i, n_base), s.letters)
