"""Shared hypothesis strategies and small graph builders for the tests."""

import numpy as np
from hypothesis import strategies as st

from pratio.action_graph import ActionGraph
from pratio.oracle import elements
from pratio.words import Word, cyclic_reduce, free_reduce


def _perm(draw, n):
    return draw(st.permutations(range(n)))


@st.composite
def action_graphs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    return ActionGraph(_perm(draw, n), _perm(draw, n))


@st.composite
def cyclic_words(draw, max_size=6):
    w = free_reduce(Word.parse(draw(st.text(st.sampled_from("xyXY"), min_size=1, max_size=max_size))))
    core = cyclic_reduce(w)[0]
    return core if len(core) else Word.parse("x")


def cayley_graph(a, b) -> ActionGraph:
    """Right-multiplication Cayley graph of the group generated by permutations a, b."""
    elems = elements((tuple(a), tuple(b)))
    index = {g: i for i, g in enumerate(elems)}
    mul = lambda g, s: tuple(s[i] for i in g)
    return ActionGraph([index[mul(g, tuple(a))] for g in elems],
                       [index[mul(g, tuple(b))] for g in elems], base_vertex=0)


@st.composite
def cayley_graphs(draw, max_degree=5, max_order=64):
    n = draw(st.integers(1, max_degree))
    a, b = _perm(draw, n), _perm(draw, n)
    size = len(elements((tuple(a), tuple(b))))
    if size > max_order:
        a = list(range(n))
    return cayley_graph(a, b)


def random_graph(rng: np.random.Generator, n: int) -> ActionGraph:
    return ActionGraph(rng.permutation(n), rng.permutation(n))
