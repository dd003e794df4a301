import numpy as np
import pytest
from hypothesis import given, strategies as st

from pratio.action_graph import (PathTrace, all_u_cycles, is_connected, orbit_sizes, trace,
                                 validate)
from pratio.covering import CoveringSpec, gamma, lift_path, lift_vertex, project, unflatten
from pratio.words import Letter, Word

from strategies import action_graphs, cyclic_words

W = Word.parse
x, X = Letter(0, 1), Letter(0, -1)


def test_rose_double_cover(rose):
    g = gamma(rose, CoveringSpec(0, x, 2))
    assert g.perm_x.tolist() == [1, 0]
    assert g.perm_y.tolist() == [0, 1]


def test_klein_cover_positive_letter(klein):
    g = gamma(klein, CoveringSpec(0, x, 2))
    assert len(g) == 8
    assert sorted(set(_cycle_lengths(g.perm_x))) == [2, 4]
    assert sorted(_cycle_lengths(g.perm_x)) == [2, 2, 2, 2, 4, 4, 4, 4]
    assert sorted(orbit_sizes(g.perm_y).tolist()) == [2] * 8
    # (00, 1) -> (10, 2) and (00, 2) -> (10, 1)
    assert g.perm_x[0] == 6 and g.perm_x[4] == 2


def test_klein_cover_negative_letter(klein):
    g = gamma(klein, CoveringSpec(0, X, 2))
    assert sorted(orbit_sizes(g.perm_x).tolist()) == sorted(orbit_sizes(
        gamma(klein, CoveringSpec(0, x, 2)).perm_x).tolist())
    # the edge into q = 00 is rewired: (10, 2) -> (00, 1) and (10, 1) -> (00, 2)
    assert g.perm_x[6] == 0 and g.perm_x[2] == 4


def _cycle_lengths(perm):
    return orbit_sizes(perm).tolist()


def test_invalid_specs(klein):
    with pytest.raises(ValueError):
        gamma(klein, CoveringSpec(0, x, 1))
    with pytest.raises(IndexError):
        gamma(klein, CoveringSpec(4, x, 2))


def test_lift_vertex():
    assert lift_vertex(0, 1, 4) == 0
    assert lift_vertex(3, 2, 4) == 7
    ids = {lift_vertex(v, i, 5, 3) for v in range(5) for i in range(1, 4)}
    assert ids == set(range(15))
    for v in range(5):
        for i in range(1, 4):
            assert unflatten(lift_vertex(v, i, 5, 3), 5) == (v, i)
    with pytest.raises(IndexError):
        lift_vertex(5, 1, 5)
    with pytest.raises(IndexError):
        lift_vertex(0, 4, 5, 3)


def test_lift_path(klein):
    cover = gamma(klein, CoveringSpec(0, x, 2))
    lifted = lift_path(trace(klein, 0, W("x")), 1, cover, 4)
    assert unflatten(lifted.end, 4) == (2, 2)
    empty = lift_path(PathTrace(3, Word(), (3,)), 2, cover, 4)
    assert empty.visited == (7,)
    inside = lift_path(trace(klein, 1, W("xyx")), 2, cover, 4)
    assert [unflatten(v, 4)[1] for v in inside.visited] == [2] * 4


@given(action_graphs(max_n=10), st.integers(2, 5), st.booleans(), st.data())
def test_cover_properties(g, fold, negative, data):
    q = data.draw(st.integers(0, len(g) - 1))
    letter = Letter(data.draw(st.integers(0, 1)), -1 if negative else 1)
    cover = gamma(g, CoveringSpec(q, letter, fold))
    assert validate(cover)
    assert len(cover) == fold * len(g)
    n = len(g)
    for base in (0, 1):
        assert np.array_equal(project(cover.perm(base), n), g.perm(base)[project(np.arange(len(cover)), n)])
    if is_connected(g):
        assert is_connected(cover)


@given(action_graphs(max_n=8), st.sampled_from([2, 3, 5]), cyclic_words(5), st.data())
def test_prime_fold_cycle_lengths(g, p, u, data):
    q = data.draw(st.integers(0, len(g) - 1))
    letter = Letter(data.draw(st.integers(0, 1)), data.draw(st.sampled_from([1, -1])))
    cover = gamma(g, CoveringSpec(q, letter, p))
    base_len = orbit_sizes(g.word_permutation(u))
    for c in all_u_cycles(cover, u):
        ell = base_len[project(c.base, len(g))]
        assert c.length in (ell, p * ell)
