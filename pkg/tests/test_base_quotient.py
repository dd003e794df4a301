import pytest
from hypothesis import given, settings, strategies as st

from pratio.action_graph import all_u_cycles, order_of_word
from pratio.base_quotient import (TruncatedSeries, build_base_graph, embed_letter, find_base,
                                  image_of_word, monomials, series_inv, series_mul)
from pratio.errors import BudgetExceeded
from pratio.permgroup import PermutationPair, is_p_group
from pratio.words import Letter, Word

from strategies import cyclic_words

W = Word.parse
T = TruncatedSeries.from_terms


def test_embed_letter():
    assert embed_letter(Letter(0, 1), 2, 2) == T({"": 1, "X": 1}, 2, 2)
    assert str(embed_letter(Letter(0, -1), 2, 2)) == "1 + X + XX"
    for l in (Letter(0, 1), Letter(1, -1)):
        assert (embed_letter(l, 4, 3) * embed_letter(l.inverse(), 4, 3)).is_one()
    with pytest.raises(ValueError):
        embed_letter(Letter(0, 1), 0, 2)


def test_series_examples():
    one_x, one_y = image_of_word(W("x"), 2, 2), image_of_word(W("y"), 2, 2)
    assert str(one_x * one_y) == "1 + X + Y + XY"
    assert str(series_inv(image_of_word(W("x"), 3, 3))) == "1 + 2X + XX + 2XXX"
    assert image_of_word(W("xx"), 1, 2).is_one()
    with pytest.raises(ValueError):
        series_mul(image_of_word(W("x"), 2, 2), image_of_word(W("x"), 3, 2))
    with pytest.raises(ValueError):
        series_inv(T({"X": 1}, 2, 2))


def test_image_of_word():
    assert image_of_word(Word(), 3, 2).is_one()
    assert image_of_word(W("xyXY"), 1, 2).is_one()
    assert str(image_of_word(W("xyXY"), 2, 2)) == "1 + XY + YX"


series = st.builds(
    lambda coeffs, d, p: T({"": 1, **dict(zip(monomials(d), coeffs))}, d, p),
    st.lists(st.integers(0, 4), max_size=14), st.integers(1, 3), st.sampled_from([2, 3, 5]))


@given(series)
def test_inverse_property(a):
    assert (a * series_inv(a)).is_one()
    assert (series_inv(a) * a).is_one()


@given(cyclic_words(), st.integers(1, 4), st.sampled_from([2, 3]))
def test_letter_inverse_cancels(w, d, p):
    assert image_of_word(w * w.inverse(), d, p).is_one()


def _closure_order(p, d):
    """Group order by closing {1} under the two generator series (no vectorisation)."""
    gens = [image_of_word(W("x"), d, p), image_of_word(W("y"), d, p)]
    key = lambda s: tuple(sorted(s.coeffs.items()))
    one = TruncatedSeries.one(d, p)
    seen, frontier = {key(one)}, [one]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = a * g
                if key(b) not in seen:
                    seen.add(key(b))
                    nxt.append(b)
        frontier = nxt
    return len(seen)


@pytest.mark.parametrize("p, d", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)])
def test_base_order_matches_closure(p, d):
    assert len(build_base_graph(W("x"), W("y"), p, d)) == _closure_order(p, d)


# frozen from the closure oracle above
@pytest.mark.parametrize("p, d, order", [(2, 1, 4), (2, 2, 32), (2, 3, 128), (2, 4, 8192),
                                         (3, 1, 9), (3, 2, 27), (3, 3, 2187), (5, 2, 125)])
def test_base_orders(p, d, order):
    g = build_base_graph(W("x"), W("y"), p, d)
    assert len(g) == order
    assert g.base_vertex == 0
    assert is_p_group(PermutationPair.from_graph(g), p)


def _series_order(s):
    k, acc = 1, s
    while not acc.is_one():
        acc, k = acc * s, k + 1
    return k


@settings(max_examples=40, deadline=None)
@given(cyclic_words(5), st.sampled_from([(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)]))
def test_word_orders_match_series_orders(w, pd):
    p, d = pd
    g = build_base_graph(w, w, p, d)
    assert order_of_word(g, w) == _series_order(image_of_word(w, d, p))
    reports = all_u_cycles(g, w)
    assert len({c.length for c in reports}) == 1 and len({c.simple for c in reports}) == 1


def test_budget():
    with pytest.raises(BudgetExceeded):
        build_base_graph(W("x"), W("y"), 2, 3, budget=100)


@pytest.mark.parametrize("w1, w2, p, d", [("x", "y", 2, 1), ("xy", "xY", 2, 1), ("xyXY", "x", 2, 2),
                                          ("xy", "xY", 3, 1)])
def test_find_base(w1, w2, p, d):
    g, found = find_base(W(w1), W(w2), p)
    assert found == d
    for w in (W(w1), W(w2)):
        assert all(c.simple for c in all_u_cycles(g, w))
        assert not image_of_word(w, found, p).is_one()


def test_find_base_reports_failure():
    with pytest.raises(BudgetExceeded, match="trivial"):
        find_base(W("xyXY"), W("x"), 2, d_max=1)
