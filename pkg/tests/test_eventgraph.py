import pytest
from conftest import story
from hypothesis import given, settings
from hypothesis import strategies as st

from storyline import generators
from storyline.eventgraph import EventGraph, NotPairwiseError, build_event_graph, classify


def test_fig1_is_a_four_cycle(fig1):
    g = build_event_graph(fig1)
    assert g.m == 4
    assert all(g.degree(v) == 2 for v in range(4))
    assert g.is_connected()
    assert classify(g) == (True, False, 2)


def test_single_edge():
    g = build_event_graph(story("ab", ("ab", 0, 3)))
    assert g.edges == ((0, 1, 0),)
    assert classify(g).is_tree


def test_path():
    assert classify(build_event_graph(generators.path(5))) == (True, True, 2)


def test_complete_binary_tree():
    c = classify(build_event_graph(generators.complete_binary_tree(7)))
    assert c.is_tree and c.max_degree == 3


def test_rejects_group_meeting():
    with pytest.raises(NotPairwiseError, match="event 1"):
        build_event_graph(story("abc", ("ab", 0, 0), ("abc", 1, 1)))


def test_repeat_meeting_is_not_single():
    g = build_event_graph(story("ab", ("ab", 0, 0), ("ab", 2, 2)))
    assert g.adjacency == ((1, 1), (0, 0))
    assert classify(g) == (False, False, 2)


def test_forest_is_not_a_tree():
    g = EventGraph.from_pairs(4, [(0, 1), (2, 3)])
    assert not g.is_connected()
    assert not classify(g).is_tree


def test_bad_edge():
    with pytest.raises(ValueError):
        EventGraph.from_pairs(2, [(0, 0)])


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 30), st.integers(0, 1000), st.data())
def test_classification_survives_relabeling(n, seed, data):
    s = generators.random_tree(n, seed)
    mapping = data.draw(st.permutations(range(n)))
    a = build_event_graph(s)
    b = build_event_graph(s.relabel(mapping))
    assert classify(a) == classify(b)
    assert a.m == b.m == s.m
    assert sorted(map(a.degree, range(n))) == sorted(map(b.degree, range(n)))
