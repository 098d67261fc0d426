import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pebbling.core import Graph, Signature, balances, complete_graph, path_graph, star_graph
from pebbling.orderability import check_minimum_signature, orderable
from pebbling.solvers import (
    BudgetExceeded,
    NotATree,
    SearchBudget,
    annihilation,
    brute_max_on,
    brute_nonrepetitive_reachable,
    coverable,
    greedy_tree_max,
    is_determinative,
    max_reachable,
    nonrepetitive_reachable,
    reachable,
)
from strategies import graph_with_distribution, trees

K2 = complete_graph(2)
P3 = path_graph(3)
METHODS = ("states", "signature")


@pytest.mark.parametrize("method", METHODS)
def test_reachable_examples(method):
    assert reachable(P3, (4, 0, 0), 2, 1, method=method).value
    assert not reachable(P3, (3, 0, 0), 2, 1, method=method).value
    rep = reachable(P3, (0, 0, 2), 2, 2, method=method)
    assert rep.value and rep.witness == Signature()


def test_budget_exhaustion_is_not_false():
    rep = reachable(path_graph(6), (40, 0, 0, 0, 0, 0), 5, 1, SearchBudget(max_states=2))
    if not rep.decided:
        with pytest.raises(BudgetExceeded):
            rep.value
    with pytest.raises(ValueError):
        SearchBudget(max_states=0)


def test_nonrepetitive_examples():
    assert nonrepetitive_reachable(K2, (2, 0), 1).value
    assert not nonrepetitive_reachable(P3, (4, 0, 0), 2).value


def test_coverable_examples():
    assert coverable(K2, (3, 0), (1, 1)).value
    assert not coverable(K2, (2, 0), (1, 1)).value
    rep = coverable(P3, (1, 2, 1), (1, 1, 1))
    assert rep.value and rep.witness == Signature()


def test_annihilation_examples():
    assert annihilation(P3, (0, 1, 0)).value
    assert annihilation(K2, (2, 0)).value
    assert not annihilation(Graph(1, []), (3,)).value


def test_greedy_examples():
    assert greedy_tree_max(P3, (4, 0, 0), 2) == 1
    assert greedy_tree_max(star_graph(3), (0, 2, 2, 2), 1) == 3
    assert greedy_tree_max(P3, (0, 5, 0), 1) == 5
    with pytest.raises(NotATree):
        greedy_tree_max(complete_graph(3), (1, 1, 1), 0)


def test_is_determinative_examples():
    assert is_determinative(P3, (1, 1, 1), 0)
    assert is_determinative(P3, (3, 0, 0), 2)
    assert not is_determinative(P3, (2, 0, 0), 1)


def test_max_reachable_on_path():
    assert max_reachable(P3, (8, 0, 0), 2) == 2
    assert max_reachable(P3, (0, 0, 3), 2) == 3


@given(graph_with_distribution(max_n=5, max_total=7), st.data())
@settings(max_examples=120, deadline=None)
def test_engines_agree_with_brute_force(gp, data):
    g, p = gp
    r = data.draw(st.integers(0, g.n - 1))
    truth = brute_max_on(g, p, r) >= 1
    for method in METHODS:
        assert reachable(g, p, r, 1, method=method).value == truth


@given(graph_with_distribution(max_n=5, max_total=8), st.data())
@settings(max_examples=120, deadline=None)
def test_witness_is_minimum_and_orderable(gp, data):
    g, p = gp
    r = data.draw(st.integers(0, g.n - 1))
    k = data.draw(st.integers(1, 3))
    for method in METHODS:
        rep = reachable(g, p, r, k, method=method)
        if rep.value:
            w = rep.witness
            assert orderable(w, p)
            assert balances(w, p)[r] >= k
            if p[r] >= k:
                assert w == Signature()
            else:
                assert check_minimum_signature(w, p, r, k)


@given(graph_with_distribution(max_n=5, max_total=6), st.data())
@settings(max_examples=100, deadline=None)
def test_monotone_in_distribution(gp, data):
    g, p = gp
    r = data.draw(st.integers(0, g.n - 1))
    extra = data.draw(st.lists(st.integers(0, 2), min_size=g.n, max_size=g.n))
    bigger = tuple(a + b for a, b in zip(p, extra))
    if reachable(g, p, r).value:
        assert reachable(g, bigger, r).value


@given(graph_with_distribution(max_n=4, max_total=6), st.data())
@settings(max_examples=80, deadline=None)
def test_nonrepetitive_matches_brute_force(gp, data):
    g, p = gp
    r = data.draw(st.integers(0, g.n - 1))
    assert nonrepetitive_reachable(g, p, r).value == brute_nonrepetitive_reachable(g, p, r)


@given(trees(max_n=8), st.data())
@settings(max_examples=100, deadline=None)
def test_greedy_is_optimal_on_trees(t, data):
    p = data.draw(st.lists(st.integers(0, 4), min_size=t.n, max_size=t.n).filter(lambda x: sum(x) <= 10))
    r = data.draw(st.integers(0, t.n - 1))
    assert greedy_tree_max(t, p, r) == max_reachable(t, p, r, method="signature")


@given(st.integers(1, 4), st.integers(0, 3), st.integers(0, 3), st.integers(0, 2))
@settings(max_examples=60, deadline=None)
def test_path_multiplicity_law(length, a0_extra, c, extra_source):
    # path v0..v_{L+1}, c pebbles on each internal vertex, big pile on v_{L+1}
    n = length + 2
    g = path_graph(n)
    pile = (1 << (length + 3)) + extra_source
    p = [0] + [c] * length + [pile]
    k = c + 1 + a0_extra
    rep = reachable(g, p, 0, k, method="signature")
    if not rep.value:
        return
    d = rep.witness
    a0 = d.get((1, 0), 0)
    if a0 >= c:
        assert d.get((n - 1, n - 2), 0) >= (a0 - c) * (1 << length) + c
