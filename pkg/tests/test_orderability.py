import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pebbling.core import Signature, apply_sequence, balances, signature_of
from pebbling.orderability import (
    NotAcyclic,
    NotOrderable,
    boost_target,
    check_minimum_signature,
    check_target_set_outdegrees,
    component_digraph,
    extract_ordering,
    is_orderable,
    is_orderable_acyclic,
    orderable,
    strip_cycles,
)
from strategies import signatures

CYCLE3 = Signature({(0, 1): 1, (1, 2): 1, (2, 0): 1})
CHAIN = Signature({(0, 1): 2, (1, 2): 1})


def test_unit_cycle_fails_sink_condition():
    ok, diag = is_orderable(CYCLE3, (1, 1, 1))
    assert not ok
    assert diag.kind == "sink-condition"
    assert set(diag.component) == {0, 1, 2}
    assert "sink-condition" in str(diag)


def test_single_arc_and_loaded_cycle():
    assert orderable(Signature({(0, 1): 1}), (2, 0))
    assert orderable(CYCLE3, (2, 1, 1))


def test_negative_balance_is_reported():
    ok, diag = is_orderable(CHAIN, (3, 0, 0))
    assert not ok and diag.kind == "balance" and diag.vertex == 0


def test_acyclic_examples():
    assert is_orderable_acyclic(CHAIN, (4, 0, 0))
    assert not is_orderable_acyclic(CHAIN, (3, 0, 0))
    assert is_orderable_acyclic(Signature(), (0, 0))


def test_extract_ordering_examples():
    seq = extract_ordering(CHAIN, (4, 0, 0))
    assert len(seq) == 3 and signature_of(seq) == CHAIN
    seq = extract_ordering(CYCLE3, (2, 1, 1))
    assert seq[0][0] == 0 and signature_of(seq) == CYCLE3
    assert extract_ordering(Signature(), (1, 1)) == []


def test_extract_ordering_refuses_unorderable():
    with pytest.raises(NotOrderable):
        extract_ordering(CYCLE3, (1, 1, 1))


def test_strip_cycles_examples():
    assert strip_cycles(CYCLE3, (2, 1, 1)) == Signature()
    assert strip_cycles(CHAIN, (4, 0, 0)) == CHAIN
    d = Signature({(0, 1): 1, (1, 2): 1, (2, 0): 1, (0, 3): 1})
    assert strip_cycles(d, (3, 1, 1, 0)) == Signature({(0, 3): 1})


def test_boost_target_examples():
    out = boost_target(CHAIN, (4, 0, 0), 0)
    assert out == Signature()
    assert balances(out, (4, 0, 0))[0] == 4
    assert boost_target(CHAIN, (4, 0, 0), 2) == CHAIN
    assert boost_target(Signature({(0, 1): 2}), (4, 0), 0) == Signature()
    with pytest.raises(NotAcyclic):
        boost_target(CYCLE3, (2, 1, 1), 0)


def test_minimum_signature_examples():
    assert check_minimum_signature(CHAIN, (4, 0, 0), 2, 1)
    assert not check_minimum_signature(CHAIN, (4, 0, 0), 2, 2)
    # vertex 3 is a proper sink other than the target
    d = Signature({(0, 1): 2, (1, 2): 1, (0, 3): 1})
    assert not check_minimum_signature(d, (6, 0, 0, 0), 2, 1)


def test_target_outdegrees_examples():
    assert check_target_set_outdegrees(Signature({(0, 1): 1}), [1], 1)
    assert not check_target_set_outdegrees(Signature({(0, 1): 1}), [0], 2)
    assert check_target_set_outdegrees(Signature({(0, 1): 1, (2, 1): 1}), [0, 2], 4)
    with pytest.raises(ValueError):
        check_target_set_outdegrees(Signature(), [0], 0)


def test_component_digraph_of_cycle_plus_tail():
    cd = component_digraph(Signature({(0, 1): 1, (1, 0): 1, (1, 2): 1}))
    assert len(cd.sinks()) == 1
    assert [sorted(cd.components[c]) for c in cd.sinks()] == [[2]]
    assert sorted(cd.components[cd.index[0]]) == [0, 1]


@given(signatures(n=4, max_total=6), st.lists(st.integers(0, 4), min_size=4, max_size=4))
@settings(max_examples=300)
def test_extracted_order_replays(d, p):
    if not orderable(d, p):
        return
    seq = extract_ordering(d, p)
    assert signature_of(seq) == d
    from pebbling.core import complete_graph

    assert list(apply_sequence(complete_graph(4), p, seq)) == balances(d, p)


@given(signatures(n=4, max_total=6), st.lists(st.integers(0, 4), min_size=4, max_size=4))
@settings(max_examples=300)
def test_strip_keeps_orderability_and_raises_balances(d, p):
    if not orderable(d, p):
        return
    s = strip_cycles(d, p)
    assert s.is_acyclic() and s <= d
    assert all(a >= b for a, b in zip(balances(s, p), balances(d, p)))
    assert is_orderable_acyclic(s, p)


@given(signatures(n=4, max_total=6), st.lists(st.integers(0, 4), min_size=4, max_size=4), st.integers(0, 3))
@settings(max_examples=300)
def test_boost_keeps_balance_outside_sinks(d, p, w):
    if not orderable(d, p):
        return
    d = strip_cycles(d, p)
    b = boost_target(d, p, w)
    assert is_orderable_acyclic(b, p)
    sinks = [v for v in b.vertices() if b.outdegree(v) == 0 and b.indegree(v) > 0]
    assert all(s == w for s in sinks)
    before, after = balances(d, p), balances(b, p)
    assert after[w] >= before[w]


@given(signatures(n=4, max_total=6), st.lists(st.integers(0, 3), min_size=4, max_size=4))
@settings(max_examples=300)
def test_stuck_state_means_no_extension(d, p):
    # if no arc of d can fire and d is nonempty, d is not orderable from p
    if not d.total():
        return
    fireable = any(p[u] >= 2 for (u, _v), _m in d.items())
    if not fireable:
        assert not orderable(d, p)
