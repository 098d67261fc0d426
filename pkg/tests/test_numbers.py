import math

import pytest
from hypothesis import given, settings

from pebbling.core import Disconnected, Graph, complete_graph, path_graph
from pebbling.numbers import (
    NotPositive,
    cover_number_brute,
    distributions,
    gamma,
    pi,
    pi_hat,
    pi_r,
    trivial_upper_bound,
)
from strategies import graphs

K1 = Graph(1, [])
K2 = complete_graph(2)
P3 = path_graph(3)


def test_distributions_count():
    # combinations with repetition: C(n+k-1, k)
    assert sum(1 for _ in distributions(3, 4)) == math.comb(6, 4)
    assert all(sum(p) == 4 for p in distributions(3, 4))


def test_pi_r_examples():
    assert pi_r(K2, 0) == 2 and pi_r(K2, 1) == 2
    assert pi_r(P3, 0) == 4
    assert pi_r(K1, 0) == 1


def test_pi_examples():
    assert pi(K2) == 2
    assert pi(P3) == 4
    assert pi(path_graph(4)) == 8


def test_pi_hat_examples():
    k, p = pi_hat(P3)
    assert k == 2 and sum(p) == 2
    assert pi_hat(K2)[0] == 2
    assert pi_hat(K1)[0] == 1


def test_gamma_examples():
    assert gamma(K2, (1, 1)) == 3
    assert gamma(P3, (1, 1, 1)) == 7
    assert gamma(K1, (1,)) == 1
    with pytest.raises(NotPositive):
        gamma(P3, (1, 0, 1))


def test_disconnected_rejected():
    g = Graph(2, [])
    for fn in (lambda: pi(g), lambda: pi_hat(g), lambda: gamma(g, (1, 1))):
        with pytest.raises(Disconnected):
            fn()


@given(graphs(1, 4, connected=True))
@settings(max_examples=25, deadline=None)
def test_sandwich_and_bounds(g):
    p = pi(g, method="signature")
    h, witness = pi_hat(g, method="signature")
    assert h <= g.n <= p <= trivial_upper_bound(g)
    assert h <= math.ceil(2 * g.n / 3)
    assert sum(witness) == h


@given(graphs(1, 4, connected=True))
@settings(max_examples=20, deadline=None)
def test_gamma_matches_brute_force(g):
    q = (1,) * g.n
    assert gamma(g, q) == cover_number_brute(g, q)
