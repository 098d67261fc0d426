"""Exact pebbling invariants by enumeration of distributions."""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from itertools import combinations_with_replacement

from .core import Disconnected, Graph, PebblingError
from .solvers import SearchBudget, coverable, reachable


class NotPositive(PebblingError, ValueError):
    pass


def distributions(n: int, size: int, order: Sequence[int] | None = None) -> Iterator[tuple[int, ...]]:
    """All distributions of ``size`` pebbles on ``n`` vertices.

    ``order`` lists vertices by preference; multisets are generated in
    lexicographic order of that list, so early outputs load the first
    vertices.
    """
    order = list(range(n)) if order is None else list(order)
    for combo in combinations_with_replacement(order, size):
        p = [0] * n
        for v in combo:
            p[v] += 1
        yield tuple(p)


def _require_connected(g: Graph) -> None:
    if g.n == 0 or not g.is_connected():
        raise Disconnected("pebbling numbers need a connected graph")


def trivial_upper_bound(g: Graph) -> int:
    """(2**d - 1) n + 1."""
    return ((1 << g.diameter()) - 1) * g.n + 1


def pi_r(g: Graph, r: int, budget: SearchBudget | None = None, method: str = "states") -> int:
    """Least k such that every distribution of size k can reach ``r``."""
    _require_connected(g)
    dist = g.distances_from(r)
    far_first = sorted(range(g.n), key=lambda v: (-dist[v], v))
    cap = trivial_upper_bound(g)
    for k in range(1, cap + 1):
        if all(reachable(g, p, r, 1, budget, method).value for p in distributions(g.n, k, far_first)):
            return k
    return cap


def pi(g: Graph, budget: SearchBudget | None = None, method: str = "states") -> int:
    _require_connected(g)
    return max(pi_r(g, r, budget, method) for r in range(g.n))


def reaches_all(g: Graph, p: Sequence[int], budget: SearchBudget | None = None,
                method: str = "states") -> bool:
    return all(reachable(g, p, v, 1, budget, method).value for v in range(g.n))


def pi_hat(g: Graph, budget: SearchBudget | None = None, method: str = "states") -> tuple[int, tuple[int, ...]]:
    """Optimal pebbling number and a distribution attaining it."""
    _require_connected(g)
    for k in range(1, g.n + 1):
        for p in distributions(g.n, k):
            if reaches_all(g, p, budget, method):
                return k, p
    raise AssertionError("one pebble per vertex always reaches every vertex")


def gamma(g: Graph, q: Sequence[int]) -> int:
    """Cover pebbling number via the closed form max_v sum_u q(u) 2**d(v,u)."""
    _require_connected(g)
    if len(q) != g.n:
        raise ValueError("q has the wrong length")
    if any(x < 1 for x in q):
        raise NotPositive("the closed form needs every vertex to demand at least one pebble")
    best = 0
    for v in range(g.n):
        dist = g.distances_from(v)
        best = max(best, sum(qu << dist[u] for u, qu in enumerate(q)))
    return best


def cover_number_brute(g: Graph, q: Sequence[int], budget: SearchBudget | None = None) -> int:
    """Least k such that every size-k distribution covers ``q``, by enumeration."""
    _require_connected(g)
    k = sum(q)
    while True:
        if all(coverable(g, p, q, budget).value for p in distributions(g.n, k)):
            return k
        k += 1
