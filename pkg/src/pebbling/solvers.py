"""Exact decision procedures for reachability, covering and annihilation.

Two exact engines are provided:

``states``
    memoized depth-first search over pebble distributions, with the weight
    bound as a sound prune.
``signature``
    demand-driven search over acyclic move signatures: repeatedly pick a
    vertex whose balance is short of its goal and branch on which neighbor
    sends it one more pebble.  Every acyclic signature meeting the goal
    contains the partial signature along some branch, so the search is
    complete; it scales to long paths of single pebbles, where the state
    space is huge but the signatures are small.
"""

from __future__ import annotations

import time
from collections import deque
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from .core import Graph, PebblingError, Signature, check_distribution, signature_of
from .orderability import normalize_witness, orderable, strip_cycles


class BudgetExceeded(PebblingError):
    def __init__(self, states_explored: int, reason: str = "state budget"):
        super().__init__(f"search budget exhausted ({reason}) after {states_explored} states")
        self.states_explored = states_explored


class NotATree(PebblingError, ValueError):
    pass


@dataclass(frozen=True)
class SearchBudget:
    max_states: int = 10_000_000
    max_seconds: float = 60.0

    def __post_init__(self):
        if self.max_states <= 0 or self.max_seconds <= 0:
            raise ValueError("budget limits must be positive")


UNLIMITED = SearchBudget(max_states=10**18, max_seconds=1e12)


@dataclass
class SearchReport:
    """Outcome of an exact search.

    ``decided`` is false only when the budget ran out; in that case
    ``answer`` carries no information and :attr:`value` raises.
    """

    decided: bool
    answer: bool
    witness: Signature | None = None
    states_explored: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def value(self) -> bool:
        if not self.decided:
            raise BudgetExceeded(self.states_explored)
        return self.answer

    def __bool__(self) -> bool:
        return self.value


ReachReport = SearchReport


class _Meter:
    __slots__ = ("budget", "count", "deadline")

    def __init__(self, budget: SearchBudget | None):
        self.budget = budget or SearchBudget()
        self.count = 0
        self.deadline = time.monotonic() + self.budget.max_seconds

    def tick(self) -> None:
        self.count += 1
        if self.count > self.budget.max_states:
            raise BudgetExceeded(self.count)
        if not self.count & 1023 and time.monotonic() > self.deadline:
            raise BudgetExceeded(self.count, "time limit")


def _int_weights(g: Graph, t: int) -> tuple[list[int], int]:
    """Integer weights 2**(D - d(v,t)) and the scale 2**D; unreachable vertices weigh 0."""
    dist = g.distances_from(t)
    top = max((d for d in dist if d is not None), default=0)
    return [0 if d is None else 1 << (top - d) for d in dist], 1 << top


# -- distribution-space engine ------------------------------------------------

def _state_search(
    g: Graph,
    p: Sequence[int],
    goal: Callable[[tuple[int, ...]], bool],
    meter: _Meter,
    prune: Callable[[tuple[int, ...]], bool] | None = None,
    frozen: frozenset[int] = frozenset(),
) -> list[tuple[int, int]] | None:
    """DFS over distributions; returns the move path to a goal state or None.

    Moves out of vertices in ``frozen`` are never made.  Moves are tried in
    order of source then target index.
    """
    start = tuple(p)
    if goal(start):
        return []
    if prune is not None and prune(start):
        return None
    adj = g.adjacency
    seen = {start}
    path: list[tuple[int, int]] = []
    stack = [(start, _moves(start, adj, frozen))]
    meter.tick()
    while stack:
        state, it = stack[-1]
        mv = next(it, None)
        if mv is None:
            stack.pop()
            if path:
                path.pop()
            continue
        u, v = mv
        nxt = list(state)
        nxt[u] -= 2
        nxt[v] += 1
        nxt = tuple(nxt)
        if nxt in seen:
            continue
        seen.add(nxt)
        meter.tick()
        path.append(mv)
        if goal(nxt):
            return path
        if (prune is not None and prune(nxt)) or not any(c >= 2 for c in nxt):
            path.pop()
            continue
        stack.append((nxt, _moves(nxt, adj, frozen)))
    return None


def _moves(state, adj, frozen):
    for u, c in enumerate(state):
        if c >= 2 and u not in frozen:
            for v in adj[u]:
                yield u, v


def _weight_prune(g: Graph, target: int, need: int):
    w, scale = _int_weights(g, target)
    bar = need * scale

    def prune(state):
        return sum(a * b for a, b in zip(state, w) if a) < bar

    return prune


# -- signature engine -----------------------------------------------------------

class _DemandSearch:
    """Search for an acyclic signature D with balance(D, p, v) >= q(v) for all v."""

    def __init__(self, g: Graph, p: Sequence[int], q: Sequence[int], meter: _Meter,
                 frozen: frozenset[int] = frozenset(), nonrepetitive: bool = False):
        self.g, self.p, self.q = g, tuple(p), tuple(q)
        self.meter = meter
        self.frozen = frozen
        self.nonrep = nonrepetitive
        self.slack = sum(p) - sum(q)
        # Weight certificates: one per vertex carrying demand.
        self.certs = []
        for t, need in enumerate(q):
            if need > 0:
                w, scale = _int_weights(g, t)
                demand = sum(w[v] * q[v] for v in range(g.n))
                self.certs.append((w, demand))
        self.failed: set = set()

    def run(self) -> Signature | None:
        bal = [pv - qv for pv, qv in zip(self.p, self.q)]
        arcs: dict[tuple[int, int], int] = {}
        succ: dict[int, dict[int, int]] = {}
        totals = [sum(w[v] * self.p[v] for v in range(self.g.n)) for w, _ in self.certs]
        if any(t < d for t, (_, d) in zip(totals, self.certs)):
            return None
        found = self._dfs(bal, arcs, succ, totals, 0)
        return None if found is None else Signature(found)

    def _reaches(self, succ, src: int, dst: int) -> bool:
        if src == dst:
            return True
        seen = {src}
        stack = [src]
        while stack:
            x = stack.pop()
            for y in succ.get(x, ()):
                if y == dst:
                    return True
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return False

    def _dfs(self, bal, arcs, succ, totals, size):
        self.meter.tick()
        short = [v for v, b in enumerate(bal) if b < 0]
        if not short:
            return dict(arcs)
        deficit = -sum(bal[v] for v in short)
        if size + deficit > self.slack:
            return None
        key = frozenset(arcs.items())
        if key in self.failed:
            return None
        adj = self.g.adjacency
        # Branch on the short vertex with the fewest candidate suppliers.
        best = None
        for v in short:
            opts = [u for u in adj[v] if self._allowed(u, v, arcs, succ)]
            if best is None or len(opts) < len(best[1]):
                best = (v, opts)
                if not opts:
                    break
        v, opts = best
        for u in opts:
            ok = True
            for i, (w, demand) in enumerate(self.certs):
                totals[i] += w[v] - 2 * w[u]
                if totals[i] < demand:
                    ok = False
            if ok:
                arcs[(u, v)] = arcs.get((u, v), 0) + 1
                succ.setdefault(u, {})
                succ[u][v] = succ[u].get(v, 0) + 1
                bal[u] -= 2
                bal[v] += 1
                found = self._dfs(bal, arcs, succ, totals, size + 1)
                bal[u] += 2
                bal[v] -= 1
                succ[u][v] -= 1
                if not succ[u][v]:
                    del succ[u][v]
                arcs[(u, v)] -= 1
                if not arcs[(u, v)]:
                    del arcs[(u, v)]
                if found is not None:
                    for i, (w, _) in enumerate(self.certs):
                        totals[i] -= w[v] - 2 * w[u]
                    return found
            for i, (w, _) in enumerate(self.certs):
                totals[i] -= w[v] - 2 * w[u]
        self.failed.add(key)
        return None

    def _allowed(self, u, v, arcs, succ) -> bool:
        if u in self.frozen:
            return False
        if self.nonrep and ((u, v) in arcs or (v, u) in arcs):
            return False
        if (u, v) in arcs:
            return True  # same arc again cannot close a new cycle
        return not self._reaches(succ, v, u)


def _demand(g, p, q, meter, frozen=frozenset(), nonrepetitive=False) -> Signature | None:
    return _DemandSearch(g, p, q, meter, frozen, nonrepetitive).run()


# -- public solvers -------------------------------------------------------------

def _run(meter: _Meter, fn):
    try:
        return fn()
    except BudgetExceeded:
        return SearchReport(False, False, None, meter.count)


def reachable(g: Graph, p: Sequence[int], r: int, k: int = 1, budget: SearchBudget | None = None,
              method: str = "states") -> SearchReport:
    """Can some move sequence put at least ``k`` pebbles on ``r``?

    A positive answer carries a minimum-form witness signature.
    """
    p = check_distribution(g, p)
    if not 0 <= r < g.n:
        raise ValueError(f"target {r} out of range")
    if k < 1:
        raise ValueError("k must be positive")
    if p[r] >= k:
        return SearchReport(True, True, Signature(), 0)
    meter = _Meter(budget)

    def go():
        if method == "states":
            moves = _state_search(g, p, lambda s: s[r] >= k, meter, _weight_prune(g, r, k), frozenset([r]))
            d = None if moves is None else signature_of(moves)
        elif method == "signature":
            q = [0] * g.n
            q[r] = k
            d = _demand(g, p, q, meter, frozenset([r]))
        else:
            raise ValueError(f"unknown method {method!r}")
        if d is None:
            return SearchReport(True, False, None, meter.count)
        return SearchReport(True, True, normalize_witness(d, p, r, k), meter.count)

    return _run(meter, go)


def nonrepetitive_reachable(g: Graph, p: Sequence[int], r: int,
                            budget: SearchBudget | None = None) -> SearchReport:
    """Reachability when each edge may carry at most one move in total."""
    p = check_distribution(g, p)
    if p[r] >= 1:
        return SearchReport(True, True, Signature(), 0)
    meter = _Meter(budget)

    def go():
        q = [0] * g.n
        q[r] = 1
        d = _demand(g, p, q, meter, frozenset([r]), nonrepetitive=True)
        if d is None:
            return SearchReport(True, False, None, meter.count)
        return SearchReport(True, True, normalize_witness(d, p, r, 1), meter.count)

    return _run(meter, go)


def coverable(g: Graph, p: Sequence[int], q: Sequence[int], budget: SearchBudget | None = None,
              method: str = "states") -> SearchReport:
    """Does some sequence turn ``p`` into a distribution dominating ``q``?"""
    p = check_distribution(g, p)
    q = check_distribution(g, q)
    if sum(q) < 1:
        raise ValueError("q must have at least one pebble")
    if all(a >= b for a, b in zip(p, q)):
        return SearchReport(True, True, Signature(), 0)
    meter = _Meter(budget)

    def go():
        if method == "states":
            prunes = [_weight_prune(g, v, qv) for v, qv in enumerate(q) if qv]
            moves = _state_search(g, p, lambda s: all(a >= b for a, b in zip(s, q)), meter,
                                  lambda s: any(f(s) for f in prunes))
            d = None if moves is None else strip_cycles(signature_of(moves), p)
        elif method == "signature":
            d = _demand(g, p, q, meter)
        else:
            raise ValueError(f"unknown method {method!r}")
        return SearchReport(True, d is not None, d, meter.count)

    return _run(meter, go)


def annihilation(g: Graph, p: Sequence[int], budget: SearchBudget | None = None) -> SearchReport:
    """Can the whole graph be pebbled down to a single pebble?"""
    p = check_distribution(g, p)
    if sum(p) < 1:
        raise ValueError("annihilation needs at least one pebble")
    meter = _Meter(budget)

    def go():
        moves = _state_search(g, p, lambda s: sum(s) == 1, meter)
        d = None if moves is None else signature_of(moves)
        return SearchReport(True, d is not None, d, meter.count)

    return _run(meter, go)


def max_reachable(g: Graph, p: Sequence[int], r: int, budget: SearchBudget | None = None,
                  method: str = "states") -> int:
    """Largest number of pebbles that can be gathered on ``r`` (exact)."""
    p = check_distribution(g, p)
    best = p[r]
    while True:
        rep = reachable(g, p, r, best + 1, budget, method)
        if not rep.value:
            return best
        best += 1


def greedy_tree_max(t: Graph, p: Sequence[int], r: int) -> int:
    """Pebbles on ``r`` after exhausting greedy moves (toward ``r``) on a tree."""
    if not t.is_tree():
        raise NotATree("greedy_tree_max needs a tree")
    p = list(check_distribution(t, p))
    dist = t.distances_from(r)
    for u in sorted(range(t.n), key=lambda v: -dist[v]):
        if u == r or p[u] < 2:
            continue
        parent = next(v for v in t.adjacency[u] if dist[v] == dist[u] - 1)
        p[parent] += p[u] // 2
        p[u] %= 2
    return p[r]


def is_determinative(g: Graph, p: Sequence[int], r: int, budget: SearchBudget | None = None,
                     method: str = "states") -> bool:
    if not reachable(g, p, r, 1, budget, method).value:
        return True
    return all(reachable(g, p, v, 1, budget, method).value for v in range(g.n))


# -- brute-force oracles (no pruning; for cross-checking) --------------------------

def all_reachable_states(g: Graph, p: Sequence[int], limit: int | None = None) -> set[tuple[int, ...]]:
    """Every distribution reachable from ``p`` by breadth-first expansion."""
    start = tuple(p)
    seen = {start}
    queue = deque([start])
    adj = g.adjacency
    while queue:
        s = queue.popleft()
        for u, c in enumerate(s):
            if c < 2:
                continue
            for v in adj[u]:
                n = list(s)
                n[u] -= 2
                n[v] += 1
                n = tuple(n)
                if n not in seen:
                    seen.add(n)
                    if limit is not None and len(seen) > limit:
                        raise BudgetExceeded(len(seen))
                    queue.append(n)
    return seen


def brute_max_on(g: Graph, p: Sequence[int], r: int) -> int:
    return max(s[r] for s in all_reachable_states(g, p))


def brute_nonrepetitive_reachable(g: Graph, p: Sequence[int], r: int) -> bool:
    """Try every orientation subset of the edges (3**e cases)."""
    from itertools import product

    edges = g.sorted_edges
    for choice in product((0, 1, 2), repeat=len(edges)):
        arcs = {}
        for (u, v), c in zip(edges, choice):
            if c == 1:
                arcs[(u, v)] = 1
            elif c == 2:
                arcs[(v, u)] = 1
        d = Signature(arcs)
        if orderable(d, p) and p[r] + d.indegree(r) - 2 * d.outdegree(r) >= 1:
            return True
    return False


__all__ = [
    "BudgetExceeded", "NotATree", "SearchBudget", "SearchReport", "ReachReport", "UNLIMITED",
    "reachable", "nonrepetitive_reachable", "coverable", "annihilation", "max_reachable",
    "greedy_tree_max", "is_determinative", "all_reachable_states", "brute_max_on",
    "brute_nonrepetitive_reachable",
]
