"""Graphs, pebble distributions, move signatures and the elementary move dynamics."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Iterator, Mapping, Sequence
from fractions import Fraction
from functools import cached_property

Vertex = int
Arc = tuple[int, int]
Distribution = tuple[int, ...]
MoveSequence = list[Arc]


class PebblingError(Exception):
    """Base class for every error raised by this package."""


class InvalidGraph(PebblingError, ValueError):
    pass


class InvalidDistribution(PebblingError, ValueError):
    pass


class NotAnEdge(PebblingError):
    def __init__(self, u: int, v: int):
        super().__init__(f"{{{u},{v}}} is not an edge")
        self.u, self.v = u, v


class InsufficientPebbles(PebblingError):
    def __init__(self, u: int, count: int):
        super().__init__(f"vertex {u} holds {count} pebble(s); a move needs 2")
        self.u, self.count = u, count


class IllegalAt(PebblingError):
    """Raised by :func:`apply_sequence`; ``index`` is the first illegal move."""

    def __init__(self, index: int, cause: PebblingError):
        super().__init__(f"move #{index} is illegal: {cause}")
        self.index = index
        self.cause = cause


class Disconnected(PebblingError):
    pass


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Instances are immutable and hashable; adjacency and distance tables are
    computed lazily and cached on the instance.
    """

    __slots__ = ("n", "edges", "__dict__")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InvalidGraph("vertex count must be non-negative")
        normalized = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise InvalidGraph(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidGraph(f"edge ({u},{v}) out of range for n={n}")
            normalized.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges: frozenset[tuple[int, int]] = frozenset(normalized)

    def __repr__(self) -> str:
        return f"Graph({self.n}, {sorted(self.edges)})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    @property
    def vertex_count(self) -> int:
        return self.n

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def _distance_cache(self) -> dict[int, tuple[int | None, ...]]:
        return {}

    def distances_from(self, root: int) -> tuple[int | None, ...]:
        """BFS distances from ``root``; ``None`` marks unreachable vertices."""
        cache = self._distance_cache
        if root not in cache:
            dist: list[int | None] = [None] * self.n
            dist[root] = 0
            queue = deque([root])
            adj = self.adjacency
            while queue:
                u = queue.popleft()
                for w in adj[u]:
                    if dist[w] is None:
                        dist[w] = dist[u] + 1
                        queue.append(w)
            cache[root] = tuple(dist)
        return cache[root]

    def distance(self, u: int, v: int) -> int | None:
        return self.distances_from(u)[v]

    def is_connected(self) -> bool:
        return self.n == 0 or all(d is not None for d in self.distances_from(0))

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = [v for v, d in enumerate(self.distances_from(s)) if d is not None]
            for v in comp:
                seen[v] = True
            comps.append(comp)
        return comps

    def eccentricity(self, v: int) -> int:
        dist = self.distances_from(v)
        if any(d is None for d in dist):
            raise Disconnected("graph is not connected")
        return max(dist, default=0)

    def diameter(self) -> int:
        if not self.is_connected():
            raise Disconnected("graph is not connected")
        return max((self.eccentricity(v) for v in range(self.n)), default=0)

    def is_tree(self) -> bool:
        return self.n >= 1 and self.edge_count == self.n - 1 and self.is_connected()

    def is_bipartite(self) -> bool:
        color: list[int | None] = [None] * self.n
        adj = self.adjacency
        for s in range(self.n):
            if color[s] is not None:
                continue
            color[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in adj[u]:
                    if color[w] is None:
                        color[w] = 1 - color[u]
                        queue.append(w)
                    elif color[w] == color[u]:
                        return False
        return True

    def remove_vertices(self, removed: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph on the remaining vertices plus the old-index map."""
        gone = set(removed)
        keep = [v for v in range(self.n) if v not in gone]
        index = {v: i for i, v in enumerate(keep)}
        sub = Graph(len(keep), ((index[u], index[v]) for u, v in self.edges if u in index and v in index))
        return sub, keep


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with the center at vertex 0."""
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def check_distribution(g: Graph, p: Sequence[int]) -> Distribution:
    """Validate ``p`` against ``g`` and return it as a tuple."""
    if len(p) != g.n:
        raise InvalidDistribution(f"distribution has {len(p)} entries, graph has {g.n} vertices")
    out = tuple(int(c) for c in p)
    if any(c < 0 for c in out):
        raise InvalidDistribution("pebble counts must be non-negative")
    return out


def simple_distribution(n: int, v: int, count: int) -> Distribution:
    p = [0] * n
    p[v] = count
    return tuple(p)


def unit_distribution(n: int) -> Distribution:
    return (1,) * n


def dominates(p: Sequence[int], q: Sequence[int]) -> bool:
    """``p >= q`` pointwise."""
    return all(a >= b for a, b in zip(p, q))


class Signature(Mapping[Arc, int]):
    """Directed multigraph of pebbling-move multiplicities.

    Behaves as a read-only mapping ``(u, v) -> multiplicity`` where absent
    arcs have multiplicity zero.  Degree tables are cached.
    """

    __slots__ = ("_arcs", "_hash", "_out", "_in")

    def __init__(self, arcs: Mapping[Arc, int] | Iterable[tuple[Arc, int]] = ()):
        items = arcs.items() if isinstance(arcs, Mapping) else arcs
        clean: dict[Arc, int] = {}
        for (u, v), m in items:
            m = int(m)
            if m < 0:
                raise ValueError(f"negative multiplicity on arc ({u},{v})")
            if u == v:
                raise ValueError(f"loop arc at {u}")
            if m:
                clean[(int(u), int(v))] = clean.get((int(u), int(v)), 0) + m
        self._arcs = dict(sorted(clean.items()))
        self._hash: int | None = None
        self._out: dict[int, int] | None = None
        self._in: dict[int, int] | None = None

    @classmethod
    def from_moves(cls, moves: Iterable[Arc]) -> Signature:
        counts: dict[Arc, int] = {}
        for u, v in moves:
            counts[(u, v)] = counts.get((u, v), 0) + 1
        return cls(counts)

    def __getitem__(self, arc: Arc) -> int:
        return self._arcs.get(arc, 0)

    def __contains__(self, arc: object) -> bool:
        return arc in self._arcs

    def __iter__(self) -> Iterator[Arc]:
        return iter(self._arcs)

    def __len__(self) -> int:
        return len(self._arcs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Signature):
            return self._arcs == other._arcs
        if isinstance(other, Mapping):
            return self._arcs == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._arcs.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Signature({self._arcs})"

    def __le__(self, other: Signature) -> bool:
        """Arc-wise sub-multigraph test."""
        return all(other[a] >= m for a, m in self._arcs.items())

    def __lt__(self, other: Signature) -> bool:
        return self <= other and self != other

    @property
    def arcs(self) -> dict[Arc, int]:
        return dict(self._arcs)

    def total(self) -> int:
        """Total arc multiplicity, the number of moves in any ordering."""
        return sum(self._arcs.values())

    def _degrees(self) -> None:
        out: dict[int, int] = {}
        inn: dict[int, int] = {}
        for (u, v), m in self._arcs.items():
            out[u] = out.get(u, 0) + m
            inn[v] = inn.get(v, 0) + m
        self._out, self._in = out, inn

    def outdegree(self, v: int) -> int:
        if self._out is None:
            self._degrees()
        return self._out.get(v, 0)

    def indegree(self, v: int) -> int:
        if self._in is None:
            self._degrees()
        return self._in.get(v, 0)

    def vertices(self) -> set[int]:
        return {x for arc in self._arcs for x in arc}

    def successors(self) -> dict[int, list[int]]:
        succ: dict[int, list[int]] = {}
        for u, v in self._arcs:
            succ.setdefault(u, []).append(v)
        return succ

    def with_arcs(self, delta: Mapping[Arc, int]) -> Signature:
        """Copy with per-arc multiplicity changes applied (clamped at zero is an error)."""
        arcs = dict(self._arcs)
        for a, dm in delta.items():
            m = arcs.get(a, 0) + dm
            if m < 0:
                raise ValueError(f"arc {a} would have negative multiplicity")
            arcs[a] = m
        return Signature(arcs)

    def without(self, arc: Arc, count: int = 1) -> Signature:
        return self.with_arcs({arc: -count})

    def restricted_to(self, vertices: Iterable[int]) -> Signature:
        keep = set(vertices)
        return Signature({a: m for a, m in self._arcs.items() if a[0] in keep and a[1] in keep})

    def is_acyclic(self) -> bool:
        return find_cycle(self) is None

    def validate_against(self, g: Graph) -> None:
        for u, v in self._arcs:
            if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
                raise NotAnEdge(u, v)


def find_cycle(d: Mapping[Arc, int]) -> list[int] | None:
    """Return the vertices of some directed cycle in the arc support, or None.

    Deterministic: DFS from the lowest vertex, successors in increasing order.
    """
    succ: dict[int, list[int]] = {}
    for (u, v), m in sorted(d.items()):
        if m > 0:
            succ.setdefault(u, []).append(v)
    state: dict[int, int] = {}
    for root in sorted(succ):
        if state.get(root):
            continue
        stack = [(root, iter(succ.get(root, ())))]
        path = [root]
        state[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                path.pop()
                state[node] = 2
                continue
            s = state.get(nxt, 0)
            if s == 1:
                return path[path.index(nxt):]
            if s == 0:
                state[nxt] = 1
                path.append(nxt)
                stack.append((nxt, iter(succ.get(nxt, ()))))
    return None


def apply_move(g: Graph, p: Sequence[int], u: int, v: int) -> Distribution:
    """Remove two pebbles from ``u`` and add one to its neighbor ``v``."""
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise NotAnEdge(u, v)
    if p[u] < 2:
        raise InsufficientPebbles(u, p[u])
    out = list(p)
    out[u] -= 2
    out[v] += 1
    return tuple(out)


def apply_sequence(g: Graph, p: Sequence[int], moves: Iterable[Arc]) -> Distribution:
    """Replay ``moves`` from ``p``; raises :class:`IllegalAt` on the first bad move."""
    cur = list(p)
    for i, (u, v) in enumerate(moves):
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            raise IllegalAt(i, NotAnEdge(u, v))
        if cur[u] < 2:
            raise IllegalAt(i, InsufficientPebbles(u, cur[u]))
        cur[u] -= 2
        cur[v] += 1
    return tuple(cur)


def signature_of(moves: Iterable[Arc]) -> Signature:
    return Signature.from_moves(moves)


def balance(d: Signature, p: Sequence[int], v: int) -> int:
    """Pebbles left on ``v`` after any ordering of ``d``: p(v) + in(v) - 2 out(v)."""
    return p[v] + d.indegree(v) - 2 * d.outdegree(v)


def balances(d: Signature, p: Sequence[int]) -> list[int]:
    out = list(p)
    for (u, v), m in d.items():
        out[u] -= 2 * m
        out[v] += m
    return out


def weight(g: Graph, p: Sequence[int], r: int, strict: bool = True) -> Fraction:
    """Exact weight sum(p(v) / 2**d(v, r)) of ``p`` toward ``r``.

    With ``strict`` a pebble on a vertex with no path to ``r`` raises
    :class:`Disconnected`; otherwise such pebbles contribute nothing.
    """
    dist = g.distances_from(r)
    total = Fraction(0)
    for v, c in enumerate(p):
        if not c:
            continue
        d = dist[v]
        if d is None:
            if strict:
                raise Disconnected(f"vertex {v} holds pebbles but has no path to {r}")
            continue
        total += Fraction(c, 1 << d)
    return total
